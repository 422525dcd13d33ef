from src.simulator.statevector import StatevectorSimulator
from src.models.circuit import Circuit, RegisterRole
from src.circuits.builder import CircuitBuilder
from src.models.lookup import DataTable

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def simulator():
    return StatevectorSimulator(qubit_limit=22)


@pytest.fixture
def tabla_pequena():
    return DataTable(b=3, entries=[5, 0, 7, 2, 6, 1, 3, 4])


@pytest.fixture
def tabla_impar():
    return DataTable(b=2, entries=[3, 1, 0, 2, 1, 3])


def circuito_de(n: int, construir) -> Circuit:
    """Circuito de un registro 'q' de n qubits con las puertas dadas"""
    builder = CircuitBuilder()
    builder.add_register("q", n, RegisterRole.CLEAN)
    construir(builder)
    return builder.build()


def toffoli_ideal() -> np.ndarray:
    """CCX con controles en los qubits 0 y 1 (big-endian): 6 ↔ 7"""
    matriz = np.eye(8, dtype=np.complex128)
    matriz[[6, 7]] = matriz[[7, 6]]
    return matriz


def cswap_ideal(n: int) -> np.ndarray:
    """CSWAP_n sobre control, left (n) y right (n), índices big-endian"""
    total = 2 * n + 1
    dim = 1 << total
    matriz = np.zeros((dim, dim), dtype=np.complex128)
    for indice in range(dim):
        bits = [(indice >> (total - 1 - q)) & 1 for q in range(total)]
        if bits[0]:
            bits[1:n + 1], bits[n + 1:] = bits[n + 1:], bits[1:n + 1]
        destino = sum(bit << (total - 1 - q) for q, bit in enumerate(bits))
        matriz[destino, indice] = 1
    return matriz

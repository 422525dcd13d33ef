"""Conversión entre índices globales y valores de registro"""
from src.models.circuit import Circuit

from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np


def qubit_bit(index: int, qubit: int, n: int) -> int:
    """Bit del qubit en el índice global (qubit 0 = bit más alto)"""
    return (index >> (n - 1 - qubit)) & 1


def encode_qubits(values: Dict[int, int], n: int) -> int:
    """Índice global a partir de bits por qubit (los no dados a 0)"""
    indice = 0
    for qubit, bit in values.items():
        if bit:
            indice |= 1 << (n - 1 - qubit)
    return indice


def encode_value(qubits: Sequence[int], value: int, n: int) -> int:
    """Índice global con el valor little-endian escrito en los qubits"""
    if value >> len(qubits):
        raise ValueError(f"{value} no cabe en {len(qubits)} qubits")
    return encode_qubits(
        {q: (value >> i) & 1 for i, q in enumerate(qubits)}, n)


def decode_value(qubits: Sequence[int], index: int, n: int) -> int:
    return sum(qubit_bit(index, q, n) << i for i, q in enumerate(qubits))


def basis_index(circuit: Circuit, assignment: Dict[str, int]) -> int:
    """Índice global del estado base con los registros dados"""
    n = circuit.num_qubits
    indice = 0
    for nombre, valor in assignment.items():
        indice |= encode_value(circuit.qubits(nombre), valor, n)
    return indice


def basis_state(circuit: Circuit, assignment: Dict[str, int]) -> np.ndarray:
    estado = np.zeros(1 << circuit.num_qubits, dtype=np.complex128)
    estado[basis_index(circuit, assignment)] = 1
    return estado


def register_values(circuit: Circuit, index: int) -> Dict[str, int]:
    n = circuit.num_qubits
    return {
        r.name: decode_value(r.qubits, index, n)
        for r in circuit.registers.registers
    }


def support(
    amplitudes: np.ndarray,
    tolerance: float = 1e-9
) -> List[Tuple[int, complex]]:
    """Índices y amplitudes no despreciables"""
    indices = np.nonzero(np.abs(amplitudes) > tolerance)[0]
    return [(int(i), complex(amplitudes[i])) for i in indices]


def marginal(
    circuit: Circuit,
    amplitudes: np.ndarray,
    names: Iterable[str],
    tolerance: float = 1e-12
) -> Dict[Tuple[int, ...], float]:
    """Distribución conjunta de los valores de los registros indicados"""
    nombres = list(names)
    n = circuit.num_qubits
    registros = [circuit.qubits(nombre) for nombre in nombres]
    distribucion: Dict[Tuple[int, ...], float] = {}
    probabilidades = np.abs(amplitudes) ** 2
    for indice in np.nonzero(probabilidades > tolerance)[0]:
        clave = tuple(decode_value(qs, int(indice), n) for qs in registros)
        distribucion[clave] = distribucion.get(clave, 0.0) + float(
            probabilidades[indice])
    return distribucion


def split_registers(
    circuit: Circuit,
    amplitudes: np.ndarray,
    qubits: Sequence[int]
) -> np.ndarray:
    """
    Matriz M (2^k × resto) con los qubits dados como índice de fila

    La fila es el valor little-endian de los qubits, de modo que el estado
    reducido de esos qubits es M·M†.
    """
    n = circuit.num_qubits
    tensor = np.asarray(amplitudes).reshape([2] * n)
    resto = [q for q in range(n) if q not in set(qubits)]
    # Los ejes de fila van del bit más alto al más bajo del valor
    orden = list(reversed(list(qubits))) + resto
    return np.transpose(tensor, orden).reshape(1 << len(qubits), -1)

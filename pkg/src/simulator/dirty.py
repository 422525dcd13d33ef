from src.simulator.registers import basis_index, encode_value, split_registers
from src.simulator.statevector import StatevectorSimulator
from src.simulator.reversible import ReversibleSimulator
from src.models.circuit import Circuit, RegisterRole
from src.models.simulation import DirtyTrial
from src.utils.errors import ParameterError
from src.config.settings import settings

from typing import Dict, List, Optional

import numpy as np
import logging

logger = logging.getLogger(__name__)


def _qubits_sucios(circuit: Circuit) -> List[int]:
    sucios = circuit.registers.qubits_con_papel(RegisterRole.DIRTY)
    if not sucios:
        raise ParameterError("El circuito no declara registros sucios")
    return sucios


def _asignacion_aleatoria(
    circuit: Circuit,
    rng: np.random.Generator
) -> Dict[str, int]:
    """Índices aleatorios dentro de su dominio; el resto limpio a 0"""
    dominios = circuit.metadata.get("index_domain", {})
    asignacion = {}
    for registro in circuit.registers.por_papel(RegisterRole.INDEX):
        limite = dominios.get(registro.name, 1 << registro.width)
        asignacion[registro.name] = int(rng.integers(0, max(limite, 1)))
    return asignacion


def _valor_aleatorio(k: int, rng: np.random.Generator) -> int:
    """Entero aleatorio de k bits (k puede superar 64)"""
    bits = rng.integers(0, 2, size=k)
    return sum(int(bit) << i for i, bit in enumerate(bits))


def _estado_producto(k: int, rng: np.random.Generator) -> np.ndarray:
    """Producto de k estados de un qubit aleatorios, índice little-endian"""
    estado = np.ones(1, dtype=np.complex128)
    for _ in range(k):
        qubit = rng.normal(size=2) + 1j * rng.normal(size=2)
        qubit /= np.linalg.norm(qubit)
        # El qubit nuevo es el bit más alto del valor
        estado = np.kron(qubit, estado)
    return estado


def _fidelidad_reducida(
    circuit: Circuit,
    amplitudes: np.ndarray,
    sucios: List[int],
    phi: np.ndarray
) -> float:
    """⟨φ|ρ_sucios|φ⟩ del estado final"""
    matriz = split_registers(circuit, amplitudes, sucios)
    return float(np.sum(np.abs(phi.conj() @ matriz) ** 2))


def verify_dirty_restoration(
    circuit: Circuit,
    trials: int = 8,
    seed: int = 0,
    simulator: Optional[StatevectorSimulator] = None
) -> List[DirtyTrial]:
    """
    Comprueba que los registros sucios vuelven exactamente a su estado

    En cada prueba los sucios empiezan en un estado base aleatorio y en un
    producto aleatorio de superposiciones; los índices toman valores
    aleatorios de su dominio. Se mide 1 − ⟨φ|ρ|φ⟩ en cada rama.
    """
    sucios = _qubits_sucios(circuit)
    simulator = simulator or StatevectorSimulator()
    simulator.comprobar_limite(circuit)
    n = circuit.num_qubits
    k = len(sucios)
    tolerancia = settings.STATE_TOLERANCE
    resultados: List[DirtyTrial] = []

    for prueba in range(trials):
        rng = np.random.default_rng([seed, prueba])
        base = basis_index(circuit, _asignacion_aleatoria(circuit, rng))

        valor = _valor_aleatorio(k, rng)
        phi_base = np.zeros(1 << k, dtype=np.complex128)
        phi_base[valor] = 1
        semilla_producto = int(rng.integers(0, 2 ** 31))
        phi_producto = _estado_producto(
            k, np.random.default_rng(semilla_producto))

        for modo, phi in (("basis", phi_base),
                          ("superposition", phi_producto)):
            inicial = np.zeros(1 << n, dtype=np.complex128)
            for v in np.nonzero(np.abs(phi) > 0)[0]:
                inicial[base | encode_value(sucios, int(v), n)] = phi[v]
            ramas = simulator.run_branches(circuit, inicial)
            desviacion = max(
                max(0.0, 1 - _fidelidad_reducida(
                    circuit, rama.amplitudes, sucios, phi))
                for rama in ramas)
            resultados.append(DirtyTrial(
                mode=modo,
                basis_index=valor if modo == "basis" else None,
                seed=semilla_producto if modo == "superposition" else None,
                passed=desviacion <= tolerancia,
                max_deviation=desviacion))

    fallos = sum(1 for r in resultados if not r.passed)
    logger.info(f"Restauración de sucios: {len(resultados)} pruebas, "
                f"{fallos} fallos")
    return resultados


def verify_dirty_restoration_reversible(
    circuit: Circuit,
    trials: int = 8,
    seed: int = 0,
    dirty_samples: int = 4
) -> List[DirtyTrial]:
    """
    Versión sobre estados base para circuitos a nivel de macros

    Para cada entrada se prueban varios valores sucios: si todos vuelven
    intactos con la misma salida y la misma fase, la restauración vale para
    cualquier superposición por linealidad.
    """
    sucios = _qubits_sucios(circuit)
    simulador = ReversibleSimulator()
    n = circuit.num_qubits
    k = len(sucios)
    resultados: List[DirtyTrial] = []

    for prueba in range(trials):
        rng = np.random.default_rng([seed, prueba])
        asignacion = _asignacion_aleatoria(circuit, rng)
        bits = [0] * n
        for nombre, valor in asignacion.items():
            for i, q in enumerate(circuit.qubits(nombre)):
                bits[q] = (valor >> i) & 1

        referencia = None
        coherente = True
        valores = [_valor_aleatorio(k, rng) for _ in range(dirty_samples)]
        conjunto = set(sucios)
        for valor in valores:
            entrada = list(bits)
            for i, q in enumerate(sucios):
                entrada[q] = (valor >> i) & 1
            finales, fase, _ = simulador.run(circuit, entrada)
            restaurado = all(finales[q] == entrada[q] for q in sucios)
            resto = tuple(finales[q] for q in range(n) if q not in conjunto)
            resultados.append(DirtyTrial(
                mode="basis", basis_index=valor, passed=restaurado,
                max_deviation=0.0 if restaurado else 1.0))
            if referencia is None:
                referencia = (resto, fase)
            elif (resto, fase) != referencia:
                coherente = False

        resultados.append(DirtyTrial(
            mode="superposition", seed=seed + prueba, passed=coherente,
            max_deviation=0.0 if coherente else 1.0))

    return resultados

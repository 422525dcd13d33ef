"""
Síntesis de isometrías como producto de reflexiones

Para columnas ortonormales u_k, W = Π_k (I − 2|w_k⟩⟨w_k|) con
|w_k⟩ = (|1⟩|k⟩ − |0⟩|u_k⟩)/√2 cumple W|1⟩|k⟩ = |0⟩|u_k⟩. Cada reflexión
se construye como B_k·R·B_k†, donde B_k lleva el estado fuente
|1⟩|0…0⟩ a −|w_k⟩ y R refleja sobre el estado fuente. El índice de los
vectores de 2N componentes es a·N + x (la ancilla es el bit alto).
"""
from src.builders.stateprep import (
    StatePrepRegisters, add_state_prep_registers, compute_angles,
    emit_fourier_state, emit_state_prep, error_bound, extract_system_state,
    reconstruct_amplitudes
)
from src.models.isometry import IsometrySpec, ReflectionProgram
from src.simulator.statevector import StatevectorSimulator
from src.models.strategies import FanoutStrategy, RotationMethod
from src.circuits.builder import CircuitBuilder, invert_gates
from src.simulator.registers import basis_index
from src.models.circuit import Circuit, RegisterRole
from src.models.stateprep import AngleTable, StateSpec
from src.utils.errors import ParameterError

from typing import List, Optional, Sequence

import numpy as np
import logging

logger = logging.getLogger(__name__)


def gram_schmidt(columns, tolerance: float = 1e-12) -> np.ndarray:
    """
    Ortonormaliza las filas en orden por QR

    Las fases de la diagonal de R pasan a Q, de modo que la fila k es la
    misma que daría Gram–Schmidt (diagonal de R real y positiva).
    """
    matriz = np.array(columns, dtype=complex)
    if matriz.ndim == 1:
        matriz = matriz.reshape(1, -1)
    if matriz.shape[0] > matriz.shape[1]:
        raise ParameterError(
            f"{matriz.shape[0]} columnas no caben en dimensión "
            f"{matriz.shape[1]}")
    q, r = np.linalg.qr(matriz.T)
    d = np.diag(r)
    dependientes = np.flatnonzero(np.abs(d) <= tolerance)
    if dependientes.size:
        raise ParameterError(
            f"La columna {dependientes[0]} depende de las anteriores")
    return (q * (d / np.abs(d))).T


def random_isometry(N: int, K: int, rng: np.random.Generator) -> IsometrySpec:
    if not 1 <= K <= N:
        raise ParameterError(f"K={K} fuera de [1, {N}]")
    gauss = rng.normal(size=(K, N)) + 1j * rng.normal(size=(K, N))
    return IsometrySpec(columns=gram_schmidt(gauss))


def _estados_w(columnas: np.ndarray) -> np.ndarray:
    K, N = columnas.shape
    estados = np.zeros((K, 2 * N), dtype=np.complex128)
    for k in range(K):
        estados[k, N + k] = 1
        estados[k, :N] = -columnas[k]
    return estados / np.sqrt(2)


def _producto_reflexiones(estados: np.ndarray) -> np.ndarray:
    dim = estados.shape[1]
    W = np.eye(dim, dtype=np.complex128)
    for w in estados:
        W = (np.eye(dim) - 2 * np.outer(w, w.conj())) @ W
    return W


def _tablas(spec: IsometrySpec, b: int) -> List[AngleTable]:
    return [compute_angles(StateSpec(amplitudes=u), b) for u in spec.columns]


def reflection_states(
    spec: IsometrySpec,
    b: Optional[int] = None
) -> ReflectionProgram:
    """
    Estados |w_k⟩ y comprobación clásica de W|1,k⟩ = |0,u_k⟩

    Con b, los |w_k⟩ se forman con los estados que producen los ángulos
    cuantizados a b bits y el error se compara con K·(2πn/2^b).
    """
    K, N = spec.K, spec.N
    if b is None:
        columnas = spec.columns
        tolerancia = spec.tolerance
    else:
        columnas = np.array([reconstruct_amplitudes(t) for t in _tablas(spec, b)])
        tolerancia = K * error_bound(spec.n, b)
    estados = _estados_w(columnas)
    W = _producto_reflexiones(estados)

    errores = []
    for k in range(K):
        esperado = np.zeros(2 * N, dtype=np.complex128)
        esperado[:N] = spec.columns[k]
        errores.append(float(np.linalg.norm(W[:, N + k] - esperado)))

    programa = ReflectionProgram(
        states=estados,
        source_index=N,
        column_errors=errores,
        verified=max(errores) <= tolerancia,
    )
    logger.info(f"Reflexiones K={K}, N={N}: error máximo {max(errores):.3e}")
    return programa


# Circuitos

def _emit_reflexion_fuente(
    builder: CircuitBuilder,
    x: Sequence[int],
    a: int,
    helpers: Sequence[int]
):
    """I − 2|1,0…0⟩⟨1,0…0|: Z multicontrolada tras negar x"""
    x = list(x)
    for q in x:
        builder.x(q)
    if not x:
        builder.z(a)
    elif len(x) == 1:
        builder.cz(x[0], a)
    else:
        cadena = [(x[0], x[1], helpers[0])]
        for i in range(2, len(x)):
            cadena.append((helpers[i - 2], x[i], helpers[i - 1]))
        for c1, c2, t in cadena:
            builder.and_(c1, c2, t)
        builder.cz(cadena[-1][2], a)
        for c1, c2, t in reversed(cadena):
            builder.and_dag(c1, c2, t)
    for q in x:
        builder.x(q)


def _emit_preparacion(
    builder: CircuitBuilder,
    table: AngleTable,
    k: int,
    regs: StatePrepRegisters,
    a: int,
    lam: int,
    method: RotationMethod,
    epsilon: float,
    fanout_strategy: Optional[FanoutStrategy]
):
    """B_k: |1⟩|0⟩ → (|0⟩|u_k⟩ − |1⟩|k⟩)/√2"""
    builder.h(a)
    for i, q in enumerate(regs.system):
        if (k >> i) & 1:
            builder.cx(a, q)
    builder.x(a)
    emit_state_prep(builder, table, regs, lam, method, epsilon, control=a,
                    fanout_strategy=fanout_strategy)
    builder.x(a)


def _emit_reflexion(
    builder: CircuitBuilder,
    table: AngleTable,
    k: int,
    regs: StatePrepRegisters,
    a: int,
    helpers: Sequence[int],
    lam: int,
    method: RotationMethod,
    epsilon: float,
    fanout_strategy: Optional[FanoutStrategy]
):
    """B_k · R · B_k†"""
    borrador = CircuitBuilder()
    _emit_preparacion(borrador, table, k, regs, a, lam, method, epsilon,
                      fanout_strategy)
    preparacion = borrador.gates_since(0)
    builder.extend(invert_gates(preparacion))
    _emit_reflexion_fuente(builder, regs.system, a, helpers)
    builder.extend(preparacion)


def _construir(
    spec: IsometrySpec,
    columnas: Sequence[int],
    lam: int,
    b: int,
    epsilon: float,
    method: RotationMethod,
    fanout_strategy: Optional[FanoutStrategy]
) -> Circuit:
    method = RotationMethod(method)
    N = spec.N
    if N & (N - 1):
        raise ParameterError(f"N={N} no es potencia de dos")
    if not 1 <= lam <= N:
        raise ParameterError(f"λ={lam} fuera de [1, {N}]")
    if method == RotationMethod.PHASE_GRADIENT and b < 2:
        raise ParameterError("El gradiente de fase necesita b ≥ 2")
    n = spec.n
    tablas = _tablas(spec, b)

    builder = CircuitBuilder()
    x = builder.add_register("x", n, RegisterRole.OUTPUT)
    (a,) = builder.add_register("a", 1, RegisterRole.CONTROL)
    regs = add_state_prep_registers(builder, x, b, lam, method,
                                    controlled=True)
    helpers = builder.add_register("refl_helpers", max(0, n - 1),
                                   RegisterRole.CLEAN)
    if regs.fourier:
        emit_fourier_state(builder, regs.fourier, epsilon)
    for k in columnas:
        _emit_reflexion(builder, tablas[k], k, regs, a, helpers, lam, method,
                        epsilon, fanout_strategy)

    builder.metadata["method"] = method.value
    builder.metadata["lambda"] = lam
    builder.metadata["b"] = b
    builder.metadata["columns"] = list(columnas)
    builder.metadata["fourier_prepared"] = bool(regs.fourier)
    return builder.build()


def build_reflection(
    spec: IsometrySpec,
    k: int,
    lam: int,
    b: int,
    epsilon: float,
    method: RotationMethod = RotationMethod.PHASE_GRADIENT,
    fanout_strategy: Optional[FanoutStrategy] = None
) -> Circuit:
    """Una sola reflexión I − 2|w_k⟩⟨w_k| (con 𝓕 preparado al inicio)"""
    if not 0 <= k < spec.K:
        raise ParameterError(f"k={k} fuera de [0, {spec.K})")
    return _construir(spec, [k], lam, b, epsilon, method, fanout_strategy)


def build_isometry(
    spec: IsometrySpec,
    lam: int,
    b: int,
    epsilon: float,
    method: RotationMethod = RotationMethod.PHASE_GRADIENT,
    fanout_strategy: Optional[FanoutStrategy] = None
) -> Circuit:
    """Producto de las K reflexiones sobre x (n qubits) y la ancilla a"""
    circuito = _construir(spec, list(range(spec.K)), lam, b, epsilon, method,
                          fanout_strategy)
    logger.info(f"Isometría N={spec.N}, K={spec.K}, b={b}, λ={lam}: "
                f"{circuito.num_qubits} qubits, {len(circuito.gates)} "
                f"puertas")
    return circuito


def isometry_output(
    circuit: Circuit,
    k: int,
    ancilla: int = 1,
    simulator: Optional[StatevectorSimulator] = None
) -> np.ndarray:
    """Vector de 2N componentes que produce el circuito desde |a⟩|k⟩"""
    simulator = simulator or StatevectorSimulator()
    simulator.comprobar_limite(circuit)
    inicial = np.zeros(1 << circuit.num_qubits, dtype=np.complex128)
    inicial[basis_index(circuit, {"x": k, "a": ancilla})] = 1
    final = simulator.run(circuit, inicial)
    sistema = circuit.qubits("x") + circuit.qubits("a")
    return extract_system_state(circuit, final, sistema)


def isometry_column_errors(
    circuit: Circuit,
    spec: IsometrySpec,
    simulator: Optional[StatevectorSimulator] = None
) -> List[float]:
    """‖V|1,k⟩ − |0,u_k⟩‖ para cada columna k"""
    errores = []
    for k in range(spec.K):
        esperado = np.zeros(2 * spec.N, dtype=np.complex128)
        esperado[:spec.N] = spec.columns[k]
        salida = isometry_output(circuit, k, simulator=simulator)
        errores.append(float(np.linalg.norm(salida - esperado)))
    return errores

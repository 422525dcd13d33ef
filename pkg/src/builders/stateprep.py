"""
Preparación de estados arbitrarios |0⟩ → Σ a_x/‖a‖ |x⟩

Recursión por prefijos: en el nivel w un oráculo de consulta escribe θ_y
(y = los w bits altos de x) en un registro de b bits, una rotación Y
controlada por ese registro actúa sobre el qubit w+1 y el oráculo se
deshace. Un último paso escribe las fases φ_x. Las rotaciones se aplican:

- phase_gradient: suma controlada contra el registro de Fourier
  𝓕 = 2^{-b/2} Σ e^{-2πik/2^b}|k⟩ (retroceso de fase), conjugada con S†·H.
- controlled_rotation: dos RZ y dos CX por bit del ángulo.

El qubit 0 del sistema es el bit menos significativo de x; el nivel w
rota el qubit x[n−1−w].
"""
from src.builders.lookup import LookupWorkspace, add_lookup_workspace, emit_lookup
from src.models.stateprep import AngleTable, FourierResource, StateSpec
from src.simulator.statevector import StatevectorSimulator, state_distance
from src.circuits.builder import CircuitBuilder, invert_gates
from src.models.strategies import FanoutStrategy, RotationMethod
from src.models.circuit import Circuit, RegisterRole
from src.builders.arithmetic import emit_cuccaro_add
from src.circuits.scheduling import resource_report
from src.simulator.registers import split_registers
from src.models.resources import CostModel
from src.utils.errors import ParameterError

from typing import Dict, List, NamedTuple, Optional, Sequence
from fractions import Fraction

import numpy as np
import logging

logger = logging.getLogger(__name__)


class StatePrepRegisters(NamedTuple):
    """Qubits que usa una preparación de estado"""
    system: List[int]
    lookup: List[int]
    fourier: List[int]
    carry: List[int]
    aux: List[int]
    workspace: LookupWorkspace
    dirty: List[int]


# Ángulos

def compute_angles(spec: StateSpec, b: int) -> AngleTable:
    """
    Árbol de probabilidades de prefijo, ángulos θ_y y fases φ_x

    θ_y = arccos√(p_{y0}/p_y) en vueltas (0 si p_y = 0) y φ_x = arg(a_x)
    en vueltas; ambos se redondean a b bits.
    """
    if not spec.is_power_of_two:
        raise ParameterError(f"N={spec.N} no es potencia de dos")
    if b < 1:
        raise ParameterError("Se necesita b ≥ 1")
    n = spec.n
    escala = 1 << b
    psi = spec.normalizado()
    p_hojas = np.abs(psi) ** 2

    # probabilidades[w][y] con y de w bits
    probabilidades = [None] * (n + 1)
    probabilidades[n] = p_hojas
    for w in range(n - 1, -1, -1):
        hijos = probabilidades[w + 1]
        probabilidades[w] = hijos[0::2] + hijos[1::2]

    thetas, theta_bits = [], []
    for w in range(n):
        p_y = probabilidades[w]
        p_y0 = probabilidades[w + 1][0::2]
        with np.errstate(divide="ignore", invalid="ignore"):
            cociente = np.where(p_y > 0, p_y0 / np.where(p_y > 0, p_y, 1), 1)
        theta = np.arccos(np.sqrt(np.clip(cociente, 0, 1))) / (2 * np.pi)
        theta = np.where(p_y > 0, theta, 0.0)
        thetas.append([float(t) for t in theta])
        theta_bits.append([int(round(float(t) * escala)) for t in theta])

    fases = np.where(np.abs(psi) > 0, np.angle(psi) / (2 * np.pi), 0.0) % 1
    fase_bits = [int(round(float(f) * escala)) % escala for f in fases]

    return AngleTable(
        b=b,
        probabilities=[[float(p) for p in nivel] for nivel in probabilidades],
        thetas=thetas,
        theta_bits=theta_bits,
        phases=[float(f) for f in fases],
        phase_bits=fase_bits,
    )


def reconstruct_amplitudes(
    table: AngleTable,
    quantized: bool = True
) -> np.ndarray:
    """Amplitudes que produce el árbol de ángulos (cuantizado o exacto)"""
    n = table.n
    N = table.N
    escala = 1 << table.b
    x = np.arange(N)
    amplitudes = np.ones(N, dtype=np.complex128)
    for w in range(n):
        y = x >> (n - w)
        bit = (x >> (n - 1 - w)) & 1
        if quantized:
            theta = np.asarray(table.theta_bits[w], dtype=float)[y] / escala
        else:
            theta = np.asarray(table.thetas[w])[y]
        amplitudes *= np.where(bit == 0, np.cos(2 * np.pi * theta),
                               np.sin(2 * np.pi * theta))
    if quantized:
        fases = np.asarray(table.phase_bits, dtype=float) / escala
    else:
        fases = np.asarray(table.phases)
    return amplitudes * np.exp(2j * np.pi * fases)


def phase_entries(table: AngleTable, method: RotationMethod) -> List[int]:
    """
    Fases a escribir en la última consulta

    Con gradiente de fase cada suma controlada deja además e^{2πiθ̃_y} en
    la rama; se descuenta aquí.
    """
    escala = 1 << table.b
    if RotationMethod(method) == RotationMethod.CONTROLLED_ROTATION:
        return list(table.phase_bits)
    n = table.n
    entradas = []
    for x, fase in enumerate(table.phase_bits):
        acumulado = sum(table.theta_bits[w][x >> (n - w)] for w in range(n))
        entradas.append((fase - acumulado) % escala)
    return entradas


def error_bound(n: int, b: int, epsilon_fourier: float = 0.0) -> float:
    """2πn/2^b + ε_F"""
    return 2 * np.pi * n / (1 << b) + epsilon_fourier


# Registro de Fourier

def emit_fourier_state(
    builder: CircuitBuilder,
    fourier: Sequence[int],
    epsilon: float
):
    """H y RZ(−2^i/2^b) en cada qubit: 𝓕 como estado producto"""
    b = len(fourier)
    for i, q in enumerate(fourier):
        builder.h(q)
        builder.rz(q, Fraction(-(1 << i), 1 << b) % 1, epsilon=epsilon / b)


def fourier_qubit_state(i: int, b: int) -> np.ndarray:
    """Estado del qubit i de 𝓕: (|0⟩ + e^{−2πi·2^i/2^b}|1⟩)/√2"""
    return np.array([1, np.exp(-2j * np.pi * (1 << i) / (1 << b))],
                    dtype=np.complex128) / np.sqrt(2)


def build_fourier_state(b: int, epsilon: float) -> Circuit:
    recurso = FourierResource(b=b, epsilon=epsilon)
    builder = CircuitBuilder()
    fourier = builder.add_register("fourier", recurso.b, RegisterRole.FOURIER)
    emit_fourier_state(builder, fourier, recurso.epsilon)
    builder.metadata["epsilon"] = recurso.epsilon
    return builder.build()


# Emisión

def add_state_prep_registers(
    builder: CircuitBuilder,
    system: Sequence[int],
    b: int,
    lam: int,
    method: RotationMethod,
    controlled: bool = False
) -> StatePrepRegisters:
    """Registros auxiliares de la preparación tras el registro de sistema"""
    N = 1 << len(system)
    lookup = builder.add_register("lookup", b, RegisterRole.CLEAN)
    fourier, carry, aux, dirty = [], [], [], []
    if RotationMethod(method) == RotationMethod.PHASE_GRADIENT:
        fourier = builder.add_register("fourier", b, RegisterRole.FOURIER)
        carry = builder.add_register("carry_add", 1, RegisterRole.CLEAN)
    if controlled:
        aux = builder.add_register("ctrl_aux", 1, RegisterRole.CLEAN)
    workspace = add_lookup_workspace(builder, N, lam, prefix="lk_")
    if lam > 1:
        dirty = builder.add_register("dirty", lam * b, RegisterRole.DIRTY)
    return StatePrepRegisters(
        system=list(system), lookup=lookup, fourier=fourier, carry=carry,
        aux=aux, workspace=workspace, dirty=dirty)


def _emit_rotacion(
    builder: CircuitBuilder,
    regs: StatePrepRegisters,
    t: int,
    method: RotationMethod,
    epsilon_rz: float,
    control: Optional[int]
):
    """exp(−2πiθY) sobre t con θ = L/2^b, como S·H·exp(−2πiθZ)·H·S†"""
    L = regs.lookup
    b = len(L)
    builder.sdg(t)
    builder.h(t)
    if method == RotationMethod.PHASE_GRADIENT:
        # Sumar 2L en 𝓕 controlado por t: diag(1, e^{2πi·2L/2^b})
        ctl = t
        if control is not None:
            ctl = regs.aux[0]
            builder.and_(control, t, ctl)
        emit_cuccaro_add(builder, L[:b - 1], regs.fourier[1:], regs.carry[0],
                         control=ctl)
        if control is not None:
            builder.and_dag(control, t, ctl)
    else:
        for i, bit in enumerate(L):
            beta = Fraction(1 << i, 1 << b)
            ctl = bit
            if control is not None:
                ctl = regs.aux[0]
                builder.and_(control, bit, ctl)
            builder.phase(t, beta, epsilon=epsilon_rz)
            builder.cx(ctl, t)
            builder.phase(t, -beta, epsilon=epsilon_rz)
            builder.cx(ctl, t)
            if control is not None:
                builder.and_dag(control, bit, ctl)
    builder.h(t)
    builder.s(t)


def _emit_fases(
    builder: CircuitBuilder,
    regs: StatePrepRegisters,
    entries: Sequence[int],
    lam: int,
    method: RotationMethod,
    epsilon_rz: float,
    control: Optional[int],
    fanout_strategy: Optional[FanoutStrategy]
):
    L = regs.lookup
    b = len(L)
    marca = builder.mark()
    emit_lookup(builder, regs.system, entries, b, L, lam, regs.workspace,
                regs.dirty, fanout_strategy)
    consulta = builder.gates_since(marca)

    if method == RotationMethod.PHASE_GRADIENT:
        emit_cuccaro_add(builder, L, regs.fourier, regs.carry[0],
                         control=control)
    else:
        for i, bit in enumerate(L):
            objetivo = bit
            if control is not None:
                objetivo = regs.aux[0]
                builder.and_(control, bit, objetivo)
            builder.phase(objetivo, Fraction(1 << i, 1 << b),
                          epsilon=epsilon_rz)
            if control is not None:
                builder.and_dag(control, bit, objetivo)

    builder.extend(invert_gates(consulta))


def rotation_epsilon(n: int, b: int, epsilon: float) -> float:
    """Error asignado a cada RZ de las rotaciones y fases"""
    return epsilon / max(1, 2 * n * b + b)


def emit_state_prep(
    builder: CircuitBuilder,
    table: AngleTable,
    regs: StatePrepRegisters,
    lam: int,
    method: RotationMethod,
    epsilon: float,
    control: Optional[int] = None,
    fanout_strategy: Optional[FanoutStrategy] = None
):
    """
    Prepara el estado del árbol sobre regs.system (que empieza en |0⟩)

    Con control, solo las rotaciones y las fases dependen del qubit de
    control; las consultas se deshacen igualmente y el resto se cancela.
    """
    method = RotationMethod(method)
    n = len(regs.system)
    b = table.b
    epsilon_rz = rotation_epsilon(n, b, epsilon)

    for w in range(n):
        if not any(table.theta_bits[w]):
            continue
        t = regs.system[n - 1 - w]
        indice = regs.system[n - w:]
        marca = builder.mark()
        emit_lookup(builder, indice, table.theta_bits[w], b, regs.lookup,
                    min(lam, 1 << w), regs.workspace, regs.dirty,
                    fanout_strategy)
        consulta = builder.gates_since(marca)
        _emit_rotacion(builder, regs, t, method, epsilon_rz, control)
        builder.extend(invert_gates(consulta))

    entradas = phase_entries(table, method)
    if any(entradas):
        _emit_fases(builder, regs, entradas, lam, method, epsilon_rz,
                    control, fanout_strategy)


def _comprobar_parametros(N: int, lam: int, b: int, method: RotationMethod):
    if N & (N - 1):
        raise ParameterError(f"N={N} no es potencia de dos")
    if not 1 <= lam <= N:
        raise ParameterError(f"λ={lam} fuera de [1, {N}]")
    if method == RotationMethod.PHASE_GRADIENT and b < 2:
        raise ParameterError("El gradiente de fase necesita b ≥ 2")


def build_state_prep(
    spec: StateSpec,
    lam: int,
    b: int,
    epsilon: float,
    method: RotationMethod = RotationMethod.PHASE_GRADIENT,
    include_fourier: bool = True,
    fanout_strategy: Optional[FanoutStrategy] = None
) -> Circuit:
    """Circuito |0⟩_x|0…⟩ → |ψ′⟩_x|0…⟩ (con 𝓕 preparado y conservado)"""
    method = RotationMethod(method)
    _comprobar_parametros(spec.N, lam, b, method)
    if not 0 < epsilon < 1:
        raise ParameterError("ε debe estar en (0, 1)")
    tabla = compute_angles(spec, b)

    builder = CircuitBuilder()
    x = builder.add_register("x", spec.n, RegisterRole.OUTPUT)
    regs = add_state_prep_registers(builder, x, b, lam, method)
    if regs.fourier and include_fourier:
        emit_fourier_state(builder, regs.fourier, epsilon)
    emit_state_prep(builder, tabla, regs, lam, method, epsilon,
                    fanout_strategy=fanout_strategy)

    builder.metadata["method"] = method.value
    builder.metadata["lambda"] = lam
    builder.metadata["b"] = b
    builder.metadata["epsilon"] = epsilon
    builder.metadata["fourier_prepared"] = bool(regs.fourier)
    builder.metadata["fourier_included"] = bool(regs.fourier) and \
        include_fourier
    circuito = builder.build()
    logger.info(f"Preparación N={spec.N}, b={b}, λ={lam}, {method.value}: "
                f"{circuito.num_qubits} qubits, {len(circuito.gates)} "
                f"puertas")
    return circuito


# Extracción y verificación

def _estado_esperado_resto(circuit: Circuit, resto: Sequence[int]) -> np.ndarray:
    """Producto de los estados esperados de los qubits no sistema"""
    fourier = []
    if circuit.metadata.get("fourier_prepared"):
        try:
            fourier = circuit.registers.get("fourier").qubits
        except KeyError:
            fourier = []
    estado = np.ones(1, dtype=np.complex128)
    for q in resto:
        if q in fourier:
            qubit = fourier_qubit_state(fourier.index(q), len(fourier))
        else:
            qubit = np.array([1, 0], dtype=np.complex128)
        estado = np.kron(estado, qubit)
    return estado


def extract_system_state(
    circuit: Circuit,
    amplitudes: np.ndarray,
    system: Sequence[int]
) -> np.ndarray:
    """
    Estado de los qubits de sistema proyectando el resto en su valor
    esperado (|0⟩, o 𝓕 en el registro de Fourier)
    """
    matriz = split_registers(circuit, amplitudes, system)
    conjunto = set(system)
    resto = [q for q in range(circuit.num_qubits) if q not in conjunto]
    return matriz @ _estado_esperado_resto(circuit, resto).conj()


def prepared_state(
    circuit: Circuit,
    simulator: Optional[StatevectorSimulator] = None
) -> np.ndarray:
    """Simula la preparación desde |0…0⟩ y devuelve el estado de x"""
    simulator = simulator or StatevectorSimulator()
    simulator.comprobar_limite(circuit)
    inicial = np.zeros(1 << circuit.num_qubits, dtype=np.complex128)
    inicial[0] = 1
    final = simulator.run(circuit, inicial)
    return extract_system_state(circuit, final, circuit.qubits("x"))


def preparation_error(spec: StateSpec, prepared: np.ndarray) -> float:
    """‖|ψ′⟩ − |ψ⟩‖ alineando la fase global"""
    return state_distance(spec.normalizado(), prepared)


def state_prep_tradeoff(
    spec: StateSpec,
    lambdas: Sequence[int],
    b: int,
    epsilon: float,
    method: RotationMethod = RotationMethod.PHASE_GRADIENT,
    model: Optional[CostModel] = None
) -> List[Dict[str, int]]:
    """Coste medido de la preparación para cada λ"""
    filas = []
    for lam in lambdas:
        circuito = build_state_prep(spec, lam, b, epsilon, method)
        informe = resource_report(circuito, model)
        filas.append({
            "lambda": lam,
            "t_count": informe.t_count,
            "t_depth": informe.t_depth,
            "qubits": informe.qubits_total,
        })
        logger.debug(f"λ={lam}: {informe.t_count} T")
    return filas

"""
Swaps controlados entre registros y red Swap de movimiento al frente

Variantes de CSWAP_n (control z, pares (p_i, r_i)):

- linear: polinomio de fase de la Toffoli compartido entre los n pares,
  con los CX desde z sustituidos por fanouts; 6n T más un T^n sobre z,
  profundidad T 4.
- logarithmic: dos mitades con el truco de conmutación; cada par usa un
  qubit sucio d de la otra mitad y dos bloques de 4 T alrededor de un
  fanout z → d.
- phase_incorrect: Toffoli de fase relativa (puertas G) por par con el
  CX central sustituido por un fanout z → r; 4n T, correcta salvo un −1
  cuando z = p = r = 1 en la base interna.
"""
from src.models.strategies import FanoutStrategy, SwapStrategy, TargetKind
from src.circuits.builder import CircuitBuilder, emit_phase
from src.models.circuit import Circuit, RegisterRole
from src.builders.fanout import emit_fanout
from src.utils.errors import ParameterError

from typing import Callable, List, Sequence, Tuple
from fractions import Fraction

import logging

logger = logging.getLogger(__name__)

Par = Tuple[int, int]


def _emit_linear(builder: CircuitBuilder, z: int, pares: Sequence[Par]):
    p = [a for a, _ in pares]
    r = [b for _, b in pares]
    for pi, ri in pares:
        builder.cx(ri, pi)
    for ri in r:
        builder.h(ri)
    for pi, ri in pares:
        builder.t(pi)
        builder.t(ri)
    emit_phase(builder, z, Fraction(len(pares), 8))
    emit_fanout(builder, z, p, FanoutStrategy.LINEAR)
    for pi, ri in pares:
        builder.cx(pi, ri)
    for pi, ri in pares:
        builder.tdg(pi)
        builder.t(ri)
    emit_fanout(builder, z, p + r, FanoutStrategy.LINEAR)
    for ri in r:
        builder.tdg(ri)
    for pi, ri in pares:
        builder.cx(pi, ri)
    emit_fanout(builder, z, r, FanoutStrategy.LINEAR)
    for ri in r:
        builder.tdg(ri)
    emit_fanout(builder, z, r, FanoutStrategy.LINEAR)
    for ri in r:
        builder.h(ri)
    for pi, ri in pares:
        builder.cx(ri, pi)


def _emit_phase_incorrect(
    builder: CircuitBuilder,
    z: int,
    pares: Sequence[Par],
    fanout_strategy: FanoutStrategy
):
    r = [b for _, b in pares]
    for pi, ri in pares:
        builder.cx(ri, pi)
    for ri in r:
        builder.gdg(ri)
    for pi, ri in pares:
        builder.cx(pi, ri)
    for ri in r:
        builder.gdg(ri)
    emit_fanout(builder, z, r, fanout_strategy)
    for ri in r:
        builder.g(ri)
    for pi, ri in pares:
        builder.cx(pi, ri)
    for ri in r:
        builder.g(ri)
    for pi, ri in pares:
        builder.cx(ri, pi)


def _bloque_fase(builder: CircuitBuilder, d: int, p: int, r: int):
    """e^{iπ/4·(d − d⊕p − d⊕r + d⊕p⊕r)}: mitad del polinomio 4dpr"""
    builder.t(d)
    builder.cx(d, p)
    builder.tdg(p)
    builder.cx(r, p)
    builder.t(p)
    builder.cx(d, p)
    builder.cx(r, p)
    builder.cx(d, r)
    builder.tdg(r)
    builder.cx(d, r)


def _bloque_clifford(builder: CircuitBuilder, p: int, r: int):
    """Resto del polinomio: e^{iπ/4·2(p + r − p⊕r)}"""
    builder.s(p)
    builder.s(r)
    builder.cx(p, r)
    builder.sdg(r)
    builder.cx(p, r)


def _mitades(n: int) -> Tuple[int, int]:
    primera = (n + 1) // 2
    return primera, n - primera


def _emit_toggled_half(
    builder: CircuitBuilder,
    z: int,
    unidades: Sequence,
    sucios: Sequence[int],
    fanout_strategy: FanoutStrategy,
    directo: Callable,
    mitad_a: Callable,
    mitad_b: Callable
):
    """
    Conmutación: V_d · CNOT(z → d) · V_d · CNOT(z → d) aplica V^z

    Si faltan sucios, la primera unidad se controla directamente con z.
    """
    unidades = list(unidades)
    if len(sucios) < len(unidades):
        directo(z, unidades[0])
        unidades = unidades[1:]
    if not unidades:
        return
    d = list(sucios[:len(unidades)])
    for u, di in zip(unidades, d):
        mitad_a(di, u)
    emit_fanout(builder, z, d, fanout_strategy)
    for u, di in zip(unidades, d):
        mitad_b(di, u)
    emit_fanout(builder, z, d, fanout_strategy)


def _emit_logarithmic(
    builder: CircuitBuilder,
    z: int,
    pares: Sequence[Par],
    fanout_strategy: FanoutStrategy
):
    pares = list(pares)
    primera, _ = _mitades(len(pares))
    mitad1, mitad2 = pares[:primera], pares[primera:]

    def directo(control: int, par: Par):
        _emit_linear(builder, control, [par])

    def mitad_a(d: int, par: Par):
        p, r = par
        builder.cx(r, p)
        builder.h(r)
        _bloque_fase(builder, d, p, r)

    def mitad_b(d: int, par: Par):
        p, r = par
        _bloque_fase(builder, d, p, r)
        _bloque_clifford(builder, p, r)
        builder.h(r)
        builder.cx(r, p)

    _emit_toggled_half(builder, z, mitad1, [p for p, _ in mitad2],
                       fanout_strategy, directo, mitad_a, mitad_b)
    _emit_toggled_half(builder, z, mitad2, [p for p, _ in mitad1],
                       fanout_strategy, directo, mitad_a, mitad_b)


def emit_controlled_swap(
    builder: CircuitBuilder,
    control: int,
    left: Sequence[int],
    right: Sequence[int],
    strategy: SwapStrategy = SwapStrategy.LINEAR,
    fanout_strategy: FanoutStrategy = FanoutStrategy.TREE_REUSE,
    macro_form: bool = False
):
    """Intercambia left[i] ↔ right[i] si control vale 1"""
    if len(left) != len(right):
        raise ParameterError("Registros de anchura distinta en el swap")
    pares = list(zip(left, right))
    if not pares:
        return
    if macro_form:
        for p, r in pares:
            builder.cswap(control, p, r)
        return

    strategy = SwapStrategy(strategy)
    if strategy == SwapStrategy.LINEAR:
        _emit_linear(builder, control, pares)
    elif strategy == SwapStrategy.LOGARITHMIC:
        _emit_logarithmic(builder, control, pares, fanout_strategy)
    else:
        _emit_phase_incorrect(builder, control, pares, fanout_strategy)


def swap_levels(count: int) -> List[List[Tuple[int, int]]]:
    """Pares de registros (i, i+2^j) de cada nivel j, en orden ascendente"""
    niveles = []
    paso = 1
    while paso < count:
        niveles.append([(i, i + paso) for i in range(0, count, 2 * paso)
                        if i + paso < count])
        paso *= 2
    return niveles


def emit_swap_network(
    builder: CircuitBuilder,
    index: Sequence[int],
    registers: Sequence[Sequence[int]],
    strategy: SwapStrategy = SwapStrategy.LINEAR,
    fanout_strategy: FanoutStrategy = FanoutStrategy.TREE_REUSE,
    macro_form: bool = False
):
    """
    Mueve el registro x al frente, controlado por el índice |x⟩

    El nivel j intercambia los pares (i, i+2^j) controlado por x_j; todos
    los pares del nivel forman un único CSWAP_n.
    """
    registros = [list(r) for r in registers]
    niveles = swap_levels(len(registros))
    if len(niveles) > len(index):
        raise ParameterError(
            f"{len(registros)} registros necesitan {len(niveles)} bits de "
            f"índice, hay {len(index)}")
    for j, pares in enumerate(niveles):
        izquierda, derecha = [], []
        for i, k in pares:
            izquierda.extend(registros[i])
            derecha.extend(registros[k])
        emit_controlled_swap(builder, index[j], izquierda, derecha, strategy,
                             fanout_strategy, macro_form)


def build_controlled_swap_n(
    n: int,
    strategy: SwapStrategy = SwapStrategy.LINEAR,
    fanout_strategy: FanoutStrategy = FanoutStrategy.TREE_REUSE
) -> Circuit:
    """CSWAP_n entre los registros left y right"""
    if n < 1:
        raise ParameterError("CSWAP_n necesita n ≥ 1")
    strategy = SwapStrategy(strategy)
    builder = CircuitBuilder()
    (z,) = builder.add_register("control", 1, RegisterRole.CONTROL)
    left = builder.add_register("left", n, RegisterRole.OUTPUT)
    right = builder.add_register("right", n, RegisterRole.OUTPUT)
    emit_controlled_swap(builder, z, left, right, strategy, fanout_strategy)
    builder.metadata["phase_exact"] = strategy != SwapStrategy.PHASE_INCORRECT
    builder.metadata["swap_strategy"] = strategy.value
    circuito = builder.build()
    logger.info(f"CSWAP_{n} {strategy.value}: {len(circuito.gates)} puertas")
    return circuito


def build_swap_network(
    N: int,
    b: int,
    strategy: SwapStrategy = SwapStrategy.LINEAR,
    fanout_strategy: FanoutStrategy = FanoutStrategy.TREE_REUSE,
    macro_form: bool = False
) -> Circuit:
    """Red Swap sobre N registros de b qubits e índice de ⌈log2 N⌉ qubits"""
    if N < 1 or b < 1:
        raise ParameterError("La red Swap necesita N ≥ 1 y b ≥ 1")
    strategy = SwapStrategy(strategy)
    builder = CircuitBuilder()
    ancho = (N - 1).bit_length()
    indice = builder.add_register("x", ancho, RegisterRole.INDEX)
    registros = [builder.add_register(f"reg{i}", b, RegisterRole.OUTPUT)
                 for i in range(N)]
    emit_swap_network(builder, indice, registros, strategy, fanout_strategy,
                      macro_form)
    builder.metadata["phase_exact"] = strategy != SwapStrategy.PHASE_INCORRECT
    builder.metadata["swap_strategy"] = strategy.value
    builder.metadata["index_domain"] = {"x": N}
    circuito = builder.build()
    logger.info(f"Red Swap N={N}, b={b}, {strategy.value}: "
                f"{len(circuito.gates)} puertas")
    return circuito


def build_multi_target_controlled(
    kind: TargetKind,
    n: int,
    fanout_strategy: FanoutStrategy = FanoutStrategy.TREE_REUSE
) -> Circuit:
    """
    |0⟩⟨0|⊗I + |1⟩⟨1|⊗V^{⊗n} con V autoinversa (swap o X)

    Cada mitad usa como sucios qubits de la otra mitad; V controlada se
    emite como macro (CSWAP o CX) sin fusionar polinomios de fase.
    """
    try:
        kind = TargetKind(kind)
    except ValueError:
        raise ParameterError(f"V no soportada: {kind}")
    if n < 1:
        raise ParameterError("Se necesita n ≥ 1")

    builder = CircuitBuilder()
    (z,) = builder.add_register("control", 1, RegisterRole.CONTROL)
    if kind == TargetKind.SWAP:
        left = builder.add_register("left", n, RegisterRole.OUTPUT)
        right = builder.add_register("right", n, RegisterRole.OUTPUT)
        unidades = list(zip(left, right))

        def aplicar(control: int, par: Par):
            builder.cswap(control, par[0], par[1])

        def sucio_de(par: Par) -> int:
            return par[0]
    else:
        objetivos = builder.add_register("targets", n, RegisterRole.OUTPUT)
        unidades = list(objetivos)

        def aplicar(control: int, t: int):
            builder.cx(control, t)

        def sucio_de(t: int) -> int:
            return t

    primera, _ = _mitades(n)
    mitad1, mitad2 = unidades[:primera], unidades[primera:]
    _emit_toggled_half(builder, z, mitad1, [sucio_de(u) for u in mitad2],
                       fanout_strategy, aplicar, aplicar, aplicar)
    _emit_toggled_half(builder, z, mitad2, [sucio_de(u) for u in mitad1],
                       fanout_strategy, aplicar, aplicar, aplicar)
    builder.metadata["target_kind"] = kind.value
    return builder.build()

"""
Oráculos de consulta de datos O|x⟩|0⟩ = |x⟩|a_x⟩

- Select: iteración unaria sobre el índice; en cada hoja un fanout desde
  el qubit de control escribe los bits a 1 de la palabra.
- SelectSwap: división x → (q, r), Select sobre q escribe λ entradas en λ
  registros y la red Swap controlada por r lleva la buscada al registro 0.
  Los registros restantes quedan con basura.
- SelectSwap con qubits sucios: dos Select y cuatro Swap sobre λ
  registros sucios que vuelven exactamente a su estado inicial.
"""
from src.models.strategies import FanoutStrategy, SwapStrategy
from src.builders.arithmetic import (
    DivmodWorkspace, divmod_workspace_sizes, emit_divmod
)
from src.circuits.builder import CircuitBuilder, invert_gates
from src.models.lookup import DataTable, LookupPlan, ceil_log2
from src.builders.swapnet import emit_swap_network
from src.models.circuit import Circuit, RegisterRole
from src.builders.fanout import emit_fanout
from src.utils.errors import ParameterError
from src.config.settings import settings

from typing import Callable, List, NamedTuple, Optional, Sequence

import math
import logging

logger = logging.getLogger(__name__)

Hoja = Callable[[Optional[int], int], None]


class LookupWorkspace(NamedTuple):
    """Qubits limpios de un oráculo: ayudantes de la iteración y división"""
    helpers: List[int]
    divmod: Optional[DivmodWorkspace] = None


def helper_count(count: int) -> int:
    """Ayudantes de la iteración unaria sobre count hojas"""
    return max(0, ceil_log2(count) - 1)


def add_lookup_workspace(
    builder: CircuitBuilder,
    count: int,
    lam: int,
    prefix: str = ""
) -> LookupWorkspace:
    """Añade los registros limpios que necesita un oráculo (N, λ)"""
    bloques = -(-count // lam)
    helpers = builder.add_register(f"{prefix}helpers", helper_count(bloques),
                                   RegisterRole.CLEAN)
    ext, k, c = divmod_workspace_sizes(lam)
    division = None
    if ext:
        division = DivmodWorkspace(
            extension=builder.add_register(f"{prefix}ext", ext,
                                           RegisterRole.CLEAN),
            constant=builder.add_register(f"{prefix}k", k,
                                          RegisterRole.CLEAN),
            carries=builder.add_register(f"{prefix}carry", c,
                                         RegisterRole.CLEAN))
    return LookupWorkspace(helpers=helpers, divmod=division)


def emit_unary_iteration(
    builder: CircuitBuilder,
    index: Sequence[int],
    count: int,
    helpers: Sequence[int],
    leaf: Hoja
):
    """
    Recorre las hojas 0..count−1 con un qubit de control por hoja

    leaf(ctl, x) recibe un qubit que vale 1 exactamente cuando el índice
    es x (None si count = 1: la hoja es incondicional). La raíz usa el bit
    de índice directamente; cada nodo interno bajo ella gasta un AND.
    """
    if count < 1:
        raise ParameterError("La iteración unaria necesita al menos una hoja")
    m = ceil_log2(count)
    if len(index) < m:
        raise ParameterError(f"{count} hojas necesitan {m} bits de índice")
    if len(helpers) < max(0, m - 1):
        raise ParameterError(f"Faltan ayudantes: {len(helpers)} < {m - 1}")

    def iterar(ctl: Optional[int], nivel: int, inicio: int):
        if nivel == m:
            leaf(ctl, inicio)
            return
        bit = index[m - 1 - nivel]
        mitad = inicio + (1 << (m - 1 - nivel))

        if ctl is None:
            builder.x(bit)
            iterar(bit, nivel + 1, inicio)
            builder.x(bit)
            iterar(bit, nivel + 1, mitad)
            return

        anc = helpers[nivel - 1]
        builder.x(bit)
        builder.and_(ctl, bit, anc)
        builder.x(bit)
        iterar(anc, nivel + 1, inicio)
        if mitad < count:
            builder.cx(ctl, anc)
            iterar(anc, nivel + 1, mitad)
            builder.and_dag(ctl, bit, anc)
        else:
            builder.x(bit)
            builder.and_dag(ctl, bit, anc)
            builder.x(bit)

    iterar(None, 0, 0)


def emit_select(
    builder: CircuitBuilder,
    index: Sequence[int],
    words: Sequence[int],
    out: Sequence[int],
    helpers: Sequence[int],
    fanout_strategy: Optional[FanoutStrategy] = None
):
    """out ⊕= words[x]; el bit i de la palabra va al qubit out[i]"""
    fanout_strategy = FanoutStrategy(
        fanout_strategy or settings.DEFAULT_FANOUT)
    out = list(out)

    def hoja(ctl: Optional[int], x: int):
        palabra = words[x]
        objetivos = [q for i, q in enumerate(out) if (palabra >> i) & 1]
        if ctl is None:
            for q in objetivos:
                builder.x(q)
        else:
            emit_fanout(builder, ctl, objetivos, fanout_strategy)

    emit_unary_iteration(builder, index, len(words), helpers, hoja)


def block_words(entries: Sequence[int], b: int, lam: int) -> List[int]:
    """Palabra del bloque q: entradas qλ … qλ+λ−1 concatenadas"""
    bloques = -(-len(entries) // lam)
    palabras = []
    for q in range(bloques):
        palabra = 0
        for j in range(lam):
            x = q * lam + j
            if x < len(entries):
                palabra |= entries[x] << (j * b)
        palabras.append(palabra)
    return palabras


def _aplanar(registros: Sequence[Sequence[int]]) -> List[int]:
    return [q for registro in registros for q in registro]


def emit_selectswap(
    builder: CircuitBuilder,
    index: Sequence[int],
    entries: Sequence[int],
    b: int,
    lam: int,
    registers: Sequence[Sequence[int]],
    workspace: LookupWorkspace,
    swap_strategy: Optional[SwapStrategy] = None,
    fanout_strategy: Optional[FanoutStrategy] = None,
    macro_form: bool = False
):
    """SelectSwap con basura: registers[0] ⊕= a_x"""
    if len(registers) != lam:
        raise ParameterError(f"Se esperaban {lam} registros de salida")
    swap_strategy = SwapStrategy(swap_strategy or settings.DEFAULT_SWAP)
    fanout_strategy = FanoutStrategy(
        fanout_strategy or settings.DEFAULT_FANOUT)

    marca = builder.mark()
    layout = emit_divmod(builder, index, lam, workspace.divmod)
    division = builder.gates_since(marca)

    palabras = block_words(entries, b, lam)
    m = ceil_log2(len(palabras))
    emit_select(builder, layout.quotient[:m], palabras, _aplanar(registers),
                workspace.helpers, fanout_strategy)
    emit_swap_network(builder, layout.remainder, registers, swap_strategy,
                      fanout_strategy, macro_form)
    builder.extend(invert_gates(division))


def emit_selectswap_dirty(
    builder: CircuitBuilder,
    index: Sequence[int],
    entries: Sequence[int],
    b: int,
    lam: int,
    out: Sequence[int],
    dirty: Sequence[Sequence[int]],
    workspace: LookupWorkspace,
    swap_strategy: Optional[SwapStrategy] = None,
    fanout_strategy: Optional[FanoutStrategy] = None,
    macro_form: bool = False
):
    """
    out ⊕= a_x sin basura con λ registros sucios

    Secuencia: Select, Swap, copia, Swap†, Select, Swap, copia, Swap†.
    La primera copia escribe d ⊕ a_x y la segunda d, de modo que out
    recibe a_x y los sucios vuelven a d.
    """
    if len(dirty) != lam:
        raise ParameterError(f"Se esperaban {lam} registros sucios")
    swap_strategy = SwapStrategy(swap_strategy or settings.DIRTY_SWAP)
    fanout_strategy = FanoutStrategy(
        fanout_strategy or settings.DEFAULT_FANOUT)

    marca = builder.mark()
    layout = emit_divmod(builder, index, lam, workspace.divmod)
    division = builder.gates_since(marca)

    palabras = block_words(entries, b, lam)
    m = ceil_log2(len(palabras))
    sucios = _aplanar(dirty)
    for _ in range(2):
        emit_select(builder, layout.quotient[:m], palabras, sucios,
                    workspace.helpers, fanout_strategy)
        marca = builder.mark()
        emit_swap_network(builder, layout.remainder, dirty, swap_strategy,
                          fanout_strategy, macro_form)
        ida = builder.gates_since(marca)
        for d, o in zip(dirty[0], out):
            builder.cx(d, o)
        builder.extend(invert_gates(ida))

    builder.extend(invert_gates(division))


def emit_lookup(
    builder: CircuitBuilder,
    index: Sequence[int],
    entries: Sequence[int],
    b: int,
    out: Sequence[int],
    lam: int,
    workspace: LookupWorkspace,
    dirty: Optional[Sequence[int]] = None,
    fanout_strategy: Optional[FanoutStrategy] = None,
    macro_form: bool = False
):
    """
    Oráculo sin basura out ⊕= a_x para los constructores de estados

    λ = 1 es un Select directo; con λ > 1 se usan los primeros λ·b qubits
    de dirty como registros sucios.
    """
    if lam == 1:
        m = ceil_log2(len(entries))
        emit_select(builder, list(index)[:m], entries, out,
                    workspace.helpers, fanout_strategy)
        return
    if dirty is None or len(dirty) < lam * b:
        raise ParameterError(f"λ={lam} necesita {lam * b} qubits sucios")
    registros = [list(dirty[j * b:(j + 1) * b]) for j in range(lam)]
    emit_selectswap_dirty(builder, index, entries, b, lam, out, registros,
                          workspace, fanout_strategy=fanout_strategy,
                          macro_form=macro_form)


def _comprobar_plan(table: DataTable, plan: LookupPlan, dirty: bool):
    if plan.N != table.N:
        raise ParameterError(
            f"El plan es para N={plan.N}, la tabla tiene {table.N}")
    if plan.dirty != dirty:
        raise ParameterError("Variante del plan incompatible con el oráculo")


def build_select(
    table: DataTable,
    fanout_strategy: Optional[FanoutStrategy] = None
) -> Circuit:
    """Select sobre ⌈log2 N⌉ qubits de índice y b de salida"""
    builder = CircuitBuilder()
    x = builder.add_register("x", table.index_width, RegisterRole.INDEX)
    helpers = builder.add_register("helpers", helper_count(table.N),
                                   RegisterRole.CLEAN)
    out = builder.add_register("out", table.b, RegisterRole.OUTPUT)
    emit_select(builder, x, table.entries, out, helpers, fanout_strategy)
    builder.metadata["index_domain"] = {"x": table.N}
    builder.metadata["oracle"] = "select"
    circuito = builder.build()
    logger.info(f"Select N={table.N}, b={table.b}: {circuito.num_qubits} "
                f"qubits, {len(circuito.gates)} puertas")
    return circuito


def build_selectswap(
    table: DataTable,
    plan: LookupPlan,
    swap_strategy: Optional[SwapStrategy] = None,
    fanout_strategy: Optional[FanoutStrategy] = None,
    macro_form: bool = False
) -> Circuit:
    """SelectSwap con λ registros de salida; el registro 0 es out"""
    _comprobar_plan(table, plan, dirty=False)
    swap_strategy = SwapStrategy(swap_strategy or settings.DEFAULT_SWAP)
    builder = CircuitBuilder()
    x = builder.add_register("x", table.index_width, RegisterRole.INDEX)
    workspace = add_lookup_workspace(builder, table.N, plan.lam)
    out = builder.add_register("out", table.b, RegisterRole.OUTPUT)
    basura = builder.add_register("garbage", (plan.lam - 1) * table.b,
                                  RegisterRole.CLEAN)
    registros = [out] + [basura[j * table.b:(j + 1) * table.b]
                         for j in range(plan.lam - 1)]
    emit_selectswap(builder, x, table.entries, table.b, plan.lam, registros,
                    workspace, swap_strategy, fanout_strategy, macro_form)
    builder.metadata["index_domain"] = {"x": table.N}
    builder.metadata["oracle"] = "selectswap"
    builder.metadata["lambda"] = plan.lam
    builder.metadata["phase_exact"] = (
        macro_form or swap_strategy != SwapStrategy.PHASE_INCORRECT)
    circuito = builder.build()
    logger.info(f"SelectSwap N={table.N}, b={table.b}, λ={plan.lam}: "
                f"{circuito.num_qubits} qubits, {len(circuito.gates)} puertas")
    return circuito


def build_selectswap_dirty(
    table: DataTable,
    plan: LookupPlan,
    swap_strategy: Optional[SwapStrategy] = None,
    fanout_strategy: Optional[FanoutStrategy] = None,
    macro_form: bool = False
) -> Circuit:
    """SelectSwap sin basura con b·λ qubits sucios"""
    _comprobar_plan(table, plan, dirty=True)
    swap_strategy = SwapStrategy(swap_strategy or settings.DIRTY_SWAP)
    if swap_strategy == SwapStrategy.PHASE_INCORRECT and not macro_form:
        logger.warning("Swaps de fase incorrecta en el oráculo con sucios: "
                       "la fase solo se comprueba salvo signo diagonal")
    builder = CircuitBuilder()
    x = builder.add_register("x", table.index_width, RegisterRole.INDEX)
    workspace = add_lookup_workspace(builder, table.N, plan.lam)
    out = builder.add_register("out", table.b, RegisterRole.OUTPUT)
    sucios = builder.add_register("dirty", plan.lam * table.b,
                                  RegisterRole.DIRTY)
    registros = [sucios[j * table.b:(j + 1) * table.b]
                 for j in range(plan.lam)]
    emit_selectswap_dirty(builder, x, table.entries, table.b, plan.lam, out,
                          registros, workspace, swap_strategy,
                          fanout_strategy, macro_form)
    builder.metadata["index_domain"] = {"x": table.N}
    builder.metadata["oracle"] = "selectswap_dirty"
    builder.metadata["lambda"] = plan.lam
    builder.metadata["phase_exact"] = (
        macro_form or swap_strategy != SwapStrategy.PHASE_INCORRECT)
    circuito = builder.build()
    logger.info(f"SelectSwap sucio N={table.N}, b={table.b}, λ={plan.lam}: "
                f"{circuito.num_qubits} qubits, {len(circuito.gates)} puertas")
    return circuito


def selectswap_t_formula(N: int, b: int, lam: int) -> int:
    """4⌈N/λ⌉ + 8bλ"""
    return 4 * (-(-N // lam)) + 8 * b * lam


def optimal_lambda(N: int, b: int) -> int:
    """
    λ ∈ [1, N] que minimiza 4⌈N/λ⌉ + 8bλ (empates hacia el menor)

    Con f(λ) ≥ 4N/λ y f(λ) ≥ 8bλ, el óptimo cae en la ventana
    [⌊4N/f(g)⌋, ⌈f(g)/(8b)⌉] alrededor de g ≈ √(N/(2b)).
    """
    if N < 1 or b < 1:
        raise ParameterError("optimal_lambda necesita N, b ≥ 1")
    guess = min(N, max(1, round(math.sqrt(N / (2 * b)))))
    cota = selectswap_t_formula(N, b, guess)
    inicio = max(1, (4 * N) // cota)
    fin = min(N, -(-cota // (8 * b)))
    candidatos = set(range(inicio, fin + 1)) | {1, N, guess}
    return min(sorted(candidatos),
               key=lambda lam: (selectswap_t_formula(N, b, lam), lam))

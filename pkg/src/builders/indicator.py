"""
Función indicadora |x⟩|y⟩ → |x⟩|e(x) ⊕ y⟩ y consulta en dos trozos

e(x) es la cadena de 2^n bits con un único 1 en la posición x. Se calcula
por mitades: e(x_hi) y e(x_lo) en espacio limpio y una capa de Toffolis
e(x)_{i·2^lo + j} = e(x_hi)_i ∧ e(x_lo)_j. En modo paralelo cada bit de las
mitades se copia con un fanout para que la capa sea una sola ronda
(profundidad O(n²), espacio O(N)); el modo secuencial usa rondas
diagonales con espacio O(√N) y profundidad O(√N). La consulta en dos
trozos escribe f̂(x_hi), la matriz b×2^k de salidas, y la multiplica por
e(x_lo).
"""
from src.circuits.builder import CircuitBuilder, invert_gates
from src.builders.lookup import emit_select, helper_count
from src.models.lookup import DataTable, ceil_log2
from src.models.circuit import Circuit, RegisterRole
from src.models.strategies import FanoutStrategy
from src.builders.fanout import emit_fanout
from src.utils.errors import ParameterError

from typing import List, Optional, Sequence

import logging

logger = logging.getLogger(__name__)

# Constante c de las cotas T ≤ c·N (indicadora) y ≤ c(2^{n−k} + b·2^k)
INDICATOR_T_CONSTANT = 16

# Constante c′ de la cota de profundidad ≤ c′·n² de la indicadora paralela
INDICATOR_DEPTH_CONSTANT = 16


def _mitades(k: int):
    bajo = k // 2
    return k - bajo, bajo


def _copias(k: int) -> int:
    """Copias extra de las mitades para la capa paralela"""
    alto, bajo = _mitades(k)
    return (1 << alto) * ((1 << bajo) - 1) + (1 << bajo) * ((1 << alto) - 1)


def indicator_workspace(k: int, parallel: bool = True) -> int:
    """Qubits limpios de la recursión para k bits de entrada"""
    if k <= 1:
        return 0
    alto, bajo = _mitades(k)
    resto = indicator_workspace(alto, parallel)
    if parallel:
        resto = max(resto, _copias(k))
    return (1 << alto) + (1 << bajo) + resto


def emit_indicator(
    builder: CircuitBuilder,
    x: Sequence[int],
    target: Sequence[int],
    pool: Sequence[int],
    clean_target: bool = False,
    parallel: bool = True
):
    """
    target ⊕= e(x), con x little-endian de k bits y 2^k objetivos

    Si el objetivo está limpio la capa final usa AND; si no, CCX. Las
    copias de la capa paralela reutilizan el espacio de la recursión, que
    ya está limpio cuando se emiten.
    """
    x = list(x)
    target = list(target)
    k = len(x)
    if len(target) != 1 << k:
        raise ParameterError(f"e(x) de {k} bits necesita {1 << k} objetivos")
    if len(pool) < indicator_workspace(k, parallel):
        raise ParameterError("Espacio de trabajo insuficiente para e(x)")

    if k == 0:
        builder.x(target[0])
        return
    if k == 1:
        builder.x(x[0])
        builder.cx(x[0], target[0])
        builder.x(x[0])
        builder.cx(x[0], target[1])
        return

    alto, bajo = _mitades(k)
    pool = list(pool)
    w_alto = pool[:1 << alto]
    w_bajo = pool[1 << alto:(1 << alto) + (1 << bajo)]
    resto = pool[(1 << alto) + (1 << bajo):]

    marca = builder.mark()
    emit_indicator(builder, x[bajo:], w_alto, resto, True, parallel)
    emit_indicator(builder, x[:bajo], w_bajo, resto, True, parallel)
    mitades = builder.gates_since(marca)

    def toffoli(a: int, b: int, t: int):
        if clean_target:
            builder.and_(a, b, t)
        else:
            builder.ccx(a, b, t)

    if parallel:
        libres = iter(resto)
        # copia_alto[i][j] alimenta la fila i, copia_bajo[j][i] la columna j
        copia_alto = [[w] + [next(libres) for _ in range((1 << bajo) - 1)]
                      for w in w_alto]
        copia_bajo = [[w] + [next(libres) for _ in range((1 << alto) - 1)]
                      for w in w_bajo]

        def copiar():
            for fila in copia_alto + copia_bajo:
                emit_fanout(builder, fila[0], fila[1:],
                            FanoutStrategy.LOGARITHMIC)

        copiar()
        for i in range(1 << alto):
            for j in range(1 << bajo):
                toffoli(copia_alto[i][j], copia_bajo[j][i],
                        target[(i << bajo) + j])
        copiar()
    else:
        # Rondas diagonales: en cada una, i y j distintos
        for ronda in range(1 << alto):
            for j in range(1 << bajo):
                i = (j + ronda) % (1 << alto)
                toffoli(w_alto[i], w_bajo[j], target[(i << bajo) + j])

    builder.extend(invert_gates(mitades))


def build_indicator(n: int, parallel: bool = True) -> Circuit:
    """U_n: |x⟩|y⟩ → |x⟩|e(x) ⊕ y⟩ sobre 2^n qubits de salida"""
    if n < 1:
        raise ParameterError("La indicadora necesita n ≥ 1")
    builder = CircuitBuilder()
    x = builder.add_register("x", n, RegisterRole.INDEX)
    work = builder.add_register("work", indicator_workspace(n, parallel),
                                RegisterRole.CLEAN)
    y = builder.add_register("y", 1 << n, RegisterRole.OUTPUT)
    emit_indicator(builder, x, y, work, parallel=parallel)
    builder.metadata["t_constant"] = INDICATOR_T_CONSTANT
    if parallel:
        builder.metadata["depth_constant"] = INDICATOR_DEPTH_CONSTANT
    circuito = builder.build()
    logger.info(f"Indicadora n={n}: {circuito.num_qubits} qubits, "
                f"{len(circuito.gates)} puertas")
    return circuito


def split_words(table: DataTable, k: int) -> List[int]:
    """f̂(x_hi) como palabra: bit j de a_{x_hi·2^k + t} en la posición j·2^k + t"""
    ancho = 1 << k
    bloques = -(-table.N // ancho)
    palabras = []
    for alto in range(bloques):
        palabra = 0
        for t in range(ancho):
            valor = table.entry(alto * ancho + t)
            for j in range(table.b):
                if (valor >> j) & 1:
                    palabra |= 1 << (j * ancho + t)
        palabras.append(palabra)
    return palabras


def build_lookup_via_indicator(
    table: DataTable,
    k: int,
    lam: int = 1,
    dirty: bool = False,
    fanout_strategy: Optional[FanoutStrategy] = None
) -> Circuit:
    """
    Consulta en dos trozos: x = x_hi·2^k + x_lo

    λ fija cuántas copias de e(x_lo) alimentan las filas del producto (la
    fila j usa la copia j mod λ; más de b copias no se usan). El producto
    calcula cada f_{j,t} ∧ e_t con un AND en un temporal limpio, suma la
    fila en out[j] con CX y descomputa los AND por medida. Con dirty, el
    registro de f̂ es sucio y el producto se aplica dos veces.
    """
    n = table.index_width
    b = table.b
    if not 0 <= k <= n:
        raise ParameterError(f"k={k} fuera de [0, {n}]")
    if not 1 <= lam <= b * (1 << k):
        raise ParameterError(f"λ={lam} fuera de [1, {b * (1 << k)}]")
    ancho = 1 << k
    copias = min(lam, b)
    palabras = split_words(table, k)

    builder = CircuitBuilder()
    x = builder.add_register("x", n, RegisterRole.INDEX)
    helpers = builder.add_register("helpers", helper_count(len(palabras)),
                                   RegisterRole.CLEAN)
    e = []
    temporales = []
    if k:
        e = builder.add_register("e", ancho * copias, RegisterRole.CLEAN)
        temporales = builder.add_register("prod", b * ancho,
                                          RegisterRole.CLEAN)
    work = builder.add_register("work", indicator_workspace(k),
                                RegisterRole.CLEAN)
    f = builder.add_register(
        "f", b * ancho, RegisterRole.DIRTY if dirty else RegisterRole.CLEAN)
    out = builder.add_register("out", b, RegisterRole.OUTPUT)

    x_bajo, x_alto = x[:k], x[k:]
    m = ceil_log2(len(palabras))
    copia = [e[c * ancho:(c + 1) * ancho] for c in range(copias)]

    marca = builder.mark()
    if k:
        emit_indicator(builder, x_bajo, copia[0], work, clean_target=True)
        for t in range(ancho):
            emit_fanout(builder, copia[0][t],
                        [copia[c][t] for c in range(1, copias)],
                        fanout_strategy or FanoutStrategy.LOGARITHMIC)
    indicadora = builder.gates_since(marca)

    def producto():
        if not k:
            for j in range(b):
                builder.cx(f[j], out[j])
            return
        inicio = builder.mark()
        for j in range(b):
            for t in range(ancho):
                builder.and_(f[j * ancho + t], copia[j % copias][t],
                             temporales[j * ancho + t])
        ands = builder.gates_since(inicio)
        for j in range(b):
            for t in range(ancho):
                builder.cx(temporales[j * ancho + t], out[j])
        builder.extend(invert_gates(ands))

    def escribir_f():
        emit_select(builder, x_alto[:m], palabras, f, helpers,
                    fanout_strategy)

    escribir_f()
    producto()
    escribir_f()
    if dirty:
        producto()
    builder.extend(invert_gates(indicadora))

    builder.metadata["index_domain"] = {"x": table.N}
    builder.metadata["oracle"] = "indicator"
    builder.metadata["k"] = k
    builder.metadata["t_constant"] = INDICATOR_T_CONSTANT
    circuito = builder.build()
    logger.info(f"Consulta por indicadora N={table.N}, b={b}, k={k}: "
                f"{circuito.num_qubits} qubits, {len(circuito.gates)} "
                f"puertas")
    return circuito

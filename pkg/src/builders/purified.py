"""
Preparación purificada de distribuciones: Σ_x √p′_x |x⟩|basura_x⟩

Los pesos se redondean a enteros a′_x con Σ a′_x = N·2^b y se
descomponen en pares (a″_x, f(x)) de tipo alias. El circuito pone x y j
en superposición uniforme, consulta (a″_x, f(x)), compara j con a″_x y,
si j ≥ a″_x, intercambia x con f(x).
"""
from src.builders.lookup import add_lookup_workspace, emit_lookup
from src.simulator.reversible import ReversibleSimulator
from src.builders.arithmetic import emit_comparator
from src.models.strategies import FanoutStrategy
from src.models.circuit import Circuit, RegisterRole
from src.circuits.builder import CircuitBuilder
from src.utils.errors import ParameterError
from src.models.stateprep import AliasTable

from typing import List, Optional, Sequence
from collections import deque

import numpy as np
import logging

logger = logging.getLogger(__name__)


def _redondear(pesos: np.ndarray, total: int) -> List[int]:
    """Mayor resto: suelo y +1 a los mayores restos (empates por índice)"""
    exactos = pesos / pesos.sum() * total
    suelos = np.floor(exactos).astype(np.int64)
    faltan = int(total - suelos.sum())
    restos = exactos - suelos
    orden = sorted(range(len(pesos)), key=lambda x: (-restos[x], x))
    redondeados = [int(v) for v in suelos]
    for x in orden[:max(faltan, 0)]:
        redondeados[x] += 1
    # Error de redondeo en coma flotante: Σ suelos > total
    for x in list(reversed(orden))[:max(-faltan, 0)]:
        redondeados[x] -= 1
    return redondeados


def alias_decompose(weights: Sequence[float], b: int) -> AliasTable:
    """
    Tabla alias exacta de los pesos redondeados

    Emparejamiento de Vose sobre enteros: cada casilla por debajo de 2^b
    toma su alias de la primera casilla por encima, que cede la diferencia.
    """
    pesos = np.asarray(weights, dtype=float).reshape(-1)
    if pesos.size == 0:
        raise ParameterError("Se necesita al menos un peso")
    if np.any(pesos < 0):
        raise ParameterError("Los pesos deben ser no negativos")
    if not pesos.sum() > 0:
        raise ParameterError("La suma de pesos debe ser positiva")
    if b < 1:
        raise ParameterError("Se necesita b ≥ 1")

    N = pesos.size
    escala = 1 << b
    redondeados = _redondear(pesos, N * escala)

    keep = [escala] * N
    alias = list(range(N))
    restante = list(redondeados)
    pequenos = deque(x for x in range(N) if restante[x] < escala)
    grandes = deque(x for x in range(N) if restante[x] > escala)

    while pequenos and grandes:
        s = pequenos.popleft()
        g = grandes[0]
        keep[s] = restante[s]
        alias[s] = g
        restante[g] -= escala - restante[s]
        if restante[g] < escala:
            grandes.popleft()
            pequenos.append(g)
        elif restante[g] == escala:
            grandes.popleft()

    tabla = AliasTable(b=b, rounded=redondeados, keep=keep, alias=alias)
    logger.debug(f"Tabla alias N={N}, b={b}: "
                 f"{sum(1 for k in keep if k < escala)} casillas con alias")
    return tabla


def alias_words(table: AliasTable) -> List[int]:
    """
    Palabra keep | alias << b de cada índice

    keep = 2^b no cabe en b bits: se guarda 0 con alias = x, de modo que
    el intercambio siempre ocurre pero no cambia nada.
    """
    escala = 1 << table.b
    palabras = []
    for x in range(table.N):
        keep, alias = table.keep[x], table.alias[x]
        if keep == escala:
            keep, alias = 0, x
        palabras.append(keep | (alias << table.b))
    return palabras


def build_purified_prep(
    weights: Sequence[float],
    lam: int,
    b: int,
    fanout_strategy: Optional[FanoutStrategy] = None,
    macro_form: bool = False
) -> Circuit:
    """Circuito de la preparación purificada con consulta de λ copias"""
    tabla = alias_decompose(weights, b)
    N = tabla.N
    if N & (N - 1):
        raise ParameterError(f"N={N} no es potencia de dos")
    if not 1 <= lam <= N:
        raise ParameterError(f"λ={lam} fuera de [1, {N}]")
    n = (N - 1).bit_length()
    ancho = b + n

    builder = CircuitBuilder()
    x = builder.add_register("x", n, RegisterRole.OUTPUT)
    j = builder.add_register("j", b, RegisterRole.CLEAN)
    keep = builder.add_register("keep", b, RegisterRole.CLEAN)
    alias = builder.add_register("alias", n, RegisterRole.CLEAN)
    (flag,) = builder.add_register("flag", 1, RegisterRole.CLEAN)
    (carry,) = builder.add_register("carry", 1, RegisterRole.CLEAN)
    workspace = add_lookup_workspace(builder, N, lam, prefix="lk_")
    sucios = []
    if lam > 1:
        sucios = builder.add_register("dirty", lam * ancho,
                                      RegisterRole.DIRTY)

    # Paso 1: superposición uniforme de x y j
    for q in x + j:
        builder.h(q)
    # Paso 2: (a″_x, f(x))
    emit_lookup(builder, x, alias_words(tabla), ancho, keep + alias, lam,
                workspace, sucios, fanout_strategy, macro_form)
    # Paso 3: flag = [j ≥ a″_x]
    emit_comparator(builder, keep, j, carry, flag)
    # Paso 4: x ↔ f(x) si flag
    for a_i, x_i in zip(alias, x):
        builder.cswap(flag, a_i, x_i)

    builder.metadata["hadamard_prefix"] = n + b
    builder.metadata["alias_table"] = tabla.to_mongo()
    builder.metadata["lambda"] = lam
    builder.metadata["b"] = b
    circuito = builder.build()
    logger.info(f"Preparación purificada N={N}, b={b}, λ={lam}: "
                f"{circuito.num_qubits} qubits, {len(circuito.gates)} "
                f"puertas")
    return circuito


def purified_distribution(circuit: Circuit) -> np.ndarray:
    """
    Diagonal reducida de x, exacta, por enumeración de (x, j)

    Tras el prefijo de Hadamards el resto del circuito es reversible: cada
    par (x, j) tiene peso 1/(N·2^b) y la fase no afecta a la diagonal.
    Con λ > 1 el circuito debe construirse con macro_form.
    """
    prefijo = circuit.metadata.get("hadamard_prefix")
    if prefijo is None:
        raise ParameterError("El circuito no es una preparación purificada")
    nucleo = circuit.with_gates(circuit.gates[prefijo:])
    n = len(circuit.qubits("x"))
    b = len(circuit.qubits("j"))
    N = 1 << n
    simulador = ReversibleSimulator()
    cuentas = np.zeros(N)
    for x in range(N):
        for j in range(1 << b):
            valores, _ = simulador.run_registers(nucleo, {"x": x, "j": j})
            cuentas[valores["x"]] += 1
    return cuentas / (N << b)


def exact_distribution(weights: Sequence[float]) -> np.ndarray:
    pesos = np.asarray(weights, dtype=float)
    return pesos / pesos.sum()

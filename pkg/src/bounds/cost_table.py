"""
Filas de las tablas de costes: oráculos de consulta y preparaciones

Las filas asintóticas usan constante 1 y log2; solo las filas de los
oráculos son fórmulas exactas comparables con los informes medidos.
"""
from src.bounds.lower_bounds import (
    lookup_lower_bound, measurement_assisted_lower_bound,
    stateprep_lower_bound
)
from src.models.bounds import BoundQuery, CostRow
from src.builders.lookup import optimal_lambda
from src.models.lookup import ceil_log2
from src.utils.errors import ParameterError

from typing import List, Sequence

import math

TABLA_ORACULOS = "oráculos"
TABLA_PREPARACION = "preparación"
COTA = "cota inferior"


def _bloques(N: int, lam: int) -> int:
    return -(-N // lam)


def select_row(N: int, b: int) -> CostRow:
    return CostRow(operation="select", source=TABLA_ORACULOS,
                   qubits=b + 2 * ceil_log2(N), t_count=4 * N, t_depth=N)


def swap_row(N: int, b: int) -> CostRow:
    return CostRow(operation="swap", source=TABLA_ORACULOS,
                   qubits=b * N + ceil_log2(N), t_count=8 * b * N,
                   t_depth=ceil_log2(N))


def selectswap_row(N: int, b: int, lam: int) -> CostRow:
    return CostRow(operation="selectswap", source=TABLA_ORACULOS, lam=lam,
                   qubits=b * lam + 2 * ceil_log2(N),
                   t_count=4 * _bloques(N, lam) + 8 * b * lam,
                   t_depth=_bloques(N, lam) + ceil_log2(lam))


def selectswap_dirty_row(N: int, b: int, lam: int) -> CostRow:
    return CostRow(operation="selectswap_dirty", source=TABLA_ORACULOS,
                   lam=lam, qubits=b * (lam + 1) + 2 * ceil_log2(N),
                   t_count=8 * _bloques(N, lam) + 32 * b * lam,
                   t_depth=2 * _bloques(N, lam) + 4 * ceil_log2(lam),
                   note=f"{b * lam} qubits sucios")


def _lg(valor: float) -> float:
    return math.log2(max(valor, 1.0))


def preparation_rows(
    N: int,
    K: int,
    epsilon: float,
    lam: int
) -> List[CostRow]:
    """Preparación de estados, isometrías y estados con basura"""
    lg_n = _lg(N)
    lg_ne = _lg(N / epsilon)
    lg_e = _lg(1 / epsilon)
    nota = "asintótica, constante 1"
    return [
        CostRow(operation="state", source="previa", qubits=lg_n,
                t_count=N * lg_ne, t_depth=N * lg_ne, note=nota),
        CostRow(operation="state", source=TABLA_PREPARACION, lam=lam,
                qubits=lg_n + lam * lg_e,
                t_count=N / lam + lam * lg_ne ** 2,
                t_depth=N / lam + _lg(N * lam / epsilon) ** 2, note=nota),
        CostRow(operation="unitary", source="previa", qubits=lg_n,
                t_count=N * N * lg_ne, note=nota),
        CostRow(operation="unitary", source=TABLA_PREPARACION, lam=lam,
                qubits=lg_n + lam * lg_e,
                t_count=K * N / lam + lam * K * lg_ne ** 2,
                note=f"{nota}; K={K}"),
        CostRow(operation="garbage_state", source="previa", qubits=lg_ne,
                t_count=N + lg_ne, note=nota),
        CostRow(operation="garbage_state", source=TABLA_PREPARACION, lam=lam,
                qubits=lam * lg_ne, t_count=N / lam + lam * lg_ne,
                note=nota),
    ]


def bound_rows(N: int, b: int, epsilon: float, q: int) -> List[CostRow]:
    """Cotas inferiores evaluadas con q qubits"""
    consulta = BoundQuery(N=N, b=b, q=q, epsilon=epsilon)
    filas = [
        CostRow(operation="lookup_lower_bound", source=COTA, qubits=q,
                t_count=lookup_lower_bound(consulta)),
        CostRow(operation="stateprep_lower_bound", source=COTA, qubits=q,
                t_count=stateprep_lower_bound(consulta)),
    ]
    if N & (N - 1) == 0:
        filas.append(CostRow(
            operation="measurement_assisted_lower_bound", source=COTA,
            t_count=measurement_assisted_lower_bound(N, epsilon)))
    return filas


def cost_table(
    N: int,
    b: int,
    K: int,
    epsilon: float,
    lambdas: Sequence[int]
) -> List[CostRow]:
    """
    Todas las filas para (N, b, K, ε) y cada λ de la lista

    Añade la λ óptima de SelectSwap, una fila informativa del conteo de
    isometrías y las cotas inferiores con el número de qubits de
    SelectSwap en esa λ.
    """
    if min(N, b, K) < 1 or not 0 < epsilon < 1:
        raise ParameterError("Parámetros de la tabla fuera de rango")
    lambdas = sorted(set(lambdas)) or [1]
    if lambdas[0] < 1 or lambdas[-1] > N:
        raise ParameterError(f"λ fuera de [1, {N}]")

    filas = [select_row(N, b), swap_row(N, b)]
    for lam in lambdas:
        filas.append(selectswap_row(N, b, lam))
        filas.append(selectswap_dirty_row(N, b, lam))

    optima = optimal_lambda(N, b)
    fila_optima = selectswap_row(N, b, optima)
    filas.append(fila_optima.model_copy(update={
        "operation": "optimal_lambda", "note": "mínimo de 4⌈N/λ⌉ + 8bλ"}))

    for lam in lambdas:
        filas.extend(preparation_rows(N, K, epsilon, lam))

    filas.append(CostRow(
        operation="isometry_count", source=COTA,
        note=f"log2 #isometrías ≈ K·N·log2(1/ε) = "
             f"{K * N * math.log2(1 / epsilon):.1f}"))
    filas.extend(bound_rows(N, b, epsilon, fila_optima.qubits))
    return filas

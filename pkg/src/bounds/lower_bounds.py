"""
Cotas inferiores de T por conteo de circuitos

Un circuito Clifford+T de q qubits y Γ puertas T distingue a lo sumo
4^{qΓ + c·q²} funciones o estados. Cada cota despeja el menor Γ entero
que alcanza el número de objetos a sintetizar.
"""
from src.models.bounds import BoundQuery, BoundResult
from src.utils.errors import ParameterError

from typing import List
from fractions import Fraction

import math
import logging

logger = logging.getLogger(__name__)

MEASUREMENT_NOTE = (
    "El conteo 4·4^{Γ(Γ+n)} frente a √N·ε^{-(N-1)} estados da "
    "Ω(√(N log(1/ε))); la forma Ω(√(N log N log(1/ε))) no se sigue de este "
    "conteo")


def lookup_lower_bound(query: BoundQuery) -> int:
    """Menor Γ con 2^{bN} ≤ 4^{qΓ + c·q²}"""
    q = query.q
    numerador = Fraction(query.b * query.N, 2) - \
        Fraction(query.c_clifford) * q * q
    return max(0, math.ceil(numerador / q))


def _log2_estados(N: int, epsilon: float) -> float:
    """log2 de √N·ε^{-(N-1)}"""
    return (N - 1) * math.log2(1 / epsilon) + math.log2(N) / 2


def stateprep_lower_bound(query: BoundQuery) -> int:
    """Menor Γ con √N·ε^{-(N-1)} ≤ 4^{qΓ + c·q²}"""
    q = query.q
    numerador = _log2_estados(query.N, query.epsilon) / 2 - \
        query.c_clifford * q * q
    return max(0, math.ceil(numerador / q))


def _cumple_medida(gamma: int, n: int, L: float) -> bool:
    return 2 + 2 * gamma * (gamma + n) >= L


def measurement_assisted_lower_bound(N: int, epsilon: float) -> int:
    """
    Menor Γ con 4·4^{Γ(Γ+n)} ≥ √N·ε^{-(N-1)}, n = log2 N

    Fórmula cuadrática y ajuste de una unidad contra la desigualdad.
    """
    if N < 1 or N & (N - 1):
        raise ParameterError(f"N={N} no es potencia de dos")
    if not 0 < epsilon < 1:
        raise ParameterError("ε debe estar en (0, 1)")
    n = N.bit_length() - 1
    L = _log2_estados(N, epsilon)
    if L <= 2:
        return 0
    # Γ² + nΓ − (L−2)/2 ≥ 0
    gamma = max(0, math.ceil((-n + math.sqrt(n * n + 2 * (L - 2))) / 2))
    while gamma > 0 and _cumple_medida(gamma - 1, n, L):
        gamma -= 1
    while not _cumple_medida(gamma, n, L):
        gamma += 1
    return gamma


def evaluate_bounds(query: BoundQuery) -> List[BoundResult]:
    """Las tres cotas con sus desigualdades"""
    resultados = [
        BoundResult(
            name="lookup",
            value=lookup_lower_bound(query),
            formula="2^{bN} ≤ 4^{qΓ + c·q²}"),
        BoundResult(
            name="stateprep",
            value=stateprep_lower_bound(query),
            formula="√N·ε^{-(N-1)} ≤ 4^{qΓ + c·q²}"),
    ]
    if query.N & (query.N - 1) == 0:
        resultados.append(BoundResult(
            name="measurement_assisted",
            value=measurement_assisted_lower_bound(query.N, query.epsilon),
            formula="√N·ε^{-(N-1)} ≤ 4·4^{Γ(Γ+n)}",
            note=MEASUREMENT_NOTE))
    else:
        logger.warning(f"N={query.N} no es potencia de dos: se omite la "
                       f"cota con medidas")
    return resultados

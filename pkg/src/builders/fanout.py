"""
CNOT multi-objetivo sin ancillas

- linear: n CX desde el control, profundidad n.
- logarithmic: árbol de difusión D; circuito D†·CX(c, t_1)·D con
  profundidad 2⌈log2 n⌉+1 y 2n−1 CX.
- tree_reuse: grupos logarítmicos cuyo CX central desde el control ocupa
  las capas 1..d, con d mínimo tal que n(d) ≥ n.
"""
from src.models.circuit import Circuit, RegisterRole
from src.models.strategies import FanoutStrategy
from src.circuits.builder import CircuitBuilder
from src.utils.errors import ParameterError

from typing import List, Sequence, Tuple

import logging

logger = logging.getLogger(__name__)


def _capacidad_grupo(s: int, d: int) -> int:
    """Objetivos del grupo s en un fanout de profundidad d"""
    return 1 << min(s - 1, d - s)


def fanout_capacity(d: int) -> int:
    """n(d): objetivos máximos con profundidad d (recurrencia de grupos)"""
    if d < 1:
        return 0
    return sum(_capacidad_grupo(s, d) for s in range(1, d + 1))


def fanout_capacity_closed(d: int) -> int:
    """Forma cerrada de n(d): 3·2^{(d−1)/2}−2 (d impar), 2(2^{d/2}−1) (par)"""
    if d < 1:
        return 0
    if d % 2:
        return 3 * (1 << ((d - 1) // 2)) - 2
    return 2 * ((1 << (d // 2)) - 1)


def fanout_depth_bound(n: int) -> int:
    """⌈2·log2((n+2)/2)⌉ en aritmética entera: menor d con 4·2^d ≥ (n+2)²"""
    if n < 1:
        raise ParameterError("El fanout necesita al menos un objetivo")
    d = 0
    while 4 * (1 << d) < (n + 2) ** 2:
        d += 1
    return d


def tree_reuse_depth(n: int) -> int:
    """Menor d con n(d) ≥ n"""
    d = 1
    while fanout_capacity(d) < n:
        d += 1
    return d


def _difusion(objetivos: Sequence[int]) -> List[Tuple[int, int]]:
    """Rondas de copia t_1..t_{2^r} → bloque siguiente, en orden"""
    pares = []
    copiados = 1
    while copiados < len(objetivos):
        for i in range(min(copiados, len(objetivos) - copiados)):
            pares.append((objetivos[i], objetivos[copiados + i]))
        copiados *= 2
    return pares


def emit_fanout(
    builder: CircuitBuilder,
    control: int,
    targets: Sequence[int],
    strategy: FanoutStrategy = FanoutStrategy.LOGARITHMIC
):
    """Aplica X a cada objetivo controlado por control"""
    targets = list(targets)
    if not targets:
        return
    strategy = FanoutStrategy(strategy)

    if strategy == FanoutStrategy.LINEAR or len(targets) == 1:
        for t in targets:
            builder.cx(control, t)
        return

    if strategy == FanoutStrategy.LOGARITHMIC:
        _emit_logarithmic(builder, control, targets)
        return

    d = tree_reuse_depth(len(targets))
    inicio = 0
    for s in range(1, d + 1):
        grupo = targets[inicio:inicio + _capacidad_grupo(s, d)]
        inicio += len(grupo)
        if grupo:
            _emit_logarithmic(builder, control, grupo)


def _emit_logarithmic(
    builder: CircuitBuilder,
    control: int,
    targets: Sequence[int]
):
    difusion = _difusion(targets)
    for a, b in reversed(difusion):
        builder.cx(a, b)
    builder.cx(control, targets[0])
    for a, b in difusion:
        builder.cx(a, b)


def build_fanout(
    n: int,
    strategy: FanoutStrategy = FanoutStrategy.LOGARITHMIC
) -> Circuit:
    """CNOT_n: un control y n objetivos"""
    if n < 1:
        raise ParameterError("El fanout necesita al menos un objetivo")
    builder = CircuitBuilder()
    (control,) = builder.add_register("control", 1, RegisterRole.CONTROL)
    objetivos = builder.add_register("targets", n, RegisterRole.OUTPUT)
    emit_fanout(builder, control, objetivos, strategy)
    circuito = builder.build()
    logger.info(f"Fanout {FanoutStrategy(strategy).value} n={n}: "
                f"{len(circuito.gates)} CX")
    return circuito

"""
Expansión de macros (CCX, CSWAP, AND, AND†, RCCX) a puertas base

- seven_t: Toffoli exacta de 7 T y profundidad T 4.
- relphase_four_t: Toffoli de fase relativa con 4 puertas G (un −1 en la
  entrada |a=1, b=0, t=1⟩), autoinversa y sin fase global.
- and_gadget_measured: AND con 4 T sobre objetivo limpio y descomputación
  por medida en base X más CZ clásicamente controlada (0 T).
"""
from src.models.strategies import ToffoliStrategy
from src.models.resources import CostModel
from src.utils.errors import ConfigurationError
from src.models.gate import Gate, GateKind, MACROS
from src.models.circuit import Circuit

from typing import Dict, List, Optional, Set

import logging

logger = logging.getLogger(__name__)


def _g(kind: GateKind, *qubits: int, **kwargs) -> Gate:
    return Gate.construir(kind, qubits, **kwargs)


def toffoli_seven_t(c: int, a: int, t: int) -> List[Gate]:
    """CCX exacta: polinomio de fase 4cat con 7 T"""
    return [
        _g(GateKind.H, t),
        _g(GateKind.T, c), _g(GateKind.T, a), _g(GateKind.T, t),
        _g(GateKind.CX, c, a), _g(GateKind.CX, a, t),
        _g(GateKind.TDG, a), _g(GateKind.T, t),
        _g(GateKind.CX, c, a), _g(GateKind.CX, c, t),
        _g(GateKind.TDG, t),
        _g(GateKind.CX, a, t), _g(GateKind.CX, c, t),
        _g(GateKind.TDG, t),
        _g(GateKind.CX, c, t),
        _g(GateKind.H, t),
    ]


def toffoli_relative_phase(a: int, b: int, t: int) -> List[Gate]:
    """Toffoli salvo un −1 en |a=1, b=0, t=1⟩ (4 puertas G)"""
    return [
        _g(GateKind.GDG, t), _g(GateKind.CX, b, t),
        _g(GateKind.GDG, t), _g(GateKind.CX, a, t),
        _g(GateKind.G, t), _g(GateKind.CX, b, t),
        _g(GateKind.G, t),
    ]


def and_uncompute_measured(a: int, b: int, t: int, cbit: str) -> List[Gate]:
    """Devuelve t = a∧b a |0⟩ midiendo en base X; corrige la fase con CZ"""
    return [
        _g(GateKind.H, t),
        _g(GateKind.MZ, t, cbit=cbit),
        _g(GateKind.CZ, a, b, condition=cbit),
        _g(GateKind.X, t, condition=cbit),
    ]


class _NombresBits:
    """Genera nombres de bits clásicos que no colisionan con los existentes"""

    def __init__(self, usados: Set[str]):
        self.usados = set(usados)
        self.contador = 0

    def nuevo(self) -> str:
        while f"m{self.contador}" in self.usados:
            self.contador += 1
        nombre = f"m{self.contador}"
        self.usados.add(nombre)
        return nombre


def _estrategia(
    kind: GateKind,
    model: CostModel,
    policy: Dict[str, str]
) -> ToffoliStrategy:
    etiqueta = policy.get(kind.value)
    if etiqueta is None:
        return model.toffoli_strategy
    try:
        return ToffoliStrategy(etiqueta)
    except ValueError:
        raise ConfigurationError(
            f"Estrategia desconocida para {kind.value}: {etiqueta}")


def _toffoli(strategy: ToffoliStrategy, a: int, b: int, t: int) -> List[Gate]:
    if strategy == ToffoliStrategy.RELPHASE_FOUR_T:
        return toffoli_relative_phase(a, b, t)
    return toffoli_seven_t(a, b, t)


def expand_gate(
    gate: Gate,
    strategy: ToffoliStrategy,
    measured_uncompute: bool,
    nombres: Optional[_NombresBits] = None
) -> List[Gate]:
    """Expande una macro con la estrategia dada"""
    kind = gate.kind
    if kind not in MACROS:
        return [gate]

    a, b, t = gate.qubits
    if kind == GateKind.RCCX:
        return toffoli_relative_phase(a, b, t)
    if kind == GateKind.CCX:
        return _toffoli(strategy, a, b, t)
    if kind == GateKind.CSWAP:
        # CSWAP(c; p, r) = CX(r→p) · CCX(c, p → r) · CX(r→p)
        c, p, r = gate.qubits
        return ([_g(GateKind.CX, r, p)] + _toffoli(strategy, c, p, r)
                + [_g(GateKind.CX, r, p)])
    if kind == GateKind.AND:
        if strategy == ToffoliStrategy.SEVEN_T:
            return toffoli_seven_t(a, b, t)
        return toffoli_relative_phase(a, b, t)
    if kind == GateKind.AND_DAG:
        if strategy == ToffoliStrategy.SEVEN_T:
            return toffoli_seven_t(a, b, t)
        if (strategy == ToffoliStrategy.AND_GADGET_MEASURED
                and measured_uncompute):
            nombres = nombres or _NombresBits(set())
            return and_uncompute_measured(a, b, t, nombres.nuevo())
        return toffoli_relative_phase(a, b, t)

    raise ConfigurationError(f"Macro sin expansión: {kind.value}")


def expand_macros(
    circuit: Circuit,
    model: Optional[CostModel] = None
) -> Circuit:
    """
    Sustituye cada macro por su red de puertas base

    La política de macros del circuito tiene prioridad sobre la estrategia
    del modelo de costes. Un circuito ya expandido se devuelve tal cual.
    """
    if not circuit.tiene_macros():
        return circuit

    model = model or CostModel()
    for clave in circuit.macro_policy:
        if clave not in {k.value for k in MACROS}:
            raise ConfigurationError(f"Política para macro desconocida: "
                                     f"{clave}")

    usados = {g.cbit for g in circuit.gates if g.cbit}
    nombres = _NombresBits(usados)
    expandidas: List[Gate] = []
    for gate in circuit.gates:
        if gate.kind not in MACROS:
            expandidas.append(gate)
            continue
        strategy = _estrategia(gate.kind, model, circuit.macro_policy)
        expandidas.extend(expand_gate(
            gate, strategy, model.uncompute_free_via_measurement, nombres))

    logger.debug(f"Macros expandidas: {len(circuit.gates)} -> "
                 f"{len(expandidas)} puertas")
    return circuit.with_gates(expandidas)

from src.models.gate import CLIFFORD_1Q, CLIFFORD_2Q, T_LIKE, GateKind
from src.models.resources import CostModel, ResourceReport
from src.models.circuit import Circuit, RegisterRole
from src.circuits.macros import expand_macros

from typing import Dict, List, Optional

import logging

logger = logging.getLogger(__name__)


def _peso_clifford(kind: GateKind) -> int:
    # Clifford de dos qubits y cada inyección T: una capa
    return 1 if kind in CLIFFORD_2Q or kind in T_LIKE else 0


def _peso_t(kind: GateKind) -> int:
    return 1 if kind in T_LIKE else 0


def asap_depths(circuit: Circuit) -> Dict[str, int]:
    """
    Profundidades T y Clifford por planificación lo antes posible

    Cada qubit y cada bit clásico guarda el instante en que queda libre;
    una puerta empieza en el máximo de sus operandos (y de su bit de
    control clásico) y suma su peso.
    """
    n = circuit.num_qubits
    libre_c: List[int] = [0] * n
    libre_t: List[int] = [0] * n
    bits_c: Dict[str, int] = {}
    bits_t: Dict[str, int] = {}

    for gate in circuit.gates:
        inicio_c = max(libre_c[q] for q in gate.qubits)
        inicio_t = max(libre_t[q] for q in gate.qubits)
        if gate.condition is not None:
            inicio_c = max(inicio_c, bits_c.get(gate.condition, 0))
            inicio_t = max(inicio_t, bits_t.get(gate.condition, 0))
        fin_c = inicio_c + _peso_clifford(gate.kind)
        fin_t = inicio_t + _peso_t(gate.kind)
        for q in gate.qubits:
            libre_c[q] = fin_c
            libre_t[q] = fin_t
        if gate.kind == GateKind.MZ:
            bits_c[gate.cbit] = fin_c
            bits_t[gate.cbit] = fin_t

    return {
        't_depth': max(libre_t, default=0),
        'clifford_depth': max(libre_c, default=0),
    }


def resource_report(
    circuit: Circuit,
    model: Optional[CostModel] = None
) -> ResourceReport:
    """Recuentos y profundidades sobre el circuito con macros expandidas"""
    model = model or CostModel()
    expandido = expand_macros(circuit, model)

    t_count = 0
    clifford_count = 0
    rz_count = 0
    rz_t_budget = 0
    medidas = 0
    for gate in expandido.gates:
        kind = gate.kind
        if kind in T_LIKE:
            t_count += 1
        elif kind in CLIFFORD_1Q or kind in CLIFFORD_2Q:
            clifford_count += 1
        elif kind == GateKind.RZ:
            rz_count += 1
            rz_t_budget += model.rz_t_cost(
                gate.epsilon if gate.epsilon is not None
                else model.rz_epsilon)
        elif kind == GateKind.MZ:
            medidas += 1

    profundidades = asap_depths(expandido)
    total = expandido.num_qubits
    sucios = sum(
        r.width for r in expandido.registers.por_papel(RegisterRole.DIRTY))

    return ResourceReport(
        t_count=t_count,
        t_depth=profundidades['t_depth'],
        clifford_count=clifford_count,
        clifford_depth=profundidades['clifford_depth'],
        qubits_total=total,
        qubits_clean=total - sucios,
        qubits_dirty=sucios,
        rz_count=rz_count,
        rz_t_budget=rz_t_budget,
        measurement_count=medidas,
        gate_count=len(expandido.gates),
    )

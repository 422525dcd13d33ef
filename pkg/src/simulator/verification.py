"""
Comprobaciones de oráculos sobre estados base

Cada comprobación recorre las entradas del índice y exige que el
circuito devuelva un único estado base con los registros esperados. Los
circuitos sin H ni G se simulan con el simulador reversible (sin límite
denso); el resto con el vector de estado.
"""
from src.simulator.registers import basis_index, register_values, support
from src.simulator.statevector import StatevectorSimulator
from src.simulator.reversible import ReversibleSimulator
from src.models.simulation import VerificationRecord
from src.models.circuit import Circuit, RegisterRole
from src.utils.errors import SimulationError
from src.models.lookup import DataTable
from src.models.gate import GateKind

from typing import Dict, Iterable, Optional

import numpy as np
import logging

logger = logging.getLogger(__name__)

_NO_CLASICAS = frozenset({GateKind.H, GateKind.G, GateKind.GDG})

# Registros limpios que los oráculos con basura no devuelven a cero
_BASURA = frozenset({"garbage"})


def is_reversible(circuit: Circuit) -> bool:
    """True si el simulador reversible puede ejecutar el circuito"""
    return not any(g.kind in _NO_CLASICAS for g in circuit.gates)


def basis_output(
    circuit: Circuit,
    assignment: Dict[str, int],
    simulator: Optional[StatevectorSimulator] = None
) -> Optional[Dict[str, int]]:
    """
    Valores de los registros tras aplicar el circuito a un estado base

    Devuelve None si alguna rama no termina en un único estado base o si
    las ramas discrepan.
    """
    if is_reversible(circuit):
        try:
            valores, _ = ReversibleSimulator().run_registers(
                circuit, assignment)
        except SimulationError as e:
            logger.warning(f"Simulación reversible fallida: {e}")
            return None
        return valores

    simulator = simulator or StatevectorSimulator()
    simulator.comprobar_limite(circuit)
    inicial = np.zeros(1 << circuit.num_qubits, dtype=np.complex128)
    inicial[basis_index(circuit, assignment)] = 1
    salida = None
    for rama in simulator.run_branches(circuit, inicial):
        soporte = support(rama.amplitudes, simulator.tolerance)
        if len(soporte) != 1:
            return None
        valores = register_values(circuit, soporte[0][0])
        if salida is not None and valores != salida:
            return None
        salida = valores
    return salida


def _limpios(circuit: Circuit) -> Iterable[str]:
    return [r.name for r in circuit.registers.por_papel(RegisterRole.CLEAN)
            if r.name not in _BASURA]


def verify_lookup(
    circuit: Circuit,
    table: DataTable,
    simulator: Optional[StatevectorSimulator] = None
) -> VerificationRecord:
    """out = a_x, índice intacto y limpios a cero para cada x < N"""
    fallos = []
    limpios = _limpios(circuit)
    for x in range(table.N):
        valores = basis_output(circuit, {"x": x}, simulator)
        if valores is None:
            fallos.append({"x": x, "motivo": "no es un estado base"})
            continue
        if valores["x"] != x or valores["out"] != table.entries[x]:
            fallos.append({"x": x, "out": valores["out"],
                           "esperado": table.entries[x]})
            continue
        sucios = [n for n in limpios if valores[n]]
        if sucios:
            fallos.append({"x": x, "registros_no_limpios": sucios})

    metodo = "reversible" if is_reversible(circuit) else "statevector"
    logger.info(f"Consulta verificada ({metodo}): {table.N} índices, "
                f"{len(fallos)} fallos")
    return VerificationRecord(
        passed=not fallos,
        method=metodo,
        max_deviation=0.0 if not fallos else 1.0,
        checks=table.N,
        details={"fallos": fallos[:16]},
    )


def verify_fanout(
    circuit: Circuit,
    samples: int = 256,
    seed: int = 0,
    exhaustive_limit: int = 10
) -> VerificationRecord:
    """targets ⊕= control sobre todas las entradas (o una muestra)"""
    n = len(circuit.qubits("targets"))
    if n <= exhaustive_limit:
        entradas = [(c, t) for c in (0, 1) for t in range(1 << n)]
    else:
        rng = np.random.default_rng(seed)
        entradas = [(int(rng.integers(0, 2)),
                     int.from_bytes(rng.bytes((n + 7) // 8), "little")
                     & ((1 << n) - 1))
                    for _ in range(samples)]
    mascara = (1 << n) - 1
    fallos = 0
    for c, t in entradas:
        valores = basis_output(circuit, {"control": c, "targets": t})
        if valores is None or valores["control"] != c or \
                valores["targets"] != t ^ (mascara if c else 0):
            fallos += 1
    return VerificationRecord(
        passed=fallos == 0,
        method="reversible",
        max_deviation=0.0 if fallos == 0 else 1.0,
        checks=len(entradas),
        details={"fallos": fallos, "exhaustiva": n <= exhaustive_limit},
    )


def verify_swap_network(
    circuit: Circuit,
    N: int,
    b: int,
    trials: int = 4,
    seed: int = 0,
    simulator: Optional[StatevectorSimulator] = None
) -> VerificationRecord:
    """Para cada x la carga del registro x llega al registro 0"""
    fallos = []
    casos = 0
    for prueba in range(trials):
        rng = np.random.default_rng([seed, prueba])
        cargas = [int(v) for v in rng.integers(0, 1 << b, size=N)]
        for x in range(N):
            asignacion = {"x": x}
            asignacion.update({f"reg{i}": v for i, v in enumerate(cargas)})
            valores = basis_output(circuit, asignacion, simulator)
            casos += 1
            if valores is None or valores["x"] != x or \
                    valores["reg0"] != cargas[x]:
                fallos.append({"x": x, "prueba": prueba})

    return VerificationRecord(
        passed=not fallos,
        method="reversible" if is_reversible(circuit) else "statevector",
        max_deviation=0.0 if not fallos else 1.0,
        checks=casos,
        details={"fallos": fallos[:16]},
    )

from src.utils.errors import QubitLimitError, SimulationError
from src.models.circuit import Circuit
from src.models.gate import GateKind

from typing import Dict, List, Optional, Tuple
from fractions import Fraction

import logging

logger = logging.getLogger(__name__)

_FASE_UNO = {
    GateKind.Z: Fraction(1, 2),
    GateKind.S: Fraction(1, 4),
    GateKind.SDG: Fraction(3, 4),
    GateKind.T: Fraction(1, 8),
    GateKind.TDG: Fraction(7, 8),
}

_NO_CLASICAS = frozenset({GateKind.H, GateKind.G, GateKind.GDG})


class ReversibleSimulator:
    """
    Simulación exacta de estados base a nivel de macros

    Cubre los circuitos formados por permutaciones y puertas diagonales
    (X, CX, CCX, CSWAP, AND, RCCX, fases); la fase se acumula en vueltas
    racionales. H y G no mandan estados base a estados base y se rechazan.
    Sirve para verificar oráculos con más qubits de los que admite el
    simulador denso.
    """

    def __init__(self, qubit_limit: Optional[int] = 4096):
        self.qubit_limit = qubit_limit

    def run(
        self,
        circuit: Circuit,
        bits: List[int]
    ) -> Tuple[List[int], Fraction, Dict[str, int]]:
        """
        Aplica el circuito a un estado base

        Args:
            circuit: Circuito sin H ni G
            bits: Valor de cada qubit

        Returns:
            Bits finales, fase en vueltas y bits clásicos medidos
        """
        if self.qubit_limit is not None and \
                circuit.num_qubits > self.qubit_limit:
            raise QubitLimitError(
                f"{circuit.num_qubits} qubits superan el límite "
                f"{self.qubit_limit}")
        if len(bits) != circuit.num_qubits:
            raise SimulationError("Número de bits distinto al de qubits")

        b = list(bits)
        fase = Fraction(0)
        clasicos: Dict[str, int] = {}

        for gate in circuit.gates:
            if gate.condition is not None:
                if gate.condition not in clasicos:
                    raise SimulationError(
                        f"Bit clásico no definido: {gate.condition}")
                if not clasicos[gate.condition]:
                    continue
            fase += self.__aplicar(gate, b, clasicos)

        return b, fase % 1, clasicos

    def run_registers(
        self,
        circuit: Circuit,
        assignment: Dict[str, int]
    ) -> Tuple[Dict[str, int], Fraction]:
        """Versión por registros: valores little-endian de entrada y salida"""
        bits = [0] * circuit.num_qubits
        for nombre, valor in assignment.items():
            qubits = circuit.qubits(nombre)
            if valor >> len(qubits):
                raise SimulationError(
                    f"{valor} no cabe en el registro {nombre}")
            for i, q in enumerate(qubits):
                bits[q] = (valor >> i) & 1
        finales, fase, _ = self.run(circuit, bits)
        valores = {
            r.name: sum(finales[q] << i for i, q in enumerate(r.qubits))
            for r in circuit.registers.registers
        }
        return valores, fase

    def __aplicar(
        self,
        gate,
        b: List[int],
        clasicos: Dict[str, int]
    ) -> Fraction:
        kind = gate.kind
        q = gate.qubits

        if kind in _NO_CLASICAS:
            raise SimulationError(
                f"{kind.value} no es una puerta clásica reversible")
        if kind in _FASE_UNO:
            return _FASE_UNO[kind] if b[q[0]] else Fraction(0)
        if kind == GateKind.RZ:
            return gate.angle if b[q[0]] else Fraction(0)
        if kind == GateKind.X:
            b[q[0]] ^= 1
            return Fraction(0)
        if kind == GateKind.Y:
            # Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
            fase = Fraction(3, 4) if b[q[0]] else Fraction(1, 4)
            b[q[0]] ^= 1
            return fase
        if kind == GateKind.CX:
            b[q[1]] ^= b[q[0]]
            return Fraction(0)
        if kind == GateKind.CZ:
            return Fraction(1, 2) if b[q[0]] and b[q[1]] else Fraction(0)
        if kind == GateKind.CCX:
            b[q[2]] ^= b[q[0]] & b[q[1]]
            return Fraction(0)
        if kind == GateKind.CSWAP:
            if b[q[0]]:
                b[q[1]], b[q[2]] = b[q[2]], b[q[1]]
            return Fraction(0)
        if kind == GateKind.RCCX:
            if b[q[0]] and b[q[1]]:
                b[q[2]] ^= 1
            elif b[q[0]] and b[q[2]]:
                return Fraction(1, 2)
            return Fraction(0)
        if kind == GateKind.AND:
            if b[q[2]]:
                raise SimulationError(
                    f"AND sobre objetivo no limpio (qubit {q[2]})")
            b[q[2]] = b[q[0]] & b[q[1]]
            return Fraction(0)
        if kind == GateKind.AND_DAG:
            if b[q[2]] != (b[q[0]] & b[q[1]]):
                raise SimulationError(
                    f"AND† con objetivo distinto de a∧b (qubit {q[2]})")
            b[q[2]] = 0
            return Fraction(0)
        if kind == GateKind.MZ:
            clasicos[gate.cbit] = b[q[0]]
            return Fraction(0)
        raise SimulationError(f"Puerta no soportada: {kind.value}")

from src.models.circuit import Circuit, Register, RegisterMap, RegisterRole
from src.models.gate import Gate, GateKind

from typing import Any, Dict, Iterable, List, Optional
from fractions import Fraction

import logging

logger = logging.getLogger(__name__)

# Múltiplos de 1/8 de vuelta como puertas Clifford+T
_FASES_CLIFFORD_T = {
    0: (),
    1: (GateKind.T,),
    2: (GateKind.S,),
    3: (GateKind.S, GateKind.T),
    4: (GateKind.Z,),
    5: (GateKind.Z, GateKind.T),
    6: (GateKind.SDG,),
    7: (GateKind.TDG,),
}

_INVERSAS = {
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
    GateKind.T: GateKind.TDG,
    GateKind.TDG: GateKind.T,
    GateKind.G: GateKind.GDG,
    GateKind.GDG: GateKind.G,
    GateKind.AND: GateKind.AND_DAG,
    GateKind.AND_DAG: GateKind.AND,
}


def invert_gates(gates: Iterable[Gate]) -> List[Gate]:
    """
    Inversa exacta de una secuencia sin medidas

    Invierte el orden, intercambia S/S†, T/T†, G/G† y AND/AND†, y niega
    los ángulos de RZ. El resto de puertas (incluidas CCX, CSWAP y la
    Toffoli de fase relativa) son autoinversas.
    """
    inversa = []
    for gate in reversed(list(gates)):
        if gate.kind == GateKind.MZ or gate.condition is not None:
            raise ValueError(
                "No se puede invertir un circuito con medidas o control "
                "clásico")
        if gate.kind == GateKind.RZ:
            inversa.append(Gate.construir(
                GateKind.RZ, gate.qubits, angle=-gate.angle,
                epsilon=gate.epsilon))
        elif gate.kind in _INVERSAS:
            inversa.append(Gate.construir(_INVERSAS[gate.kind], gate.qubits))
        else:
            inversa.append(gate)
    return inversa


def invert_circuit(circuit: Circuit) -> Circuit:
    """Circuito inverso, sobre los mismos registros"""
    return circuit.with_gates(invert_gates(circuit.gates))


class CircuitBuilder:
    """Acumula registros y puertas y produce un Circuit inmutable"""

    def __init__(self):
        self._registros: List[Register] = []
        self._puertas: List[Gate] = []
        self._bits_clasicos = 0
        self.metadata: Dict[str, Any] = {}

    # Registros

    @property
    def num_qubits(self) -> int:
        if not self._registros:
            return 0
        return self._registros[-1].stop

    def add_register(
        self,
        name: str,
        width: int,
        role: RegisterRole
    ) -> List[int]:
        """Añade un registro al final del rango y devuelve sus qubits"""
        registro = Register(
            name=name, start=self.num_qubits, width=width, role=role)
        if any(r.name == name for r in self._registros):
            raise ValueError(f"Registro duplicado: {name}")
        self._registros.append(registro)
        return registro.qubits

    def qubits(self, name: str) -> List[int]:
        for registro in self._registros:
            if registro.name == name:
                return registro.qubits
        raise KeyError(f"No existe el registro {name}")

    # Puertas

    def add(
        self,
        kind: GateKind,
        *qubits: int,
        angle: Optional[Fraction] = None,
        cbit: Optional[str] = None,
        condition: Optional[str] = None,
        epsilon: Optional[float] = None
    ):
        self._puertas.append(Gate.construir(
            kind, qubits, angle=angle, cbit=cbit, condition=condition,
            epsilon=epsilon))

    def extend(self, gates: Iterable[Gate]):
        self._puertas.extend(gates)

    def x(self, q: int):
        self.add(GateKind.X, q)

    def z(self, q: int):
        self.add(GateKind.Z, q)

    def h(self, q: int):
        self.add(GateKind.H, q)

    def s(self, q: int):
        self.add(GateKind.S, q)

    def sdg(self, q: int):
        self.add(GateKind.SDG, q)

    def t(self, q: int):
        self.add(GateKind.T, q)

    def tdg(self, q: int):
        self.add(GateKind.TDG, q)

    def g(self, q: int):
        self.add(GateKind.G, q)

    def gdg(self, q: int):
        self.add(GateKind.GDG, q)

    def cx(self, control: int, target: int):
        self.add(GateKind.CX, control, target)

    def cz(self, a: int, b: int):
        self.add(GateKind.CZ, a, b)

    def rz(self, q: int, turns, epsilon: Optional[float] = None):
        self.add(GateKind.RZ, q, angle=Fraction(turns), epsilon=epsilon)

    def ccx(self, a: int, b: int, target: int):
        self.add(GateKind.CCX, a, b, target)

    def cswap(self, control: int, p: int, r: int):
        self.add(GateKind.CSWAP, control, p, r)

    def and_(self, a: int, b: int, target: int):
        """target (limpio) ← a∧b"""
        self.add(GateKind.AND, a, b, target)

    def and_dag(self, a: int, b: int, target: int):
        """Descomputa target = a∧b y lo devuelve a |0⟩"""
        self.add(GateKind.AND_DAG, a, b, target)

    def rccx(self, a: int, b: int, target: int):
        self.add(GateKind.RCCX, a, b, target)

    def mz(self, q: int, cbit: Optional[str] = None) -> str:
        if cbit is None:
            cbit = f"c{self._bits_clasicos}"
            self._bits_clasicos += 1
        self.add(GateKind.MZ, q, cbit=cbit)
        return cbit

    def phase(self, q: int, turns, epsilon: Optional[float] = None):
        emit_phase(self, q, turns, epsilon=epsilon)

    # Marcas para computar / descomputar

    def mark(self) -> int:
        return len(self._puertas)

    def gates_since(self, mark: int) -> List[Gate]:
        return list(self._puertas[mark:])

    def build(
        self,
        macro_policy: Optional[Dict[str, str]] = None
    ) -> Circuit:
        circuito = Circuit(
            registers=RegisterMap(registers=tuple(self._registros)),
            gates=tuple(self._puertas),
            macro_policy=dict(macro_policy or {}),
            metadata=dict(self.metadata),
        )
        logger.debug(f"Circuito construido: {circuito.num_qubits} qubits, "
                     f"{len(circuito.gates)} puertas")
        return circuito


def emit_phase(
    builder: CircuitBuilder,
    q: int,
    turns,
    epsilon: Optional[float] = None
):
    """diag(1, e^{2πi·turns}) con Clifford+T si es múltiplo de 1/8"""
    turns = Fraction(turns) % 1
    octavos = turns * 8
    if octavos.denominator == 1:
        for kind in _FASES_CLIFFORD_T[int(octavos)]:
            builder.add(kind, q)
    else:
        builder.rz(q, turns, epsilon=epsilon)

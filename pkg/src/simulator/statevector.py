from src.utils.errors import QubitLimitError, SimulationError
from src.models.simulation import Branch, StateVector
from src.circuits.macros import expand_macros
from src.models.resources import CostModel
from src.models.gate import Gate, GateKind
from src.config.settings import settings
from src.models.circuit import Circuit

from typing import Dict, List, Optional, Tuple

import numpy as np
import logging

logger = logging.getLogger(__name__)

_SQRT2 = np.sqrt(2)

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / _SQRT2
_S = np.diag([1, 1j]).astype(np.complex128)
_T = np.diag([1, np.exp(1j * np.pi / 4)]).astype(np.complex128)
# G = S†·H·T·H·S
_G = _S.conj().T @ _H @ _T @ _H @ _S

MATRICES = {
    GateKind.X: _X,
    GateKind.Y: _Y,
    GateKind.Z: np.diag([1, -1]).astype(np.complex128),
    GateKind.H: _H,
    GateKind.S: _S,
    GateKind.SDG: _S.conj().T,
    GateKind.T: _T,
    GateKind.TDG: _T.conj().T,
    GateKind.G: _G,
    GateKind.GDG: _G.conj().T,
}

# Fase sobre |1⟩ de las puertas diagonales de un qubit
_FASES = {
    GateKind.Z: -1.0 + 0j,
    GateKind.S: 1j,
    GateKind.SDG: -1j,
    GateKind.T: np.exp(1j * np.pi / 4),
    GateKind.TDG: np.exp(-1j * np.pi / 4),
}


class _Rama:
    """Rama interna: probabilidad, tensor [2]*n y bits clásicos"""

    __slots__ = ("probabilidad", "psi", "bits")

    def __init__(self, probabilidad: float, psi: np.ndarray,
                 bits: Dict[str, Optional[int]]):
        self.probabilidad = probabilidad
        self.psi = psi
        self.bits = bits


class StatevectorSimulator:
    """
    Oráculo denso de vector de estado

    El índice global es big-endian en el número de qubit: el qubit 0 es el
    bit más significativo. Las medidas exploran las dos ramas cuando el
    resultado no es seguro; tras cada puerta con control clásico se
    fusionan las ramas con el mismo estado.
    """

    def __init__(
        self,
        qubit_limit: Optional[int] = None,
        model: Optional[CostModel] = None,
        tolerance: Optional[float] = None
    ):
        self.qubit_limit = qubit_limit
        self.model = model or CostModel()
        self.tolerance = tolerance or settings.STATE_TOLERANCE

    @property
    def limite(self) -> int:
        if self.qubit_limit is not None:
            return self.qubit_limit
        return settings.get_qubit_limit()

    def comprobar_limite(self, circuit: Circuit):
        if circuit.num_qubits > self.limite:
            raise QubitLimitError(
                f"El circuito usa {circuit.num_qubits} qubits; el límite "
                f"del simulador es {self.limite}")

    def simulate(
        self,
        circuit: Circuit,
        initial: StateVector
    ) -> List[Branch]:
        """Aplica el circuito y devuelve las ramas con probabilidad > 0"""
        self.comprobar_limite(circuit)
        if initial.n != circuit.num_qubits:
            raise SimulationError(
                f"Estado de {initial.n} qubits para un circuito de "
                f"{circuit.num_qubits}")
        if circuit.tiene_macros():
            circuit = expand_macros(circuit, self.model)

        n = circuit.num_qubits
        psi = np.array(initial.amplitudes, dtype=np.complex128)
        ramas = [_Rama(1.0, psi.reshape([2] * n) if n else psi, {})]

        for gate in circuit.gates:
            if gate.kind == GateKind.MZ:
                ramas = [r for rama in ramas
                         for r in self.__medir(rama, gate, n)]
                continue
            for rama in ramas:
                if gate.condition is not None:
                    valor = rama.bits.get(gate.condition, "ausente")
                    if valor == "ausente":
                        raise SimulationError(
                            f"Bit clásico no definido: {gate.condition}")
                    if valor is None:
                        raise SimulationError(
                            f"Bit clásico ambiguo: {gate.condition}")
                    if not valor:
                        continue
                rama.psi = self._aplicar(rama.psi, gate, n)
            if gate.condition is not None and len(ramas) > 1:
                ramas = self.__fusionar(ramas)

        return [
            Branch(probability=r.probabilidad,
                   amplitudes=np.ascontiguousarray(r.psi).reshape(-1),
                   bits=dict(r.bits))
            for r in ramas
        ]

    def run(
        self,
        circuit: Circuit,
        amplitudes: np.ndarray
    ) -> np.ndarray:
        """Estado final; exige que todas las ramas se hayan fusionado"""
        ramas = self.run_branches(circuit, amplitudes)
        if len(ramas) != 1:
            raise SimulationError(
                f"La simulación termina con {len(ramas)} ramas distintas")
        return ramas[0].amplitudes

    def run_branches(
        self,
        circuit: Circuit,
        amplitudes: np.ndarray
    ) -> List[Branch]:
        inicial = StateVector(n=circuit.num_qubits, amplitudes=amplitudes)
        return self.simulate(circuit, inicial)

    def unitary(self, circuit: Circuit) -> np.ndarray:
        """Matriz del circuito (sin medidas), columna a columna"""
        dim = 1 << circuit.num_qubits
        columnas = []
        for indice in range(dim):
            base = np.zeros(dim, dtype=np.complex128)
            base[indice] = 1
            columnas.append(self.run(circuit, base))
        return np.stack(columnas, axis=1)

    # Aplicación de puertas

    def _aplicar(self, psi: np.ndarray, gate: Gate, n: int) -> np.ndarray:
        kind = gate.kind
        q = gate.qubits

        if kind in _FASES:
            return _fase(psi, n, (q[0],), _FASES[kind])
        if kind == GateKind.RZ:
            fase = np.exp(2j * np.pi * float(gate.angle))
            return _fase(psi, n, (q[0],), fase)
        if kind == GateKind.X:
            return np.flip(psi, axis=q[0])
        if kind in MATRICES:
            return _matriz(psi, q[0], MATRICES[kind])
        if kind == GateKind.CX:
            return _x_controlada(psi, n, (q[0],), q[1])
        if kind == GateKind.CZ:
            return _fase(psi, n, q, -1.0 + 0j)
        raise SimulationError(f"Puerta no soportada: {kind.value}")

    def __medir(self, rama: _Rama, gate: Gate, n: int) -> List[_Rama]:
        q = gate.qubits[0]
        psi = rama.psi
        idx0 = _indice(n, {q: 0})
        idx1 = _indice(n, {q: 1})
        p1 = float(np.sum(np.abs(psi[idx1]) ** 2))
        p0 = float(np.sum(np.abs(psi[idx0]) ** 2))
        total = p0 + p1
        p0, p1 = p0 / total, p1 / total
        limite = settings.NORM_TOLERANCE

        resultado = []
        for valor, prob, idx_descartado in ((0, p0, idx1), (1, p1, idx0)):
            if prob <= limite:
                continue
            nuevo = np.array(psi, copy=True)
            nuevo[idx_descartado] = 0
            nuevo /= np.sqrt(prob * total)
            bits = dict(rama.bits)
            bits[gate.cbit] = valor
            resultado.append(_Rama(rama.probabilidad * prob, nuevo, bits))
        return resultado

    def __fusionar(self, ramas: List[_Rama]) -> List[_Rama]:
        fusionadas: List[_Rama] = []
        for rama in ramas:
            for destino in fusionadas:
                if np.linalg.norm(destino.psi - rama.psi) <= self.tolerance:
                    destino.probabilidad += rama.probabilidad
                    for clave in set(destino.bits) | set(rama.bits):
                        if destino.bits.get(clave) != rama.bits.get(clave):
                            destino.bits[clave] = None
                    break
            else:
                fusionadas.append(rama)
        return fusionadas


def _indice(n: int, fijos: Dict[int, int]) -> Tuple:
    idx = [slice(None)] * n
    for qubit, valor in fijos.items():
        idx[qubit] = valor
    return tuple(idx)


def _fase(psi: np.ndarray, n: int, qubits: Tuple[int, ...],
          fase: complex) -> np.ndarray:
    """Multiplica por la fase las componentes con todos los qubits a 1"""
    psi[_indice(n, {q: 1 for q in qubits})] *= fase
    return psi


def _matriz(psi: np.ndarray, q: int, matriz: np.ndarray) -> np.ndarray:
    nuevo = np.tensordot(matriz, psi, axes=([1], [q]))
    return np.moveaxis(nuevo, 0, q)


def _x_controlada(psi: np.ndarray, n: int, controles: Tuple[int, ...],
                  objetivo: int) -> np.ndarray:
    idx = _indice(n, {c: 1 for c in controles})
    eje = objetivo - sum(1 for c in controles if c < objetivo)
    psi[idx] = np.flip(psi[idx], axis=eje).copy()
    return psi


def state_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Distancia entre estados alineando la fase global: √(2 − 2|⟨a|b⟩|)"""
    solape = abs(np.vdot(a, b))
    return float(np.sqrt(max(0.0, 2 - 2 * solape)))

from src.models.gate import Gate, GateKind

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Any, Dict, List, Optional, Tuple
from enum import Enum


class RegisterRole(str, Enum):
    """Papel de un registro dentro del circuito"""

    INDEX = "index"
    OUTPUT = "output"
    CLEAN = "workspace-clean"
    DIRTY = "workspace-dirty"
    CONTROL = "control"
    FOURIER = "fourier"
    CLASSICAL = "classical"


class Register(BaseModel):
    """Rango contiguo de qubits con nombre y papel"""

    model_config = ConfigDict(frozen=True)

    name: str = Field(
        ...,
        description="Nombre único del registro"
    )

    start: int = Field(
        ...,
        ge=0,
        description="Primer qubit del registro"
    )

    width: int = Field(
        ...,
        ge=0,
        description="Número de qubits"
    )

    role: RegisterRole = Field(
        ...,
        description="Papel del registro"
    )

    @property
    def qubits(self) -> List[int]:
        """Qubits del registro, el bit menos significativo primero"""
        return list(range(self.start, self.start + self.width))

    @property
    def stop(self) -> int:
        return self.start + self.width


class RegisterMap(BaseModel):
    """Registros del circuito, que cubren sin huecos el rango de qubits"""

    model_config = ConfigDict(frozen=True)

    registers: Tuple[Register, ...] = Field(
        default_factory=tuple,
        description="Registros ordenados por primer qubit"
    )

    @model_validator(mode="after")
    def validar_rango(self):
        siguiente = 0
        nombres = set()
        for registro in self.registers:
            if registro.name in nombres:
                raise ValueError(f"Registro duplicado: {registro.name}")
            nombres.add(registro.name)
            if registro.start != siguiente:
                raise ValueError(
                    f"El registro {registro.name} empieza en "
                    f"{registro.start}, se esperaba {siguiente}")
            siguiente = registro.stop
        return self

    @property
    def num_qubits(self) -> int:
        if not self.registers:
            return 0
        return self.registers[-1].stop

    def get(self, name: str) -> Register:
        for registro in self.registers:
            if registro.name == name:
                return registro
        raise KeyError(f"No existe el registro {name}")

    def registro_de(self, qubit: int) -> Optional[Register]:
        """Registro al que pertenece un qubit"""
        for registro in self.registers:
            if registro.start <= qubit < registro.stop:
                return registro
        return None

    def por_papel(self, role: RegisterRole) -> List[Register]:
        return [r for r in self.registers if r.role == role]

    def qubits_con_papel(self, role: RegisterRole) -> List[int]:
        qubits = []
        for registro in self.por_papel(role):
            qubits.extend(registro.qubits)
        return qubits


class Circuit(BaseModel):
    """Secuencia ordenada de puertas sobre un mapa de registros"""

    model_config = ConfigDict(frozen=True)

    registers: RegisterMap = Field(
        default_factory=RegisterMap,
        description="Mapa de registros"
    )

    gates: Tuple[Gate, ...] = Field(
        default_factory=tuple,
        description="Puertas en orden de aplicación"
    )

    macro_policy: Dict[str, str] = Field(
        default_factory=dict,
        description="Estrategia de descomposición por tipo de macro"
    )

    metadata: Dict[str, Any] = Field(
        default_factory=dict,
        description="Datos auxiliares: exactitud de fase, dominio del índice"
    )

    @property
    def num_qubits(self) -> int:
        return self.registers.num_qubits

    @property
    def phase_exact(self) -> bool:
        """False si el circuito solo es correcto salvo una fase diagonal ±1"""
        return bool(self.metadata.get("phase_exact", True))

    def tiene_macros(self) -> bool:
        return any(g.es_macro for g in self.gates)

    def qubits(self, name: str) -> List[int]:
        return self.registers.get(name).qubits

    def with_gates(self, gates, **cambios) -> "Circuit":
        """Copia del circuito con otra lista de puertas"""
        datos = {
            "registers": self.registers,
            "gates": tuple(gates),
            "macro_policy": dict(self.macro_policy),
            "metadata": dict(self.metadata),
        }
        datos.update(cambios)
        return Circuit(**datos)

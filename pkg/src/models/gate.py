from typing import Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic import model_validator
from fractions import Fraction
from enum import Enum


class GateKind(str, Enum):
    """Tipos de puerta del IR, incluidas las macros"""

    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    S = "S"
    SDG = "Sdg"
    T = "T"
    TDG = "Tdg"
    G = "G"
    GDG = "Gdg"
    RZ = "RZ"
    CX = "CX"
    CZ = "CZ"
    MZ = "MZ"
    # Macros
    CCX = "CCX"
    CSWAP = "CSWAP"
    AND = "AND"
    AND_DAG = "AND_DAG"
    RCCX = "RCCX"


ARIDAD = {
    GateKind.X: 1, GateKind.Y: 1, GateKind.Z: 1, GateKind.H: 1,
    GateKind.S: 1, GateKind.SDG: 1, GateKind.T: 1, GateKind.TDG: 1,
    GateKind.G: 1, GateKind.GDG: 1, GateKind.RZ: 1, GateKind.MZ: 1,
    GateKind.CX: 2, GateKind.CZ: 2,
    GateKind.CCX: 3, GateKind.CSWAP: 3, GateKind.AND: 3,
    GateKind.AND_DAG: 3, GateKind.RCCX: 3,
}

MACROS = frozenset({
    GateKind.CCX, GateKind.CSWAP, GateKind.AND, GateKind.AND_DAG,
    GateKind.RCCX,
})

# Puertas que cuentan como un T (G = S†·H·T·H·S)
T_LIKE = frozenset({GateKind.T, GateKind.TDG, GateKind.G, GateKind.GDG})

CLIFFORD_1Q = frozenset({
    GateKind.X, GateKind.Y, GateKind.Z, GateKind.H, GateKind.S, GateKind.SDG,
})

CLIFFORD_2Q = frozenset({GateKind.CX, GateKind.CZ})

CONDICIONABLES = frozenset({GateKind.X, GateKind.Z, GateKind.CZ})


class Gate(BaseModel):
    """Puerta del circuito: tipo, operandos y parámetros opcionales"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: GateKind = Field(
        ...,
        description="Tipo de puerta"
    )

    qubits: Tuple[int, ...] = Field(
        ...,
        description="Qubits operando; en macros los controles van primero"
    )

    angle: Optional[Fraction] = Field(
        None,
        description="Ángulo de RZ en vueltas, racional en [0, 1)"
    )

    cbit: Optional[str] = Field(
        None,
        description="Bit clásico donde escribe MZ"
    )

    condition: Optional[str] = Field(
        None,
        description="Bit clásico que controla la puerta (X, Z o CZ)"
    )

    epsilon: Optional[float] = Field(
        None,
        description="Error objetivo de síntesis de la RZ"
    )

    @field_validator("angle", mode="before")
    @classmethod
    def normalizar_angulo(cls, v):
        if v is None:
            return None
        return Fraction(v) % 1

    @model_validator(mode="after")
    def validar_puerta(self):
        Gate.comprobar(self.kind, self.qubits, self.angle, self.cbit,
                       self.condition)
        return self

    @staticmethod
    def comprobar(kind, qubits, angle, cbit, condition):
        if len(qubits) != ARIDAD[kind]:
            raise ValueError(
                f"{kind.value} necesita {ARIDAD[kind]} qubits, "
                f"recibió {len(qubits)}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"Operandos repetidos en {kind.value}: {qubits}")
        if any(q < 0 for q in qubits):
            raise ValueError(f"Qubit negativo en {kind.value}: {qubits}")
        if kind == GateKind.RZ and angle is None:
            raise ValueError("RZ sin ángulo")
        if kind != GateKind.RZ and angle is not None:
            raise ValueError(f"{kind.value} no admite ángulo")
        if kind == GateKind.MZ and not cbit:
            raise ValueError("MZ sin bit clásico destino")
        if condition is not None and kind not in CONDICIONABLES:
            raise ValueError(
                f"Solo X, Z y CZ admiten control clásico, no {kind.value}")

    @classmethod
    def construir(
        cls,
        kind: GateKind,
        qubits: Tuple[int, ...],
        angle: Optional[Fraction] = None,
        cbit: Optional[str] = None,
        condition: Optional[str] = None,
        epsilon: Optional[float] = None
    ) -> "Gate":
        """Construcción rápida para los builders (sin pasar por pydantic)"""
        qubits = tuple(qubits)
        cls.comprobar(kind, qubits, angle, cbit, condition)
        if angle is not None:
            angle = Fraction(angle) % 1
        return cls.model_construct(
            kind=kind, qubits=qubits, angle=angle, cbit=cbit,
            condition=condition, epsilon=epsilon)

    @property
    def es_macro(self) -> bool:
        return self.kind in MACROS

    @property
    def es_medida(self) -> bool:
        return self.kind == GateKind.MZ

    def to_text(self) -> str:
        """Línea del formato de texto de circuitos"""
        operandos = " ".join(str(q) for q in self.qubits)
        if self.kind == GateKind.MZ:
            return f"MZ {operandos} -> {self.cbit}"
        if self.condition is not None:
            return f"{self.kind.value}? {self.condition} {operandos}"
        if self.kind == GateKind.RZ:
            angulo = self.angle
            texto = f"RZ {angulo.numerator}/{angulo.denominator} {operandos}"
            if self.epsilon is not None:
                texto += f" eps={self.epsilon!r}"
            return texto
        return f"{self.kind.value} {operandos}"

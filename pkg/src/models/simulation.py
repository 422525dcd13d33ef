from src.models.base_model import TGFBaseModel
from src.config.settings import settings

from pydantic import ConfigDict, Field, field_validator, model_validator
from typing import Any, Dict, List, Literal, Optional

import numpy as np


class StateVector(TGFBaseModel):
    """Vector de estado denso de n qubits (qubit 0 es el bit más alto)"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int = Field(..., ge=0, description="Número de qubits")

    amplitudes: np.ndarray = Field(
        ...,
        description="2^n amplitudes complejas"
    )

    @field_validator("amplitudes", mode="before")
    @classmethod
    def convertir(cls, v):
        return np.asarray(v, dtype=np.complex128).reshape(-1)

    @model_validator(mode="after")
    def validar_norma(self):
        if self.amplitudes.size != 1 << self.n:
            raise ValueError(
                f"Se esperaban {1 << self.n} amplitudes, "
                f"hay {self.amplitudes.size}")
        norma = float(np.linalg.norm(self.amplitudes))
        if abs(norma - 1) > settings.NORM_TOLERANCE:
            raise ValueError(f"Estado no normalizado (norma {norma!r})")
        return self

    @classmethod
    def basis(cls, n: int, index: int = 0) -> "StateVector":
        amplitudes = np.zeros(1 << n, dtype=np.complex128)
        amplitudes[index] = 1
        return cls(n=n, amplitudes=amplitudes)


class Branch(TGFBaseModel):
    """Rama de simulación tras medidas: probabilidad, estado y bits"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    probability: float = Field(..., ge=0, description="Peso de la rama")

    amplitudes: np.ndarray = Field(
        ...,
        description="Estado normalizado de la rama"
    )

    bits: Dict[str, Optional[int]] = Field(
        default_factory=dict,
        description="Bits clásicos; None si difieren entre ramas fusionadas"
    )


class DirtyTrial(TGFBaseModel):
    """Resultado de una prueba de restauración de qubits sucios"""

    mode: Literal["basis", "superposition"] = Field(
        ...,
        description="Inicialización de los registros sucios"
    )

    basis_index: Optional[int] = Field(
        None,
        description="Valor inicial de los qubits sucios (modo basis)"
    )

    seed: Optional[int] = Field(
        None,
        description="Semilla del estado producto aleatorio"
    )

    passed: bool = Field(..., description="Restauración dentro de tolerancia")

    max_deviation: float = Field(
        ...,
        ge=0,
        description="1 − fidelidad del estado reducido de los sucios"
    )


class VerificationRecord(TGFBaseModel):
    """Veredicto de verificación de una ejecución"""

    passed: bool = Field(..., description="PASS/FAIL")

    method: str = Field(
        ...,
        description="Oráculo usado: statevector, reversible o modelo"
    )

    max_deviation: float = Field(
        0.0,
        ge=0,
        description="Mayor desviación encontrada"
    )

    checks: int = Field(0, ge=0, description="Casos comprobados")

    details: Dict[str, Any] = Field(
        default_factory=dict,
        description="Información adicional del oráculo"
    )

    trials: List[DirtyTrial] = Field(
        default_factory=list,
        description="Pruebas de restauración de sucios"
    )

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

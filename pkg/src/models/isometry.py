from src.models.base_model import TGFBaseModel

from pydantic import ConfigDict, Field, field_validator, model_validator
from typing import List

import numpy as np


class IsometrySpec(TGFBaseModel):
    """K columnas ortonormales u_k de dimensión N"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    columns: np.ndarray = Field(
        ...,
        description="Matriz K×N; la fila k es la columna u_k"
    )

    tolerance: float = Field(
        1e-10,
        description="Tolerancia de ortonormalidad"
    )

    @field_validator("columns", mode="before")
    @classmethod
    def convertir(cls, v):
        matriz = np.asarray(v, dtype=complex)
        if matriz.ndim == 1:
            matriz = matriz.reshape(1, -1)
        return matriz

    @model_validator(mode="after")
    def validar_ortonormal(self):
        K, N = self.columns.shape
        if K < 1 or N < 1:
            raise ValueError("Se necesita al menos una columna")
        if K > N:
            raise ValueError(f"K={K} columnas no caben en dimensión {N}")
        gram = self.columns.conj() @ self.columns.T
        desviacion = float(np.max(np.abs(gram - np.eye(K))))
        if desviacion > self.tolerance:
            raise ValueError(
                f"Columnas no ortonormales (desviación {desviacion:.3e})")
        return self

    @property
    def K(self) -> int:
        return int(self.columns.shape[0])

    @property
    def N(self) -> int:
        return int(self.columns.shape[1])

    @property
    def n(self) -> int:
        return (self.N - 1).bit_length()


class ReflectionProgram(TGFBaseModel):
    """Estados |w_k⟩ de las reflexiones y comprobación clásica del producto"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    states: np.ndarray = Field(
        ...,
        description="Matriz K×2N con los |w_k⟩ (ancilla como bit más alto)"
    )

    source_index: int = Field(
        ...,
        description="Estado base fuente |1⟩|0…0⟩ de las preparaciones B_k"
    )

    column_errors: List[float] = Field(
        default_factory=list,
        description="‖W|1,k⟩ − |0,u_k⟩‖ del producto exacto"
    )

    verified: bool = Field(
        False,
        description="El producto de reflexiones mapea |1,k⟩ en |0,u_k⟩"
    )

    @property
    def K(self) -> int:
        return int(self.states.shape[0])

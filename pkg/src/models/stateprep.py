from src.models.base_model import TGFBaseModel

from pydantic import ConfigDict, Field, field_validator, model_validator
from typing import List

import numpy as np


class StateSpec(TGFBaseModel):
    """Amplitudes a_x del estado a preparar (sin normalizar)"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    amplitudes: np.ndarray = Field(
        ...,
        description="N amplitudes complejas"
    )

    @field_validator("amplitudes", mode="before")
    @classmethod
    def convertir(cls, v):
        return np.asarray(v, dtype=complex).reshape(-1)

    @model_validator(mode="after")
    def validar_no_nulo(self):
        if self.amplitudes.size == 0:
            raise ValueError("El estado necesita al menos una amplitud")
        if not np.any(np.abs(self.amplitudes) > 0):
            raise ValueError("El vector de amplitudes es nulo")
        return self

    @property
    def N(self) -> int:
        return int(self.amplitudes.size)

    @property
    def n(self) -> int:
        """Qubits del sistema (N debe ser potencia de dos)"""
        return (self.N - 1).bit_length()

    @property
    def is_power_of_two(self) -> bool:
        return self.N & (self.N - 1) == 0

    def norma(self, q: int = 2) -> float:
        """‖a‖_q"""
        return float(np.sum(np.abs(self.amplitudes) ** q) ** (1 / q))

    def normalizado(self) -> np.ndarray:
        return self.amplitudes / self.norma(2)


class AngleTable(TGFBaseModel):
    """Árbol de ángulos: probabilidades de prefijo, θ_y y fases φ_x"""

    model_config = ConfigDict(frozen=True)

    b: int = Field(..., ge=1, description="Bits de precisión")

    probabilities: List[List[float]] = Field(
        ...,
        description="p_y por nivel w (2^w prefijos)"
    )

    thetas: List[List[float]] = Field(
        ...,
        description="θ_y exactos en vueltas, en [0, 1/4]"
    )

    theta_bits: List[List[int]] = Field(
        ...,
        description="θ_y cuantizados: numeradores k con θ ≈ k/2^b"
    )

    phases: List[float] = Field(
        ...,
        description="φ_x exactos en vueltas, en [0, 1)"
    )

    phase_bits: List[int] = Field(
        ...,
        description="φ_x cuantizados a b bits"
    )

    @property
    def n(self) -> int:
        return len(self.thetas)

    @property
    def N(self) -> int:
        return len(self.phases)


class AliasTable(TGFBaseModel):
    """Descomposición alias de los pesos redondeados a′_x"""

    model_config = ConfigDict(frozen=True)

    b: int = Field(..., ge=1, description="Bits de precisión")

    rounded: List[int] = Field(
        ...,
        description="a′_x con Σ a′_x = N·2^b"
    )

    keep: List[int] = Field(
        ...,
        description="Umbral a″_x en [0, 2^b]"
    )

    alias: List[int] = Field(
        ...,
        description="Índice alternativo f(x)"
    )

    @model_validator(mode="after")
    def validar_identidad(self):
        N = len(self.rounded)
        escala = 1 << self.b
        if len(self.keep) != N or len(self.alias) != N:
            raise ValueError("Tablas alias de longitudes distintas")
        if sum(self.rounded) != N * escala:
            raise ValueError("Σ a′_x debe valer N·2^b")
        reconstruido = list(self.keep)
        for y in range(N):
            if not 0 <= self.keep[y] <= escala:
                raise ValueError(f"a″_{y} fuera de [0, 2^b]")
            reconstruido[self.alias[y]] += escala - self.keep[y]
        if reconstruido != list(self.rounded):
            raise ValueError("La tabla alias no reproduce a′")
        return self

    @property
    def N(self) -> int:
        return len(self.rounded)

    def distribucion(self) -> List[float]:
        """a′_x / (N·2^b)"""
        total = self.N * (1 << self.b)
        return [a / total for a in self.rounded]


class FourierResource(TGFBaseModel):
    """Registro de Fourier 𝓕 usado por el método de gradiente de fase"""

    model_config = ConfigDict(frozen=True)

    b: int = Field(..., ge=1, description="Anchura del registro")
    epsilon: float = Field(
        ...,
        gt=0,
        lt=1,
        description="Error ε_F de preparación"
    )

    def ideal(self) -> np.ndarray:
        """2^{-b/2} Σ_k e^{-2πik/2^b} |k⟩ con k en binario little-endian"""
        dim = 1 << self.b
        k = np.arange(dim)
        return np.exp(-2j * np.pi * k / dim) / np.sqrt(dim)

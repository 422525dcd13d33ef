from src.models.base_model import TGFBaseModel

from pydantic import ConfigDict, Field, model_validator
from typing import List


def ceil_log2(valor: int) -> int:
    """⌈log2 valor⌉ para enteros positivos (0 para valor = 1)"""
    if valor < 1:
        raise ValueError("ceil_log2 requiere un entero positivo")
    return (valor - 1).bit_length()


class DataTable(TGFBaseModel):
    """Tabla clásica de N entradas de b bits"""

    model_config = ConfigDict(frozen=True)

    b: int = Field(
        ...,
        ge=1,
        description="Bits por entrada"
    )

    entries: List[int] = Field(
        ...,
        min_length=1,
        description="Entradas a_x, enteros en [0, 2^b)"
    )

    @model_validator(mode="after")
    def validar_entradas(self):
        limite = 1 << self.b
        for x, valor in enumerate(self.entries):
            if not 0 <= valor < limite:
                raise ValueError(
                    f"La entrada {x} = {valor} no cabe en {self.b} bits")
        return self

    @property
    def N(self) -> int:
        return len(self.entries)

    @property
    def index_width(self) -> int:
        return ceil_log2(self.N)

    def entry(self, x: int) -> int:
        """a_x, o 0 fuera de la tabla (relleno hasta potencia de dos)"""
        if 0 <= x < self.N:
            return self.entries[x]
        return 0


class LookupPlan(TGFBaseModel):
    """Parámetros de SelectSwap: λ copias, cociente y resto del índice"""

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=1, description="Entradas de la tabla")
    lam: int = Field(..., ge=1, description="λ: copias del registro de salida")
    dirty: bool = Field(False, description="Copias en qubits sucios")

    @model_validator(mode="after")
    def validar_lambda(self):
        if self.lam > self.N:
            raise ValueError(f"λ={self.lam} fuera de [1, {self.N}]")
        return self

    @property
    def blocks(self) -> int:
        """⌈N/λ⌉"""
        return -(-self.N // self.lam)

    @property
    def quotient_width(self) -> int:
        return ceil_log2(self.blocks)

    @property
    def remainder_width(self) -> int:
        return ceil_log2(self.lam)

    @property
    def lam_is_power_of_two(self) -> bool:
        return self.lam & (self.lam - 1) == 0

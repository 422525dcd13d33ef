from src.models.base_model import TGFBaseModel
from src.config.settings import settings

from pydantic import ConfigDict, Field
from typing import Optional, Union


class BoundQuery(TGFBaseModel):
    """Parámetros de las cotas inferiores por conteo de circuitos"""

    model_config = ConfigDict(frozen=True)

    N: int = Field(1, ge=1, description="Entradas / dimensión")
    b: int = Field(1, ge=1, description="Bits por entrada")
    K: int = Field(1, ge=1, description="Columnas de la isometría")
    q: int = Field(1, ge=1, description="Presupuesto de qubits")
    epsilon: float = Field(
        0.01,
        gt=0,
        lt=1,
        description="Error objetivo"
    )
    c_clifford: float = Field(
        default_factory=lambda: settings.C_CLIFFORD,
        gt=0,
        description="Constante del exponente 2^{O(q²)} de los Clifford"
    )


class BoundResult(TGFBaseModel):
    """Valor de una cota con su fórmula y observaciones"""

    name: str = Field(..., description="Cota evaluada")
    value: int = Field(..., ge=0, description="Γ_min")
    formula: str = Field(..., description="Desigualdad resuelta")
    note: Optional[str] = Field(None, description="Observaciones")


class CostRow(TGFBaseModel):
    """Fila de las tablas de costes"""

    operation: str = Field(..., description="Construcción")
    source: str = Field(..., description="Tabla de origen o cota")
    lam: Optional[int] = Field(None, description="λ usada")
    qubits: Optional[Union[int, float]] = Field(None, description="Qubits")
    t_count: Optional[Union[int, float]] = Field(None, description="Γ")
    t_depth: Optional[Union[int, float]] = Field(
        None, description="Profundidad T")
    note: Optional[str] = Field(None, description="Constantes y avisos")

from src.models.strategies import ToffoliStrategy
from src.models.base_model import TGFBaseModel
from src.config.settings import settings

from pydantic import ConfigDict, Field, model_validator

import math


class CostModel(TGFBaseModel):
    """Modelo de costes: síntesis de rotaciones y estrategia de Toffoli"""

    model_config = ConfigDict(frozen=True)

    c_rot: float = Field(
        default_factory=lambda: settings.C_ROT,
        gt=0,
        description="Constante c_rot del coste ⌈c_rot·log2(1/δ)⌉ de una RZ"
    )

    toffoli_strategy: ToffoliStrategy = Field(
        default_factory=lambda: ToffoliStrategy(settings.DEFAULT_TOFFOLI),
        description="Descomposición de CCX/AND"
    )

    uncompute_free_via_measurement: bool = Field(
        True,
        description="Descomputar AND con medida en base X (0 T)"
    )

    rz_epsilon: float = Field(
        1e-6,
        gt=0,
        lt=1,
        description="Error por RZ cuando la puerta no declara el suyo"
    )

    def rz_t_cost(self, delta: float) -> int:
        """T estimados para sintetizar una RZ con error δ"""
        if delta >= 1:
            return 0
        if delta <= 0:
            raise ValueError("El error de síntesis debe ser positivo")
        return math.ceil(self.c_rot * math.log2(1 / delta))


class ResourceReport(TGFBaseModel):
    """Recuento de recursos de un circuito expandido"""

    model_config = ConfigDict(frozen=True)

    t_count: int = Field(..., ge=0, description="Γ: número de T, T†, G, G†")
    t_depth: int = Field(..., ge=0, description="Profundidad T")
    clifford_count: int = Field(..., ge=0, description="Puertas Clifford")
    clifford_depth: int = Field(
        ..., ge=0,
        description="Capas de Clifford de dos qubits más inyecciones T")
    qubits_total: int = Field(..., ge=0, description="q")
    qubits_clean: int = Field(..., ge=0, description="Qubits limpios")
    qubits_dirty: int = Field(..., ge=0, description="Qubits sucios")
    rz_count: int = Field(0, ge=0, description="Rotaciones RZ arbitrarias")
    rz_t_budget: int = Field(
        0, ge=0, description="Coste T modelado de las RZ")
    measurement_count: int = Field(0, ge=0, description="Medidas MZ")
    gate_count: int = Field(0, ge=0, description="Puertas totales")

    @model_validator(mode="after")
    def validar_invariantes(self):
        if self.t_depth > self.t_count:
            raise ValueError("t_depth no puede superar t_count")
        return self

    @property
    def t_total(self) -> int:
        """T exactos más el presupuesto de las rotaciones"""
        return self.t_count + self.rz_t_budget

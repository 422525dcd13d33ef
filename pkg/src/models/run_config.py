from src.models.strategies import (
    FanoutStrategy, RotationMethod, SwapStrategy, ToffoliStrategy
)
from src.models.base_model import TGFBaseModel
from src.config.settings import settings

from pydantic import ConfigDict, Field
from typing import List, Optional


class RunConfig(TGFBaseModel):
    """Configuración de una ejecución de la línea de comandos"""

    model_config = ConfigDict(frozen=True)

    command: str = Field(..., description="Subcomando")

    input_path: Optional[str] = Field(None, description="Fichero de entrada")
    state_path: Optional[str] = Field(None, description="Fichero de estado")

    lam: int = Field(1, ge=1, description="λ")
    lambdas: List[int] = Field(
        default_factory=list,
        description="Lista de λ para las tablas de costes"
    )
    b: int = Field(8, ge=1, description="Bits de precisión / por entrada")
    epsilon: float = Field(
        1e-3,
        gt=0,
        lt=1,
        description="Error objetivo ε"
    )

    N: Optional[int] = Field(None, ge=1, description="Tamaño N")
    n: Optional[int] = Field(None, ge=1, description="Anchura n")
    K: int = Field(1, ge=1, description="Columnas")
    q: Optional[int] = Field(None, ge=1, description="Presupuesto de qubits")
    k_split: Optional[int] = Field(
        None, ge=0, description="Corte k del lookup por indicadora")

    dirty: bool = Field(False, description="Variante con qubits sucios")
    toffoli_strategy: ToffoliStrategy = Field(
        default_factory=lambda: ToffoliStrategy(settings.DEFAULT_TOFFOLI),
        description="Estrategia de Toffoli"
    )
    fanout_strategy: FanoutStrategy = Field(
        default_factory=lambda: FanoutStrategy(settings.DEFAULT_FANOUT),
        description="Estrategia de fanout"
    )
    swap_strategy: Optional[SwapStrategy] = Field(
        None,
        description="Variante de swap controlado (None: la de cada oráculo)"
    )
    method: RotationMethod = Field(
        RotationMethod.PHASE_GRADIENT,
        description="Método de rotaciones de la preparación de estados"
    )

    verify: bool = Field(False, description="Verificar por simulación")
    trials: int = Field(8, ge=1, description="Pruebas de qubits sucios")
    seed: int = Field(0, description="Semilla única de aleatoriedad")

    out_dir: str = Field(
        default_factory=lambda: settings.OUTPUT_DIR,
        description="Directorio de salida"
    )
    out_path: Optional[str] = Field(None, description="Fichero de salida")
    name: Optional[str] = Field(None, description="Prefijo de artefactos")
    store: bool = Field(False, description="Guardar la ejecución en MongoDB")

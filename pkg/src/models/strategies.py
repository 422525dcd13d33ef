from enum import Enum


class ToffoliStrategy(str, Enum):
    """Descomposición aplicada a las macros de tipo Toffoli"""

    SEVEN_T = "seven_t"
    RELPHASE_FOUR_T = "relphase_four_t"
    AND_GADGET_MEASURED = "and_gadget_measured"


class FanoutStrategy(str, Enum):
    """Construcción del CNOT multi-objetivo"""

    LINEAR = "linear"
    LOGARITHMIC = "logarithmic"
    TREE_REUSE = "tree_reuse"


class SwapStrategy(str, Enum):
    """Variante del swap controlado entre dos registros de n qubits"""

    LINEAR = "linear"
    LOGARITHMIC = "logarithmic"
    PHASE_INCORRECT = "phase_incorrect"


class RotationMethod(str, Enum):
    """Forma de aplicar las rotaciones multiplexadas"""

    PHASE_GRADIENT = "phase_gradient"
    CONTROLLED_ROTATION = "controlled_rotation"


class TargetKind(str, Enum):
    """Puerta autoinversa V del CNOT generalizado"""

    SWAP = "swap"
    X = "x"

"""Jerarquía de errores del sintetizador y sus códigos de salida"""

# Fallo interno no previsto (EX_SOFTWARE de sysexits)
INTERNAL_ERROR_EXIT_CODE = 70


class SynthesisError(Exception):
    """Error base de la herramienta"""

    exit_code: int = 2


class CircuitParseError(SynthesisError):
    """Fichero de entrada mal formado"""

    exit_code = 1

    def __init__(self, mensaje: str, linea: int = None):
        self.linea = linea
        if linea is not None:
            mensaje = f"línea {linea}: {mensaje}"
        super().__init__(mensaje)


class ParameterError(SynthesisError, ValueError):
    """Parámetro fuera de rango"""

    exit_code = 2


class ConfigurationError(SynthesisError):
    """Estrategia desconocida, macro no expandible o configuración ausente"""

    exit_code = 2


class VerificationError(SynthesisError):
    """La simulación no reproduce el comportamiento esperado"""

    exit_code = 3


class QubitLimitError(SynthesisError):
    """El circuito supera el límite de qubits del simulador"""

    exit_code = 4


class SimulationError(SynthesisError):
    """Estado no normalizado o bit clásico ambiguo"""

    exit_code = 3

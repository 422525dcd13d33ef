from dotenv import load_dotenv

import os

load_dotenv()


class Settings:
    """Carga la configuración necesaria de la aplicación"""

    # Simulator Settings -> configuración del simulador
    QUBIT_LIMIT: int = int(os.getenv("TGF_QUBIT_LIMIT", "24"))
    NORM_TOLERANCE: float = float(os.getenv("TGF_NORM_TOLERANCE", "1e-10"))
    STATE_TOLERANCE: float = float(os.getenv("TGF_STATE_TOLERANCE", "1e-9"))

    # Cost Model Settings -> constantes del modelo de costes
    C_ROT: float = float(os.getenv("TGF_C_ROT", "3"))
    C_CLIFFORD: int = int(os.getenv("TGF_C_CLIFFORD", "4"))

    # Strategy Settings -> estrategias por defecto
    DEFAULT_TOFFOLI: str = os.getenv("TGF_DEFAULT_TOFFOLI",
                                     "and_gadget_measured")
    DEFAULT_FANOUT: str = os.getenv("TGF_DEFAULT_FANOUT", "logarithmic")
    DEFAULT_SWAP: str = os.getenv("TGF_DEFAULT_SWAP", "phase_incorrect")
    DIRTY_SWAP: str = os.getenv("TGF_DIRTY_SWAP", "linear")

    # Output Settings -> ficheros generados
    LOG_FILE: str = os.getenv("TGF_LOG_FILE", "tgf_synthesis.log")
    OUTPUT_DIR: str = os.getenv("TGF_OUTPUT_DIR", "salida")

    # Database Settings -> configuración de MongoDB (opcional, solo --store)
    MONGO_URI: str = os.getenv("MONGO_URI")
    MONGO_DATABASE: str = os.getenv("MONGO_DATABASE")
    RUNS_COLLECTION: str = os.getenv("TGF_RUNS_COLLECTION", "ejecuciones")
    MONGO_TIMEOUT_MS: int = int(os.getenv("TGF_MONGO_TIMEOUT_MS", "5000"))

    @classmethod
    def get_mongo_uri(cls) -> str:
        return cls.MONGO_URI

    @classmethod
    def get_database_name(cls) -> str:
        return cls.MONGO_DATABASE

    @classmethod
    def mongo_configurado(cls) -> bool:
        """Indica si hay configuración suficiente para guardar ejecuciones"""
        return bool(cls.MONGO_URI and cls.MONGO_DATABASE)

    @classmethod
    def get_qubit_limit(cls) -> int:
        """Límite de qubits, releído del entorno en cada llamada"""
        valor = os.getenv("TGF_QUBIT_LIMIT")
        if valor:
            return int(valor)
        return cls.QUBIT_LIMIT


settings = Settings()

from src.config.settings import settings

from pymongo.errors import ConnectionFailure, ServerSelectionTimeoutError
from pymongo.errors import PyMongoError
from pymongo.collection import Collection
from pymongo.database import Database
from typing import List, Optional, Tuple, Union
from pymongo import MongoClient

import logging
import re

logger = logging.getLogger(__name__)

# Índices de la colección de ejecuciones: (claves, único)
INDICES_EJECUCIONES: List[Tuple[Union[str, List[Tuple[str, int]]], bool]] = [
    ("command", False),
    ("fecha", False),
    ([("command", 1), ("passed", 1)], False),
]

_CREDENCIALES = re.compile(r"//[^@/]+@")


def _uri_sin_credenciales(uri: str) -> str:
    return _CREDENCIALES.sub("//***@", uri or "")


class MongoDBConnection:
    """Conexión opcional con la base de datos donde se guardan ejecuciones"""

    def __init__(
        self,
        uri: str = None,
        database_name: str = None,
        timeout_ms: int = None
    ):
        self.uri = uri or settings.get_mongo_uri()
        self.database_name = database_name or settings.get_database_name()
        self.timeout_ms = timeout_ms or settings.MONGO_TIMEOUT_MS
        self.client: Optional[MongoClient] = None
        self.database: Optional[Database] = None
        self._connected = False

    def connect(self) -> bool:
        """Abre el cliente y comprueba el servidor con un ping"""
        if not self.uri or not self.database_name:
            logger.error("Faltan MONGO_URI o MONGO_DATABASE")
            return False

        logger.info(f"Conectando a MongoDB: {_uri_sin_credenciales(self.uri)}")
        try:
            self.client = MongoClient(
                self.uri,
                serverSelectionTimeoutMS=self.timeout_ms,
                connectTimeoutMS=2 * self.timeout_ms
            )
            self.client.admin.command('ping')
        except (ConnectionFailure, ServerSelectionTimeoutError) as e:
            logger.error(f"Servidor MongoDB no disponible: {e}")
            self._cerrar_cliente()
            return False
        except PyMongoError as e:
            logger.error(f"Error de MongoDB al conectar: {e}")
            self._cerrar_cliente()
            return False

        self.database = self.client[self.database_name]
        self._connected = True
        logger.info(f"Base de datos de ejecuciones: {self.database_name}")
        return True

    def disconnect(self):
        if self.client is not None:
            self._cerrar_cliente()
            logger.info("Desconectado de MongoDB")

    def _cerrar_cliente(self):
        if self.client is not None:
            self.client.close()
        self.client = None
        self.database = None
        self._connected = False

    def get_collection(
        self,
        collection_name: str = None
    ) -> Optional[Collection]:
        """Colección pedida, por defecto la de ejecuciones"""
        if not self._connected:
            logger.error("No hay conexión a MongoDB")
            return None
        return self.database[collection_name or settings.RUNS_COLLECTION]

    def _is_connected(self) -> bool:
        return self._connected

    def create_indexes(self):
        ejecuciones = self.get_collection(settings.RUNS_COLLECTION)
        if ejecuciones is None:
            return

        for claves, unico in INDICES_EJECUCIONES:
            try:
                ejecuciones.create_index(claves, unique=unico)
            except PyMongoError as e:
                logger.error(f"Error creando el índice {claves}: {e}")
        logger.info(f"Índices de {settings.RUNS_COLLECTION} comprobados")

    def __enter__(self):
        self.connect()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.disconnect()

from src.database.connection import MongoDBConnection
from src.models.simulation import VerificationRecord
from src.models.resources import ResourceReport
from src.config.settings import settings

from typing import Any, Dict, List, Optional
from datetime import datetime
from fractions import Fraction

import logging

logger = logging.getLogger(__name__)


class RunRepository:
    """Repositorio de las ejecuciones de la línea de comandos"""

    def __init__(
        self,
        connection: MongoDBConnection
    ):
        self.connection = connection
        self.stats = {
            'ejecuciones_guardadas': 0,
            'errores': []
        }

    def guardar_ejecucion(
        self,
        record: Dict[str, Any]
    ) -> Dict[str, Any]:
        """
        Guarda una ejecución (configuración, informe y veredictos)

        Args:
            record: Documento con 'id', 'command', 'config', 'report' y
                'verification'

        Returns:
            Estadísticas de la operación
        """
        if not self.connection._is_connected():
            logger.error("No hay conexión a la base de datos")
            self.stats['errores'].append("Sin conexión")
            return self.stats

        collection = self.connection.get_collection(settings.RUNS_COLLECTION)
        if collection is None:
            return self.stats

        try:
            doc = self._convert_values(dict(record))
            if 'id' in doc:
                doc['_id'] = doc.pop('id')
            verificacion = doc.get('verification') or {}
            doc['passed'] = verificacion.get('passed')
            doc['fecha'] = datetime.now()

            collection.replace_one({'_id': doc.get('_id')}, doc, upsert=True)
            self.stats['ejecuciones_guardadas'] += 1
            logger.info(f"Ejecución guardada: {doc.get('_id')}")

        except Exception as e:
            logger.error(f"Error guardando ejecución: {e}")
            self.stats['errores'].append(f"Ejecución: {str(e)}")

        return self.stats

    def buscar_ejecucion(
        self,
        run_id: str
    ) -> Optional[Dict]:
        collection = self.connection.get_collection(settings.RUNS_COLLECTION)
        if collection is None:
            return None
        return collection.find_one({'_id': run_id})

    def obtener_informe(
        self,
        run_id: str
    ) -> Optional[ResourceReport]:
        documento = self.buscar_ejecucion(run_id)
        if not documento or not documento.get('report'):
            return None
        return ResourceReport.from_mongo(documento['report'])

    def obtener_veredicto(
        self,
        run_id: str
    ) -> Optional[VerificationRecord]:
        """Veredicto guardado de una ejecución, si se verificó"""
        documento = self.buscar_ejecucion(run_id)
        if not documento or not documento.get('verification'):
            return None
        return VerificationRecord.from_mongo(documento['verification'])

    def listar_ejecuciones(
        self,
        command: str = None
    ) -> List[Dict]:
        """Ejecuciones guardadas, las más recientes primero"""
        collection = self.connection.get_collection(settings.RUNS_COLLECTION)
        if collection is None:
            return []
        filtro = {'command': command} if command else {}
        return list(collection.find(filtro).sort('fecha', -1))

    def _convert_values(self, obj: Any) -> Any:
        """Convierte recursivamente Fraction y tuplas a tipos de BSON"""
        if isinstance(obj, Fraction):
            return str(obj)
        elif isinstance(obj, dict):
            return {str(k): self._convert_values(v) for k, v in obj.items()}
        elif isinstance(obj, (list, tuple)):
            return [self._convert_values(item) for item in obj]
        return obj

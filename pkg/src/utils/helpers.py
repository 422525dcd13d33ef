from src.models.bounds import CostRow
from src.models.circuit import Circuit

from typing import Any, Dict, List, Sequence
from collections import Counter
from pathlib import Path

import logging
import hashlib
import json
import csv

logger = logging.getLogger(__name__)

COLUMNAS_TABLA = ["operation", "source", "lam", "qubits", "t_count",
                  "t_depth", "note"]


class SynthesisHelpers:
    """Funciones auxiliares para exportar artefactos de las ejecuciones"""

    @staticmethod
    def generar_id_ejecucion(config: Dict[str, Any]) -> str:
        """ID estable de una ejecución a partir de su configuración"""
        texto = json.dumps(config, sort_keys=True, default=str)
        return hashlib.md5(texto.encode()).hexdigest()

    @staticmethod
    def exportar_a_json(data: Dict[str, Any], filepath: str):
        """Exporta los datos a un archivo JSON con claves ordenadas"""
        Path(filepath).parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False, default=str,
                      sort_keys=True)
            f.write("\n")
        logger.info(f"Datos exportados a: {filepath}")

    @staticmethod
    def exportar_csv(
        filas: Sequence[Dict[str, Any]],
        columnas: Sequence[str],
        filepath: str
    ):
        """Exporta filas a CSV en el orden de columnas dado"""
        Path(filepath).parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, 'w', encoding='utf-8', newline='') as f:
            escritor = csv.DictWriter(f, fieldnames=list(columnas),
                                      extrasaction='ignore',
                                      lineterminator='\n')
            escritor.writeheader()
            for fila in filas:
                escritor.writerow(
                    {k: "" if fila.get(k) is None else fila.get(k)
                     for k in columnas})
        logger.info(f"CSV exportado a: {filepath}")

    @staticmethod
    def formatear_valor(valor: Any) -> str:
        if valor is None:
            return "-"
        if isinstance(valor, float):
            return f"{valor:.1f}"
        return str(valor)

    @staticmethod
    def formatear_tabla(filas: Sequence[CostRow]) -> str:
        """Tabla de texto alineada por columnas"""
        celdas = [COLUMNAS_TABLA] + [
            [SynthesisHelpers.formatear_valor(getattr(fila, c))
             for c in COLUMNAS_TABLA]
            for fila in filas
        ]
        anchos = [max(len(f[i]) for f in celdas)
                  for i in range(len(COLUMNAS_TABLA))]
        lineas = []
        for i, fila in enumerate(celdas):
            lineas.append("  ".join(
                c.ljust(a) for c, a in zip(fila, anchos)).rstrip())
            if i == 0:
                lineas.append("  ".join("-" * a for a in anchos))
        return "\n".join(lineas) + "\n"

    @staticmethod
    def calcular_estadisticas(circuit: Circuit) -> Dict[str, Any]:
        """Puertas por tipo y qubits por papel, antes de expandir macros"""
        por_tipo = Counter(g.kind.value for g in circuit.gates)
        por_papel: Dict[str, int] = {}
        for registro in circuit.registers.registers:
            papel = registro.role.value
            por_papel[papel] = por_papel.get(papel, 0) + registro.width
        return {
            'total_puertas': len(circuit.gates),
            'puertas_por_tipo': dict(sorted(por_tipo.items())),
            'qubits': circuit.num_qubits,
            'qubits_por_papel': por_papel,
            'registros': len(circuit.registers.registers),
        }

    @staticmethod
    def filas_a_dicts(filas: Sequence[CostRow]) -> List[Dict[str, Any]]:
        return [fila.model_dump(mode="json") for fila in filas]

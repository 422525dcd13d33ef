"""Lectura de tablas, estados, pesos y columnas; ficheros de estado"""
from src.models.isometry import IsometrySpec
from src.utils.errors import CircuitParseError
from src.models.stateprep import StateSpec
from src.models.lookup import DataTable

from pydantic import ValidationError
from typing import Any, List
from pathlib import Path

import numpy as np
import logging
import json
import re

logger = logging.getLogger(__name__)

_CABECERA_B = re.compile(r"#\s*b\s*=\s*(\d+)")


def _complejo(valor: Any, donde: str) -> complex:
    """[re, im] o número real"""
    if isinstance(valor, (list, tuple)):
        if len(valor) != 2:
            raise CircuitParseError(f"{donde}: se esperaba [re, im]")
        return complex(float(valor[0]), float(valor[1]))
    if isinstance(valor, (int, float)):
        return complex(valor)
    raise CircuitParseError(f"{donde}: amplitud no numérica {valor!r}")


class InputParser:
    """Lee los ficheros de entrada de los subcomandos"""

    def parse_table(
        self,
        filepath: str
    ) -> DataTable:
        """
        Tabla de datos
        Formatos: JSON {"b": int, "entries": [...]} o CSV con '# b=<int>'
        """
        texto = self.__read_file(filepath)
        if filepath.lower().endswith(".json"):
            datos = self.__parse_json(texto, filepath)
            if not isinstance(datos, dict) or "entries" not in datos:
                raise CircuitParseError(
                    f"{filepath}: falta la clave 'entries'")
            tabla = self.__tabla(filepath, datos.get("b"), datos["entries"])
        else:
            b = None
            entradas: List[int] = []
            for numero, linea in enumerate(texto.splitlines(), start=1):
                cabecera = _CABECERA_B.match(linea.strip())
                if cabecera:
                    b = int(cabecera.group(1))
                    continue
                linea = linea.split("#", 1)[0].strip()
                if not linea:
                    continue
                try:
                    entradas.append(int(linea))
                except ValueError:
                    raise CircuitParseError(
                        f"entrada no entera: {linea}", numero)
            if b is None:
                raise CircuitParseError(f"{filepath}: falta la cabecera "
                                        f"'# b=<int>'")
            tabla = self.__tabla(filepath, b, entradas)
        logger.info(f"Tabla leída: N={tabla.N}, b={tabla.b}")
        return tabla

    def parse_state_spec(
        self,
        filepath: str
    ) -> StateSpec:
        """Formato: JSON {"amplitudes": [[re, im], ...]}"""
        datos = self.__parse_json(self.__read_file(filepath), filepath)
        if not isinstance(datos, dict) or "amplitudes" not in datos:
            raise CircuitParseError(f"{filepath}: falta 'amplitudes'")
        amplitudes = [_complejo(v, f"amplitud {i}")
                      for i, v in enumerate(datos["amplitudes"])]
        return StateSpec(amplitudes=amplitudes)

    def parse_weights(
        self,
        filepath: str
    ) -> List[float]:
        """Formato: CSV de reales no negativos (uno o varios por línea)"""
        pesos = []
        texto = self.__read_file(filepath)
        for numero, linea in enumerate(texto.splitlines(), start=1):
            linea = linea.split("#", 1)[0].strip()
            for campo in filter(None, (c.strip() for c in linea.split(","))):
                try:
                    pesos.append(float(campo))
                except ValueError:
                    raise CircuitParseError(f"peso no numérico: {campo}",
                                            numero)
        if not pesos:
            raise CircuitParseError(f"{filepath}: no hay pesos")
        return pesos

    def parse_isometry(
        self,
        filepath: str
    ) -> IsometrySpec:
        """Formato: JSON {"n": int, "columns": [[[re, im], ...], ...]}"""
        datos = self.__parse_json(self.__read_file(filepath), filepath)
        if not isinstance(datos, dict) or "columns" not in datos:
            raise CircuitParseError(f"{filepath}: falta 'columns'")
        columnas = [[_complejo(v, f"columna {k}") for v in columna]
                    for k, columna in enumerate(datos["columns"])]
        if "n" in datos:
            dimension = 1 << int(datos["n"])
            if any(len(c) != dimension for c in columnas):
                raise CircuitParseError(
                    f"{filepath}: las columnas deben tener {dimension} "
                    f"componentes")
        return IsometrySpec(columns=columnas)

    def __tabla(
        self,
        filepath: str,
        b: Any,
        entradas: Any
    ) -> DataTable:
        try:
            return DataTable(b=b, entries=entradas)
        except ValidationError as e:
            detalle = "; ".join(err["msg"] for err in e.errors())
            logger.error(f"Tabla inválida en {filepath}: {detalle}")
            raise CircuitParseError(f"{filepath}: tabla inválida: {detalle}")

    def __read_file(
        self,
        filepath: str
    ) -> str:
        path = Path(filepath)
        if not path.exists():
            raise CircuitParseError(f"El fichero no existe: {filepath}")
        try:
            return path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            logger.error(f"Error de codificación en {filepath}: {e}")
            raise CircuitParseError(f"{filepath}: codificación no válida")

    def __parse_json(
        self,
        texto: str,
        filepath: str
    ) -> Any:
        try:
            return json.loads(texto)
        except json.JSONDecodeError as e:
            raise CircuitParseError(f"{filepath}: JSON inválido ({e.msg})",
                                    e.lineno)


class StateFile:
    """Ficheros de estado: una línea 'índice re im' por amplitud no nula"""

    @staticmethod
    def read(
        filepath: str,
        num_qubits: int
    ) -> np.ndarray:
        path = Path(filepath)
        if not path.exists():
            raise CircuitParseError(f"El fichero no existe: {filepath}")
        dim = 1 << num_qubits
        estado = np.zeros(dim, dtype=np.complex128)
        texto = path.read_text(encoding="utf-8")
        for numero, linea in enumerate(texto.splitlines(), start=1):
            campos = linea.split("#", 1)[0].split()
            if not campos:
                continue
            if len(campos) != 3:
                raise CircuitParseError("se esperaba 'índice re im'", numero)
            try:
                indice = int(campos[0])
                valor = complex(float(campos[1]), float(campos[2]))
            except ValueError:
                raise CircuitParseError("valor no numérico", numero)
            if not 0 <= indice < dim:
                raise CircuitParseError(f"índice {indice} fuera de rango",
                                        numero)
            estado[indice] += valor
        return estado

    @staticmethod
    def write(
        filepath: str,
        amplitudes: np.ndarray,
        tolerance: float = 1e-12
    ):
        Path(filepath).parent.mkdir(parents=True, exist_ok=True)
        lineas = [
            f"{i} {amplitudes[i].real:.17g} {amplitudes[i].imag:.17g}"
            for i in np.nonzero(np.abs(amplitudes) > tolerance)[0]
        ]
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write("\n".join(lineas) + "\n")
        logger.info(f"Estado exportado a: {filepath}")

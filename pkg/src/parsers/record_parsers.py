from src.models.circuit import Register, RegisterRole
from src.utils.errors import CircuitParseError
from src.models.gate import Gate, GateKind

from typing import Any, List, Tuple
from pydantic import ValidationError
from fractions import Fraction

import json
import logging

logger = logging.getLogger(__name__)

_KINDS = {k.value: k for k in GateKind}


class GateRecordParser:
    """Parsea cada una de las líneas del formato de texto de circuitos"""

    def parse_qubits(
        self,
        campos: List[str],
        linea: int
    ) -> int:
        """
        Cabecera
        Formato: qubits <n>
        """
        if len(campos) != 2:
            raise CircuitParseError("cabecera 'qubits <n>' mal formada", linea)
        return self.__parse_int(campos[1], linea)

    def parse_register(
        self,
        campos: List[str],
        linea: int
    ) -> Register:
        """
        Registro
        Formato: register <nombre> <inicio> <anchura> <papel>
        """
        if len(campos) != 5:
            raise CircuitParseError("registro mal formado", linea)
        try:
            role = RegisterRole(campos[4])
        except ValueError:
            raise CircuitParseError(f"papel desconocido: {campos[4]}", linea)
        inicio = self.__parse_int(campos[2], linea)
        anchura = self.__parse_int(campos[3], linea)
        try:
            return Register(name=campos[1], start=inicio, width=anchura,
                            role=role)
        except ValidationError as e:
            raise CircuitParseError(
                f"registro inválido: {e.errors()[0]['msg']}", linea)

    def parse_meta(
        self,
        campos: List[str],
        linea: int
    ) -> Tuple[str, Any]:
        """
        Metadato
        Formato: meta <clave> <valor json>
        """
        if len(campos) < 3:
            raise CircuitParseError("metadato mal formado", linea)
        try:
            return campos[1], json.loads(" ".join(campos[2:]))
        except json.JSONDecodeError as e:
            raise CircuitParseError(f"valor de metadato inválido: {e}", linea)

    def parse_gate(
        self,
        campos: List[str],
        linea: int
    ) -> Gate:
        """
        Puerta
        Formatos: H 3 | CX 0 4 | RZ 5/32 2 [eps=δ] | MZ 4 -> c0 | CZ? c0 1 2
        """
        nombre = campos[0]
        condicion = None
        if nombre.endswith("?"):
            nombre = nombre[:-1]
            if len(campos) < 2:
                raise CircuitParseError("falta el bit de control", linea)
            condicion = campos[1]
            campos = [nombre] + campos[2:]

        kind = _KINDS.get(nombre)
        if kind is None:
            raise CircuitParseError(f"puerta desconocida: {nombre}", linea)

        angulo = None
        cbit = None
        epsilon = None
        operandos = campos[1:]

        if kind == GateKind.RZ:
            if not operandos:
                raise CircuitParseError("RZ sin ángulo", linea)
            angulo = self.__parse_fraction(operandos[0], linea)
            operandos = operandos[1:]
            if operandos and operandos[-1].startswith("eps="):
                epsilon = self.__parse_float(operandos[-1][4:], linea)
                operandos = operandos[:-1]

        if kind == GateKind.MZ:
            if len(operandos) != 3 or operandos[1] != "->":
                raise CircuitParseError("formato 'MZ <q> -> <bit>'", linea)
            cbit = operandos[2]
            operandos = operandos[:1]

        qubits = tuple(self.__parse_int(o, linea) for o in operandos)
        try:
            return Gate(kind=kind, qubits=qubits, angle=angulo, cbit=cbit,
                        condition=condicion, epsilon=epsilon)
        except ValueError as e:
            raise CircuitParseError(str(e), linea)

    def __parse_int(self, valor: str, linea: int) -> int:
        try:
            return int(valor)
        except ValueError:
            raise CircuitParseError(f"entero inválido: {valor}", linea)

    def __parse_float(self, valor: str, linea: int) -> float:
        try:
            return float(valor)
        except ValueError:
            raise CircuitParseError(f"real inválido: {valor}", linea)

    def __parse_fraction(self, valor: str, linea: int) -> Fraction:
        try:
            return Fraction(valor)
        except (ValueError, ZeroDivisionError):
            raise CircuitParseError(f"ángulo inválido: {valor}", linea)

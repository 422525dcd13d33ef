from src.models.circuit import Circuit, Register, RegisterMap, RegisterRole
from src.parsers.record_parsers import GateRecordParser
from src.utils.errors import CircuitParseError
from src.models.gate import Gate

from typing import Any, Dict, List, Optional
from pathlib import Path

import json
import logging

logger = logging.getLogger(__name__)


class CircuitParser:
    """Lee un circuito en formato de texto"""

    def __init__(self):
        self.record_parser = GateRecordParser()
        self.num_qubits: Optional[int] = None
        self.registros: List[Register] = []
        self.puertas: List[Gate] = []
        self.metadata: Dict[str, Any] = {}

    def parse_file(
        self,
        filepath: str
    ) -> Circuit:
        """
        Parsea un fichero de circuito

        Args:
            filepath: Ruta al fichero de texto

        Returns:
            Circuito con registros, puertas y metadatos
        """
        logger.info(f"Iniciando parseo del circuito: {filepath}")
        path = Path(filepath)
        if not path.exists():
            raise CircuitParseError(f"El fichero no existe: {filepath}")

        try:
            return self.parse_text(path.read_text(encoding="utf-8"))
        except CircuitParseError as e:
            logger.error(f"Error parseando circuito: {e}")
            raise

    def parse_text(
        self,
        content: str
    ) -> Circuit:
        self.num_qubits = None
        self.registros = []
        self.puertas = []
        self.metadata = {}

        for numero, linea in enumerate(content.splitlines(), start=1):
            self.__process_line(linea, numero)

        return self.__post_process()

    def __process_line(
        self,
        linea: str,
        numero: int
    ):
        campos = linea.split("#", 1)[0].split()
        if not campos:
            return

        clave = campos[0]
        if clave == "qubits":
            if self.num_qubits is not None:
                raise CircuitParseError("cabecera 'qubits' repetida", numero)
            self.num_qubits = self.record_parser.parse_qubits(campos, numero)
        elif clave == "register":
            self.registros.append(
                self.record_parser.parse_register(campos, numero))
        elif clave == "meta":
            nombre, valor = self.record_parser.parse_meta(campos, numero)
            self.metadata[nombre] = valor
        else:
            if self.num_qubits is None:
                raise CircuitParseError(
                    "puerta antes de la cabecera 'qubits'", numero)
            puerta = self.record_parser.parse_gate(campos, numero)
            if max(puerta.qubits) >= self.num_qubits:
                raise CircuitParseError(
                    f"qubit fuera de rango en {puerta.to_text()}", numero)
            self.puertas.append(puerta)

    def __post_process(self) -> Circuit:
        if self.num_qubits is None:
            raise CircuitParseError("falta la cabecera 'qubits <n>'")

        registros = sorted(self.registros, key=lambda r: r.start)
        try:
            mapa = RegisterMap(registers=tuple(registros))
        except ValueError as e:
            raise CircuitParseError(f"registros inválidos: {e}")
        if registros and mapa.num_qubits != self.num_qubits:
            raise CircuitParseError(
                f"los registros cubren {mapa.num_qubits} qubits, la "
                f"cabecera declara {self.num_qubits}")
        if not registros and self.num_qubits > 0:
            mapa = RegisterMap(registers=(Register(
                name="q", start=0, width=self.num_qubits,
                role=RegisterRole.CLEAN),))

        macro_policy = self.metadata.pop("macro_policy", {}) or {}
        logger.info(f"Parseo completado. Qubits: {self.num_qubits}, "
                    f"Puertas: {len(self.puertas)}")
        return Circuit(registers=mapa, gates=tuple(self.puertas),
                       macro_policy=macro_policy, metadata=self.metadata)


class CircuitWriter:
    """Escribe circuitos en el formato de texto (inverso del parser)"""

    @staticmethod
    def to_text(circuit: Circuit) -> str:
        lineas = [f"qubits {circuit.num_qubits}"]
        for registro in circuit.registers.registers:
            lineas.append(f"register {registro.name} {registro.start} "
                          f"{registro.width} {registro.role.value}")
        for clave in sorted(circuit.metadata):
            valor = json.dumps(circuit.metadata[clave], sort_keys=True)
            lineas.append(f"meta {clave} {valor}")
        if circuit.macro_policy:
            valor = json.dumps(circuit.macro_policy, sort_keys=True)
            lineas.append(f"meta macro_policy {valor}")
        lineas.extend(g.to_text() for g in circuit.gates)
        return "\n".join(lineas) + "\n"

    @staticmethod
    def write_file(circuit: Circuit, filepath: str):
        Path(filepath).parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(CircuitWriter.to_text(circuit))
        logger.info(f"Circuito exportado a: {filepath}")

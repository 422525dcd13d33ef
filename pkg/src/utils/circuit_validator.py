from src.models.circuit import Circuit, RegisterRole
from src.models.gate import GateKind

from typing import Any, Dict, List


class CircuitValidator:
    """Validador para verificar la integridad de un circuito construido"""

    @staticmethod
    def validar_circuito(
        circuit: Circuit
    ) -> Dict[str, Any]:
        """Valida operandos, medidas y bits clásicos del circuito"""
        errores = []
        advertencias = []

        # Operandos fuera del rango de registros
        fuera = CircuitValidator._detectar_fuera_de_rango(circuit)
        errores.extend(
            [f"Qubit fuera de rango: {texto}" for texto in fuera])

        # Medidas sobre registros sucios
        medidas_sucias = CircuitValidator._detectar_medidas_sucias(circuit)
        errores.extend(
            [f"Medida sobre qubit sucio: {texto}"
             for texto in medidas_sucias])

        # Control clásico antes de la medida
        sin_definir = CircuitValidator._detectar_bits_sin_definir(circuit)
        errores.extend(
            [f"Bit clásico usado antes de medirse: {texto}"
             for texto in sin_definir])

        # Registros que ninguna puerta toca
        sin_uso = CircuitValidator._detectar_registros_sin_uso(circuit)
        advertencias.extend(
            [f"Registro sin puertas: {nombre}" for nombre in sin_uso])

        macros = sum(1 for g in circuit.gates if g.es_macro)
        if macros:
            advertencias.append(f"{macros} macros sin expandir")

        return {
            'valido': len(errores) == 0,
            'errores': errores,
            'advertencias': advertencias,
            'estadisticas': {
                'puertas': len(circuit.gates),
                'macros': macros,
                'medidas': sum(1 for g in circuit.gates if g.es_medida),
                'qubits': circuit.num_qubits,
                'qubits_sucios': len(circuit.registers.qubits_con_papel(
                    RegisterRole.DIRTY)),
                'registros_sin_uso': len(sin_uso),
            }
        }

    @staticmethod
    def _detectar_fuera_de_rango(
        circuit: Circuit
    ) -> List[str]:
        n = circuit.num_qubits
        return [g.to_text() for g in circuit.gates
                if any(q >= n for q in g.qubits)]

    @staticmethod
    def _detectar_medidas_sucias(
        circuit: Circuit
    ) -> List[str]:
        sucios = set(circuit.registers.qubits_con_papel(RegisterRole.DIRTY))
        return [g.to_text() for g in circuit.gates
                if g.kind == GateKind.MZ and g.qubits[0] in sucios]

    @staticmethod
    def _detectar_bits_sin_definir(
        circuit: Circuit
    ) -> List[str]:
        """Puertas condicionadas a un bit que aún no se ha medido"""
        medidos = set()
        problemas = []
        for gate in circuit.gates:
            if gate.condition is not None and gate.condition not in medidos:
                problemas.append(gate.to_text())
            if gate.kind == GateKind.MZ:
                medidos.add(gate.cbit)
        return problemas

    @staticmethod
    def _detectar_registros_sin_uso(
        circuit: Circuit
    ) -> List[str]:
        usados = {q for g in circuit.gates for q in g.qubits}
        return [r.name for r in circuit.registers.registers
                if r.width and not usados.intersection(r.qubits)]

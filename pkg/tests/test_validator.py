from src.utils.circuit_validator import CircuitValidator
from src.models.circuit import RegisterRole
from src.circuits.builder import CircuitBuilder
from src.builders.lookup import build_select
from src.models.gate import GateKind
from tests.conftest import circuito_de


def test_circuito_valido(tabla_pequena):
    resultado = CircuitValidator.validar_circuito(build_select(tabla_pequena))
    assert resultado['valido']
    assert resultado['errores'] == []
    assert resultado['estadisticas']['qubits_sucios'] == 0
    assert resultado['estadisticas']['puertas'] > 0


def test_qubit_fuera_de_rango():
    circuito = circuito_de(2, lambda b: b.cx(0, 3))
    resultado = CircuitValidator.validar_circuito(circuito)
    assert not resultado['valido']
    assert resultado['errores'] == ["Qubit fuera de rango: CX 0 3"]


def test_medida_sobre_qubit_sucio():
    builder = CircuitBuilder()
    builder.add_register("a", 1, RegisterRole.CLEAN)
    builder.add_register("d", 1, RegisterRole.DIRTY)
    builder.cx(1, 0)
    builder.mz(1)
    resultado = CircuitValidator.validar_circuito(builder.build())
    assert not resultado['valido']
    assert resultado['errores'] == ["Medida sobre qubit sucio: MZ 1 -> c0"]
    assert resultado['estadisticas']['qubits_sucios'] == 1
    assert resultado['estadisticas']['medidas'] == 1


def test_bit_clasico_usado_antes_de_medir():
    def construir(b):
        b.add(GateKind.X, 1, condition="c0")
        b.mz(0)
        b.add(GateKind.Z, 1, condition="c0")

    resultado = CircuitValidator.validar_circuito(circuito_de(2, construir))
    assert resultado['errores'] == [
        "Bit clásico usado antes de medirse: X? c0 1"]


def test_advertencias_de_registros_sin_uso_y_macros():
    builder = CircuitBuilder()
    builder.add_register("q", 3, RegisterRole.CLEAN)
    builder.add_register("libre", 2, RegisterRole.CLEAN)
    builder.ccx(0, 1, 2)
    resultado = CircuitValidator.validar_circuito(builder.build())
    assert resultado['valido']
    assert resultado['advertencias'] == [
        "Registro sin puertas: libre", "1 macros sin expandir"]
    assert resultado['estadisticas']['macros'] == 1
    assert resultado['estadisticas']['registros_sin_uso'] == 1

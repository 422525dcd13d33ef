from src.simulator.registers import (
    basis_index, basis_state, decode_value, encode_value, marginal,
    register_values, split_registers, support
)
from src.simulator.dirty import (
    verify_dirty_restoration, verify_dirty_restoration_reversible
)
from src.simulator.statevector import StatevectorSimulator, state_distance
from src.utils.errors import ParameterError, QubitLimitError, SimulationError
from src.simulator.reversible import ReversibleSimulator
from src.simulator.verification import basis_output, is_reversible
from src.models.circuit import RegisterRole
from src.circuits.builder import CircuitBuilder
from src.models.simulation import StateVector
from src.models.gate import GateKind
from tests.conftest import circuito_de

from pydantic import ValidationError
from fractions import Fraction

import numpy as np
import pytest


# Vector de estado

def test_qubit_cero_es_el_bit_mas_alto():
    circuito = circuito_de(3, lambda b: b.x(0))
    final = StatevectorSimulator().run(circuito, StateVector.basis(3).amplitudes)
    assert support(final) == [(0b100, 1 + 0j)]


def test_estado_bell():
    def construir(b):
        b.h(0)
        b.cx(0, 1)

    final = StatevectorSimulator().run(circuito_de(2, construir),
                                       StateVector.basis(2).amplitudes)
    np.testing.assert_allclose(final, np.array([1, 0, 0, 1]) / np.sqrt(2),
                               atol=1e-12)


def test_rz_en_vueltas():
    def construir(b):
        b.h(0)
        b.rz(0, Fraction(1, 3))

    final = StatevectorSimulator().run(circuito_de(1, construir),
                                       StateVector.basis(1).amplitudes)
    esperado = np.array([1, np.exp(2j * np.pi / 3)]) / np.sqrt(2)
    np.testing.assert_allclose(final, esperado, atol=1e-12)


def test_puerta_g_equivale_a_su_definicion():
    def construir(b):
        b.s(0)
        b.h(0)
        b.t(0)
        b.h(0)
        b.sdg(0)

    simulador = StatevectorSimulator()
    definicion = simulador.unitary(circuito_de(1, construir))
    g = simulador.unitary(circuito_de(1, lambda b: b.g(0)))
    np.testing.assert_allclose(g, definicion, atol=1e-12)


def test_medida_genera_ramas_con_probabilidad():
    def construir(b):
        b.h(0)
        b.mz(0, "c0")

    ramas = StatevectorSimulator().run_branches(
        circuito_de(1, construir), StateVector.basis(1).amplitudes)
    assert sorted(r.bits["c0"] for r in ramas) == [0, 1]
    assert [r.probability for r in ramas] == pytest.approx([0.5, 0.5])


def test_medida_determinista_no_ramifica():
    ramas = StatevectorSimulator().run_branches(
        circuito_de(1, lambda b: b.mz(0, "c0")),
        StateVector.basis(1).amplitudes)
    assert len(ramas) == 1 and ramas[0].bits == {"c0": 0}


def test_correccion_clasica_fusiona_ramas():
    def construir(b):
        b.h(0)
        b.mz(0, "c0")
        b.add(GateKind.X, 0, condition="c0")

    ramas = StatevectorSimulator().run_branches(
        circuito_de(1, construir), StateVector.basis(1).amplitudes)
    assert len(ramas) == 1
    assert ramas[0].probability == pytest.approx(1.0)
    assert ramas[0].bits == {"c0": None}


def test_bit_clasico_ambiguo_es_un_error():
    def construir(b):
        b.h(0)
        b.mz(0, "c0")
        b.add(GateKind.X, 0, condition="c0")
        b.add(GateKind.Z, 1, condition="c0")

    with pytest.raises(SimulationError):
        StatevectorSimulator().run(circuito_de(2, construir),
                                   StateVector.basis(2).amplitudes)


def test_run_exige_una_sola_rama():
    def construir(b):
        b.h(0)
        b.mz(0, "c0")

    with pytest.raises(SimulationError):
        StatevectorSimulator().run(circuito_de(1, construir),
                                   StateVector.basis(1).amplitudes)


def test_limite_de_qubits(monkeypatch):
    circuito = circuito_de(5, lambda b: b.h(0))
    with pytest.raises(QubitLimitError) as excinfo:
        StatevectorSimulator(qubit_limit=4).run(
            circuito, StateVector.basis(5).amplitudes)
    assert excinfo.value.exit_code == 4

    monkeypatch.setenv("TGF_QUBIT_LIMIT", "3")
    assert StatevectorSimulator().limite == 3


def test_estado_no_normalizado():
    with pytest.raises(ValidationError):
        StateVector(n=1, amplitudes=[1, 1])
    with pytest.raises(ValidationError):
        StateVector(n=2, amplitudes=[1, 0])


def test_estado_de_otra_anchura():
    with pytest.raises(SimulationError):
        StatevectorSimulator().simulate(circuito_de(2, lambda b: b.h(0)),
                                        StateVector.basis(1))


def test_distancia_ignora_la_fase_global():
    a = np.array([1, 1j]) / np.sqrt(2)
    assert state_distance(a, np.exp(0.7j) * a) == pytest.approx(0, abs=1e-7)
    assert state_distance(np.array([1, 0]), np.array([0, 1])) == \
        pytest.approx(np.sqrt(2))


# Registros

def test_codificacion_little_endian_por_registro():
    builder = CircuitBuilder()
    builder.add_register("a", 2, RegisterRole.INDEX)
    builder.add_register("b", 3, RegisterRole.OUTPUT)
    circuito = builder.build()
    indice = basis_index(circuito, {"a": 1, "b": 6})
    # a0 = 1 (qubit 0), b1 = b2 = 1 (qubits 3 y 4)
    assert indice == 0b10011
    assert register_values(circuito, indice) == {"a": 1, "b": 6}
    assert decode_value([2, 3, 4], indice, 5) == 6
    assert encode_value([0, 1], 1, 5) == 0b10000
    with pytest.raises(ValueError):
        encode_value([0], 2, 5)


def test_marginal_y_matriz_reducida():
    builder = CircuitBuilder()
    builder.add_register("a", 1, RegisterRole.INDEX)
    builder.add_register("b", 2, RegisterRole.OUTPUT)
    circuito = builder.build()
    estado = (basis_state(circuito, {"a": 0, "b": 3})
              + basis_state(circuito, {"a": 1, "b": 2})) / np.sqrt(2)
    distribucion = marginal(circuito, estado, ["b"])
    assert distribucion == pytest.approx({(3,): 0.5, (2,): 0.5})

    matriz = split_registers(circuito, estado, circuito.qubits("b"))
    densidad = matriz @ matriz.conj().T
    np.testing.assert_allclose(np.diag(densidad).real, [0, 0, 0.5, 0.5],
                               atol=1e-12)


# Simulador reversible

def test_reversible_acumula_fases_racionales():
    def construir(b):
        b.x(0)
        b.t(0)
        b.s(0)
        b.rz(0, Fraction(1, 16))
        b.cz(0, 1)

    bits, fase, _ = ReversibleSimulator().run(circuito_de(2, construir),
                                              [0, 1])
    assert bits == [1, 1]
    assert fase == Fraction(1, 8) + Fraction(1, 4) + Fraction(1, 16) + \
        Fraction(1, 2)


def test_reversible_macros_y_and():
    def construir(b):
        b.and_(0, 1, 3)
        b.cswap(3, 2, 4)
        b.rccx(0, 2, 4)
        b.and_dag(0, 1, 3)

    circuito = circuito_de(5, construir)
    bits, fase, _ = ReversibleSimulator().run(circuito, [1, 1, 1, 0, 0])
    assert bits == [1, 1, 0, 0, 1]
    # RCCX con a=1, b=0, t=1: fase 1/2
    assert fase == Fraction(1, 2)


def test_reversible_rechaza_and_sobre_objetivo_sucio():
    circuito = circuito_de(3, lambda b: b.and_(0, 1, 2))
    with pytest.raises(SimulationError):
        ReversibleSimulator().run(circuito, [1, 1, 1])


def test_reversible_rechaza_hadamard():
    circuito = circuito_de(1, lambda b: b.h(0))
    assert not is_reversible(circuito)
    with pytest.raises(SimulationError):
        ReversibleSimulator().run(circuito, [0])


def test_reversible_guarda_medidas():
    def construir(b):
        b.x(0)
        b.mz(0, "c0")
        b.add(GateKind.X, 1, condition="c0")

    bits, _, clasicos = ReversibleSimulator().run(circuito_de(2, construir),
                                                  [0, 0])
    assert bits == [1, 1] and clasicos == {"c0": 1}


def test_basis_output_coincide_en_ambos_simuladores():
    def construir(b):
        b.ccx(0, 1, 2)
        b.cx(2, 3)

    circuito = circuito_de(4, construir)
    valores = basis_output(circuito, {"q": 0b0011})
    assert valores == {"q": 0b1111}

    def con_hadamard(b):
        construir(b)
        b.h(0)
        b.h(0)

    denso = basis_output(circuito_de(4, con_hadamard), {"q": 0b0011},
                         StatevectorSimulator())
    assert denso == valores


# Restauración de qubits sucios

def _circuito_con_sucios(restaura: bool):
    builder = CircuitBuilder()
    (x,) = builder.add_register("x", 1, RegisterRole.INDEX)
    d = builder.add_register("d", 2, RegisterRole.DIRTY)
    (t,) = builder.add_register("t", 1, RegisterRole.OUTPUT)
    builder.ccx(x, d[0], t)
    builder.cx(x, d[1])
    builder.ccx(x, d[0], t)
    builder.cx(x, d[1])
    if not restaura:
        builder.x(d[1])
    builder.metadata["index_domain"] = {"x": 2}
    return builder.build()


def test_sucios_restaurados():
    pruebas = verify_dirty_restoration(_circuito_con_sucios(True), trials=4)
    assert len(pruebas) == 8
    assert {p.mode for p in pruebas} == {"basis", "superposition"}
    assert all(p.passed for p in pruebas)


def test_sucios_no_restaurados_se_detectan():
    pruebas = verify_dirty_restoration(_circuito_con_sucios(False), trials=8,
                                       seed=3)
    assert not all(p.passed for p in pruebas)


def test_sucios_version_reversible():
    assert all(p.passed for p in verify_dirty_restoration_reversible(
        _circuito_con_sucios(True), trials=4))
    assert not all(p.passed for p in verify_dirty_restoration_reversible(
        _circuito_con_sucios(False), trials=8, seed=3))


def test_sin_registros_sucios():
    with pytest.raises(ParameterError):
        verify_dirty_restoration(circuito_de(1, lambda b: b.x(0)))

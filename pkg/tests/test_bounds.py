from src.bounds.lower_bounds import (
    evaluate_bounds, lookup_lower_bound, measurement_assisted_lower_bound,
    stateprep_lower_bound
)
from src.bounds.cost_table import cost_table, select_row, selectswap_row
from src.builders.lookup import (
    build_select, build_selectswap, build_selectswap_dirty
)
from src.builders.stateprep import build_state_prep, error_bound
from src.circuits.scheduling import resource_report
from src.models.lookup import DataTable, LookupPlan
from src.models.stateprep import StateSpec
from src.models.bounds import BoundQuery
from src.utils.errors import ParameterError

from pydantic import ValidationError

import numpy as np
import math
import pytest


def _log2_estados(N, epsilon):
    return (N - 1) * math.log2(1 / epsilon) + math.log2(N) / 2


def test_cota_de_consulta():
    assert lookup_lower_bound(BoundQuery(N=1024, b=1, q=10)) == 12
    assert lookup_lower_bound(BoundQuery(N=1024, b=1, q=40)) == 0


@pytest.mark.parametrize("N,b,q", [(1024, 1, 10), (4096, 8, 20), (64, 3, 2)])
def test_cota_de_consulta_es_minima(N, b, q):
    consulta = BoundQuery(N=N, b=b, q=q)
    gamma = lookup_lower_bound(consulta)
    c = consulta.c_clifford
    assert b * N <= 2 * (q * gamma + c * q * q)
    if gamma > 0:
        assert b * N > 2 * (q * (gamma - 1) + c * q * q)


def test_cota_de_preparacion():
    assert stateprep_lower_bound(BoundQuery(N=4, q=2, epsilon=0.01)) == 0
    assert stateprep_lower_bound(
        BoundQuery(N=4, q=2, epsilon=0.01, c_clifford=1)) == 4


def test_cota_con_medidas():
    assert measurement_assisted_lower_bound(4, 0.01) == 3
    assert measurement_assisted_lower_bound(1, 0.5) == 0


@pytest.mark.parametrize("N", [2, 4, 16, 256, 4096])
@pytest.mark.parametrize("epsilon", [0.3, 0.01, 1e-6])
def test_cota_con_medidas_es_la_menor(N, epsilon):
    gamma = measurement_assisted_lower_bound(N, epsilon)
    n = N.bit_length() - 1
    L = _log2_estados(N, epsilon)
    assert 2 + 2 * gamma * (gamma + n) >= L
    if gamma > 0:
        assert 2 + 2 * (gamma - 1) * (gamma - 1 + n) < L


@pytest.mark.parametrize("N,epsilon", [(3, 0.01), (4, 0), (4, 1.0), (0, 0.1)])
def test_cota_con_medidas_parametros_invalidos(N, epsilon):
    with pytest.raises(ParameterError):
        measurement_assisted_lower_bound(N, epsilon)


def test_consulta_de_cotas_invalida():
    with pytest.raises(ValidationError):
        BoundQuery(N=4, epsilon=0)
    with pytest.raises(ValidationError):
        BoundQuery(N=0)


def test_evaluar_las_tres_cotas():
    resultados = evaluate_bounds(BoundQuery(N=4, b=1, q=2, epsilon=0.01))
    assert [r.name for r in resultados] == [
        "lookup", "stateprep", "measurement_assisted"]
    assert resultados[2].value == 3
    assert resultados[2].note


def test_sin_potencia_de_dos_se_omite_la_cota_con_medidas():
    resultados = evaluate_bounds(BoundQuery(N=6, q=3))
    assert [r.name for r in resultados] == ["lookup", "stateprep"]


# Tabla de costes

def test_filas_de_oraculos():
    fila = select_row(16, 2)
    assert (fila.qubits, fila.t_count, fila.t_depth) == (10, 64, 16)
    fila = selectswap_row(16, 2, 4)
    assert fila.t_count == 4 * 4 + 8 * 2 * 4
    assert fila.t_depth == 4 + 2


def test_tabla_completa():
    filas = cost_table(16, 2, 2, 0.01, [4, 1, 2, 2])
    operaciones = [f.operation for f in filas]
    assert len(filas) == 31
    assert operaciones[:2] == ["select", "swap"]
    assert operaciones.count("selectswap") == 3
    assert operaciones.count("selectswap_dirty") == 3
    assert operaciones.count("state") == 6
    assert {f.source for f in filas if f.operation == "unitary"} == {
        "previa", "preparación"}
    optima = next(f for f in filas if f.operation == "optimal_lambda")
    assert optima.lam == 2 and optima.t_count == 64
    assert "isometry_count" in operaciones
    cotas = [f for f in filas if f.operation.endswith("_lower_bound")]
    assert len(cotas) == 3
    assert cotas[0].qubits == 12


def test_tabla_parametros_invalidos():
    with pytest.raises(ParameterError):
        cost_table(16, 2, 2, 0.01, [0])
    with pytest.raises(ParameterError):
        cost_table(16, 2, 2, 0.01, [17])
    with pytest.raises(ParameterError):
        cost_table(16, 2, 2, 1.0, [1])
    with pytest.raises(ParameterError):
        cost_table(16, 0, 2, 0.01, [1])


# Las cotas nunca superan los T medidos

def _consultas_de_consulta():
    for N in (4, 8, 16, 32):
        for b in (1, 2, 3):
            tabla = DataTable(b=b, entries=[(5 * x + 1) % (1 << b)
                                            for x in range(N)])
            yield tabla, build_select(tabla)
            for lam in (2, 4):
                yield tabla, build_selectswap(tabla, LookupPlan(N=N, lam=lam))
                yield tabla, build_selectswap_dirty(
                    tabla, LookupPlan(N=N, lam=lam, dirty=True))


@pytest.mark.parametrize("c_clifford", [4, 0.01])
def test_cota_de_consulta_es_segura(c_clifford):
    for tabla, circuito in _consultas_de_consulta():
        informe = resource_report(circuito)
        consulta = BoundQuery(N=tabla.N, b=tabla.b, q=informe.qubits_total,
                              c_clifford=c_clifford)
        assert lookup_lower_bound(consulta) <= informe.t_count


@pytest.mark.parametrize("N", [4, 8, 16])
@pytest.mark.parametrize("lam", [1, 2])
def test_cotas_de_preparacion_son_seguras(N, lam):
    rng = np.random.default_rng(N + lam)
    spec = StateSpec(amplitudes=rng.normal(size=N) + 1j * rng.normal(size=N))
    b, epsilon = 6, 0.01
    informe = resource_report(build_state_prep(spec, lam, b, epsilon))
    total = informe.t_count + informe.rz_t_budget
    precision = min(0.5, error_bound(spec.n, b, epsilon))
    for c_clifford in (4, 0.01):
        consulta = BoundQuery(N=N, q=informe.qubits_total, epsilon=precision,
                              c_clifford=c_clifford)
        assert stateprep_lower_bound(consulta) <= total
    assert measurement_assisted_lower_bound(N, precision) <= total

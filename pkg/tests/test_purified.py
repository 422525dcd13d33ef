from src.builders.purified import (
    alias_decompose, alias_words, build_purified_prep, exact_distribution,
    purified_distribution
)
from src.simulator.registers import marginal
from src.models.stateprep import AliasTable
from src.utils.errors import ParameterError
from tests.conftest import circuito_de

from pydantic import ValidationError

import numpy as np
import pytest


def test_tabla_alias_de_pesos_enteros():
    tabla = alias_decompose([1, 2, 3, 2], 3)
    assert tabla.rounded == [4, 8, 12, 8]
    assert tabla.keep == [4, 8, 8, 8]
    assert tabla.alias == [2, 1, 2, 3]
    assert tabla.distribucion() == pytest.approx([1 / 8, 1 / 4, 3 / 8, 1 / 4])


def test_palabras_alias():
    tabla = alias_decompose([1, 2, 3, 2], 3)
    # keep = 2^b se guarda como 0 con alias propio
    assert alias_words(tabla) == [4 | 2 << 3, 1 << 3, 2 << 3, 3 << 3]


@pytest.mark.parametrize("N", [2, 5, 8, 33])
@pytest.mark.parametrize("b", [1, 3, 6])
def test_tabla_alias_aleatoria(rng, N, b):
    pesos = rng.random(N)
    tabla = alias_decompose(pesos, b)
    assert sum(tabla.rounded) == N << b
    cota = 1 / (N << b)
    np.testing.assert_allclose(tabla.distribucion(),
                               exact_distribution(pesos), atol=cota + 1e-12)


def test_pesos_con_ceros():
    tabla = alias_decompose([0, 0, 5, 0], 2)
    assert tabla.rounded == [0, 0, 16, 0]
    assert tabla.keep[:2] == [0, 0] and tabla.alias[:2] == [2, 2]


@pytest.mark.parametrize("pesos,b", [
    ([], 2),
    ([1, -1], 2),
    ([0, 0], 2),
    ([1, 1], 0),
])
def test_pesos_invalidos(pesos, b):
    with pytest.raises(ParameterError):
        alias_decompose(pesos, b)


def test_tabla_alias_incoherente():
    with pytest.raises(ValidationError):
        AliasTable(b=1, rounded=[1, 3], keep=[1, 2], alias=[0, 1])
    with pytest.raises(ValidationError):
        AliasTable(b=1, rounded=[2, 1], keep=[2, 1], alias=[0, 1])


@pytest.mark.parametrize("lam", [1, 2, 3, 4])
def test_distribucion_purificada_exacta(rng, lam):
    pesos = rng.random(8)
    circuito = build_purified_prep(pesos, lam, 3, macro_form=True)
    tabla = alias_decompose(pesos, 3)
    np.testing.assert_allclose(purified_distribution(circuito),
                               tabla.distribucion(), atol=1e-12)
    assert circuito.metadata["alias_table"]["rounded"] == tabla.rounded


def test_distribucion_purificada_simulada(simulator):
    pesos = [0.1, 0.4, 0.2, 0.3]
    circuito = build_purified_prep(pesos, 1, 2)
    assert circuito.num_qubits == 11
    inicial = np.zeros(1 << circuito.num_qubits, dtype=np.complex128)
    inicial[0] = 1
    ramas = simulator.run_branches(circuito, inicial)
    distribucion = np.zeros(4)
    for rama in ramas:
        for (x,), p in marginal(circuito, rama.amplitudes, ["x"]).items():
            distribucion[x] += rama.probability * p
    np.testing.assert_allclose(distribucion,
                               alias_decompose(pesos, 2).distribucion(),
                               atol=1e-9)


def test_purificada_parametros_invalidos():
    with pytest.raises(ParameterError):
        build_purified_prep([1, 2, 3], 1, 2)
    with pytest.raises(ParameterError):
        build_purified_prep([1, 2, 3, 4], 0, 2)
    with pytest.raises(ParameterError):
        purified_distribution(circuito_de(1, lambda b: b.x(0)))

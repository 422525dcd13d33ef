from src.builders.isometry import (
    build_isometry, build_reflection, gram_schmidt, isometry_column_errors,
    isometry_output, random_isometry, reflection_states
)
from src.builders.stateprep import (
    compute_angles, error_bound, reconstruct_amplitudes
)
from src.models.stateprep import StateSpec
from src.models.strategies import RotationMethod
from src.models.isometry import IsometrySpec
from src.utils.errors import ParameterError

from pydantic import ValidationError

import numpy as np
import pytest


def test_gram_schmidt_ortonormaliza(rng):
    base = gram_schmidt(rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5)))
    np.testing.assert_allclose(base.conj() @ base.T, np.eye(3), atol=1e-12)
    with pytest.raises(ParameterError):
        gram_schmidt([[1, 0], [2, 0]])


def test_gram_schmidt_conserva_el_orden(rng):
    filas = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    base = gram_schmidt(filas)
    np.testing.assert_allclose(base[0], filas[0] / np.linalg.norm(filas[0]),
                               atol=1e-12)
    # cada fila original vive en el espacio de las primeras filas de la base
    coeficientes = filas @ base.conj().T
    np.testing.assert_allclose(np.triu(coeficientes, 1), 0, atol=1e-12)
    assert np.all(np.diag(coeficientes).real > 0)
    with pytest.raises(ParameterError):
        gram_schmidt(np.ones((3, 2)))


def test_isometria_aleatoria(rng):
    spec = random_isometry(8, 3, rng)
    assert (spec.K, spec.N, spec.n) == (3, 8, 3)
    with pytest.raises(ParameterError):
        random_isometry(2, 3, rng)


def test_columnas_no_ortonormales():
    with pytest.raises(ValidationError):
        IsometrySpec(columns=[[1, 0], [1, 1]])
    with pytest.raises(ValidationError):
        IsometrySpec(columns=[[1, 0], [0, 1], [0, 0]])


def test_producto_de_reflexiones_exacto(rng):
    spec = random_isometry(8, 4, rng)
    programa = reflection_states(spec)
    assert programa.verified
    assert programa.K == 4
    assert programa.source_index == 8
    assert max(programa.column_errors) < 1e-10
    np.testing.assert_allclose(np.linalg.norm(programa.states, axis=1), 1)


def test_producto_de_reflexiones_cuantizado(rng):
    spec = random_isometry(4, 2, rng)
    programa = reflection_states(spec, b=6)
    assert 0 < max(programa.column_errors) <= _cota_columnas(2, 2, 6)


def _cota_columnas(K: int, n: int, b: int, epsilon_fourier: float = 0.0):
    return K * error_bound(n, b, epsilon_fourier)


@pytest.mark.parametrize("K", [1, 2, 4])
@pytest.mark.parametrize("N", [4, 8])
def test_error_por_columna_dentro_de_la_cota(N, K):
    rng = np.random.default_rng(100 * N + K)
    n = N.bit_length() - 1
    for _ in range(10):
        programa = reflection_states(random_isometry(N, K, rng), b=14)
        assert programa.verified
        assert max(programa.column_errors) <= _cota_columnas(K, n, 14)


def _reflexion_ideal(u: np.ndarray, k: int) -> np.ndarray:
    N = u.size
    w = np.zeros(2 * N, dtype=np.complex128)
    w[N + k] = 1
    w[:N] = -u
    w /= np.sqrt(2)
    return np.eye(2 * N) - 2 * np.outer(w, w.conj())


@pytest.mark.parametrize("method,b", [
    (RotationMethod.PHASE_GRADIENT, 4),
    (RotationMethod.CONTROLLED_ROTATION, 8),
])
def test_una_reflexion(rng, simulator, method, b):
    spec = random_isometry(2, 2, rng)
    circuito = build_reflection(spec, 1, 1, b, 0.01, method)
    assert circuito.metadata["columns"] == [1]
    u = reconstruct_amplitudes(
        compute_angles(StateSpec(amplitudes=spec.columns[1]), b))
    ideal = _reflexion_ideal(u, 1)
    for a in (0, 1):
        for x in range(2):
            salida = isometry_output(circuito, x, a, simulator)
            np.testing.assert_allclose(salida, ideal[:, a * 2 + x],
                                       atol=1e-8)


def test_isometria_pequena(rng, simulator):
    spec = random_isometry(2, 2, rng)
    circuito = build_isometry(spec, 1, 4, 0.01)
    errores = isometry_column_errors(circuito, spec, simulator)
    esperados = reflection_states(spec, b=4).column_errors
    np.testing.assert_allclose(errores, esperados, atol=1e-6)


@pytest.mark.slow
def test_isometria_con_rotaciones_controladas(rng, simulator):
    spec = random_isometry(4, 2, rng)
    circuito = build_isometry(spec, 1, 10, 0.001,
                              RotationMethod.CONTROLLED_ROTATION)
    assert circuito.num_qubits == 16
    errores = isometry_column_errors(circuito, spec, simulator)
    esperados = reflection_states(spec, b=10).column_errors
    np.testing.assert_allclose(errores, esperados, atol=1e-6)
    assert max(errores) <= _cota_columnas(2, 2, 10, 1e-6)


def test_isometria_parametros_invalidos(rng):
    spec = random_isometry(4, 2, rng)
    with pytest.raises(ParameterError):
        build_reflection(spec, 2, 1, 4, 0.01)
    with pytest.raises(ParameterError):
        build_isometry(spec, 0, 4, 0.01)
    with pytest.raises(ParameterError):
        build_isometry(spec, 1, 1, 0.01)
    with pytest.raises(ParameterError):
        build_isometry(random_isometry(3, 1, rng), 1, 4, 0.01)

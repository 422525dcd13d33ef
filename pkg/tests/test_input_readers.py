from src.parsers.input_readers import InputParser, StateFile
from src.utils.errors import CircuitParseError

import numpy as np
import pytest
import json


@pytest.fixture
def parser():
    return InputParser()


def _escribir(ruta, contenido):
    ruta.write_text(contenido, encoding="utf-8")
    return str(ruta)


# Tablas

def test_tabla_json(parser, tmp_path):
    ruta = _escribir(tmp_path / "tabla.json",
                     json.dumps({"b": 3, "entries": [5, 0, 7, 2]}))
    tabla = parser.parse_table(ruta)
    assert (tabla.N, tabla.b) == (4, 3)
    assert tabla.entries == [5, 0, 7, 2]


def test_tabla_csv_con_cabecera(parser, tmp_path):
    ruta = _escribir(tmp_path / "tabla.csv",
                     "# b=2\n3\n1  # comentario\n\n0\n2\n")
    tabla = parser.parse_table(ruta)
    assert tabla.b == 2
    assert tabla.entries == [3, 1, 0, 2]


def test_tabla_csv_sin_cabecera(parser, tmp_path):
    ruta = _escribir(tmp_path / "tabla.csv", "1\n2\n")
    with pytest.raises(CircuitParseError, match="b=<int>"):
        parser.parse_table(ruta)


def test_tabla_csv_entrada_no_entera(parser, tmp_path):
    ruta = _escribir(tmp_path / "tabla.csv", "# b=2\n1\nx\n")
    with pytest.raises(CircuitParseError) as error:
        parser.parse_table(ruta)
    assert error.value.linea == 3
    assert error.value.exit_code == 1


def test_tabla_json_sin_entradas(parser, tmp_path):
    ruta = _escribir(tmp_path / "tabla.json", json.dumps({"b": 3}))
    with pytest.raises(CircuitParseError, match="entries"):
        parser.parse_table(ruta)


def test_tabla_json_invalido(parser, tmp_path):
    ruta = _escribir(tmp_path / "tabla.json", "{\"b\": 3,")
    with pytest.raises(CircuitParseError, match="JSON inválido"):
        parser.parse_table(ruta)


def test_entrada_que_no_cabe_en_b_bits(parser, tmp_path):
    ruta = _escribir(tmp_path / "tabla.json",
                     json.dumps({"b": 2, "entries": [1, 4]}))
    with pytest.raises(CircuitParseError, match="no cabe en 2 bits") as error:
        parser.parse_table(ruta)
    assert error.value.exit_code == 1


@pytest.mark.parametrize("datos", [
    {"entries": [1, 0, 1, 1]},
    {"b": 1, "entries": ["x", 0]},
    {"b": 0, "entries": [0]},
    {"b": 2, "entries": []},
])
def test_tabla_json_mal_formada(parser, tmp_path, datos):
    ruta = _escribir(tmp_path / "tabla.json", json.dumps(datos))
    with pytest.raises(CircuitParseError, match="tabla inválida"):
        parser.parse_table(ruta)


def test_fichero_inexistente(parser, tmp_path):
    with pytest.raises(CircuitParseError, match="no existe"):
        parser.parse_table(str(tmp_path / "nada.csv"))


# Estados, pesos e isometrías

def test_estado_con_amplitudes_complejas_y_reales(parser, tmp_path):
    ruta = _escribir(tmp_path / "estado.json", json.dumps(
        {"amplitudes": [[1, 0], [0, 1], 0.5, [-1, 0.25]]}))
    spec = parser.parse_state_spec(ruta)
    assert spec.N == 4
    np.testing.assert_allclose(spec.amplitudes, [1, 1j, 0.5, -1 + 0.25j])


def test_estado_mal_formado(parser, tmp_path):
    ruta = _escribir(tmp_path / "estado.json",
                     json.dumps({"amplitudes": [[1, 0, 0]]}))
    with pytest.raises(CircuitParseError, match=r"\[re, im\]"):
        parser.parse_state_spec(ruta)
    ruta = _escribir(tmp_path / "otro.json", json.dumps({"amps": [1]}))
    with pytest.raises(CircuitParseError, match="amplitudes"):
        parser.parse_state_spec(ruta)


def test_pesos_en_varias_lineas(parser, tmp_path):
    ruta = _escribir(tmp_path / "pesos.csv", "0.1, 0.4\n# nada\n0.2,0.3\n")
    assert parser.parse_weights(ruta) == [0.1, 0.4, 0.2, 0.3]


def test_pesos_invalidos(parser, tmp_path):
    with pytest.raises(CircuitParseError) as error:
        parser.parse_weights(_escribir(tmp_path / "a.csv", "1\ndos\n"))
    assert error.value.linea == 2
    with pytest.raises(CircuitParseError, match="no hay pesos"):
        parser.parse_weights(_escribir(tmp_path / "b.csv", "# vacío\n"))


def test_isometria(parser, tmp_path):
    raiz = 1 / np.sqrt(2)
    ruta = _escribir(tmp_path / "iso.json", json.dumps({
        "n": 1,
        "columns": [[[raiz, 0], [raiz, 0]], [[raiz, 0], [-raiz, 0]]],
    }))
    spec = parser.parse_isometry(ruta)
    assert (spec.K, spec.N, spec.n) == (2, 2, 1)


def test_isometria_con_dimension_incorrecta(parser, tmp_path):
    ruta = _escribir(tmp_path / "iso.json", json.dumps({
        "n": 2, "columns": [[1, 0]]}))
    with pytest.raises(CircuitParseError, match="4 componentes"):
        parser.parse_isometry(ruta)


# Ficheros de estado

def test_fichero_de_estado(tmp_path):
    ruta = str(tmp_path / "sub" / "psi.state")
    amplitudes = np.zeros(8, dtype=np.complex128)
    amplitudes[1] = 0.6
    amplitudes[6] = 0.8j
    StateFile.write(ruta, amplitudes)
    lineas = open(ruta, encoding="utf-8").read().splitlines()
    assert [linea.split()[0] for linea in lineas] == ["1", "6"]
    np.testing.assert_array_equal(StateFile.read(ruta, 3), amplitudes)


def test_fichero_de_estado_invalido(tmp_path):
    ruta = _escribir(tmp_path / "psi.state", "0 1 0\n9 1 0\n")
    with pytest.raises(CircuitParseError, match="fuera de rango"):
        StateFile.read(ruta, 3)
    ruta = _escribir(tmp_path / "psi2.state", "0 1\n")
    with pytest.raises(CircuitParseError, match="índice re im"):
        StateFile.read(ruta, 3)

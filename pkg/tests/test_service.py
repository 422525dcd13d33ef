from src.services.synthesis_service import SynthesisService, crear_config
from src.config.settings import Settings
from src.utils.errors import INTERNAL_ERROR_EXIT_CODE, ParameterError
from app import main

from unittest.mock import MagicMock

import numpy as np
import pytest
import json


@pytest.fixture
def salida(tmp_path):
    return tmp_path / "salida"


@pytest.fixture
def tabla_csv(tmp_path):
    ruta = tmp_path / "tabla.csv"
    ruta.write_text("# b=3\n5\n0\n7\n2\n6\n1\n3\n4\n", encoding="utf-8")
    return str(ruta)


def _json(ruta):
    return json.loads(ruta.read_text(encoding="utf-8"))


def _escribir(ruta, contenido):
    ruta.write_text(contenido, encoding="utf-8")
    return str(ruta)


def test_configuracion_invalida_es_error_de_parametros():
    with pytest.raises(ParameterError, match="lam"):
        crear_config(command="lookup", lam=0)
    assert crear_config(command="lookup", lam=None).lam == 1


def test_subcomando_desconocido():
    assert SynthesisService().run(crear_config(command="nada")) == 2


# Síntesis

def test_lookup_verificado(tabla_csv, salida):
    codigo = main(["lookup", "--in", tabla_csv, "--lambda", "2", "--verify",
                   "--out-dir", str(salida), "--name", "consulta"])
    assert codigo == 0
    assert (salida / "consulta.circ").read_text().startswith("qubits ")
    informe = _json(salida / "consulta.report.json")
    assert informe["command"] == "lookup"
    assert informe["t_count"] > 0
    veredicto = _json(salida / "consulta.verify.json")
    assert veredicto["passed"]


def test_lookup_sucio_con_pruebas(tmp_path, salida):
    tabla = _escribir(tmp_path / "t.json",
                      json.dumps({"b": 1, "entries": [0, 1, 1, 0]}))
    codigo = main(["lookup", "--in", tabla, "--lambda", "2", "--dirty",
                   "--verify", "--trials", "2", "--out-dir", str(salida)])
    assert codigo == 0
    veredicto = _json(salida / "lookup.verify.json")
    assert veredicto["passed"]
    assert len(veredicto["trials"]) == 4


def test_lookup_por_indicadora(tabla_csv, salida):
    assert main(["lookup", "--in", tabla_csv, "--k", "1", "--verify",
                 "--out-dir", str(salida)]) == 0
    assert _json(salida / "lookup.verify.json")["method"] == "reversible"


def test_preparacion_de_estado(tmp_path, salida):
    estado = _escribir(tmp_path / "psi.json", json.dumps(
        {"amplitudes": [[1, 0], [0, 2], [-3, 0], [1, 1]]}))
    codigo = main(["stateprep", "--in", estado, "--b", "4",
                   "--epsilon", "0.01", "--verify", "--out-dir", str(salida)])
    assert codigo == 0
    veredicto = _json(salida / "stateprep.verify.json")
    assert veredicto["passed"]
    assert veredicto["details"]["error"] <= veredicto["details"]["cota"]
    assert (salida / "stateprep.state").exists()


def test_preparacion_purificada(tmp_path, salida):
    pesos = _escribir(tmp_path / "pesos.csv", "0.1, 0.4, 0.2, 0.3\n")
    codigo = main(["purified", "--in", pesos, "--b", "2", "--verify",
                   "--out-dir", str(salida)])
    assert codigo == 0
    veredicto = _json(salida / "purified.verify.json")
    assert veredicto["checks"] == 4
    assert veredicto["details"]["distancia_l1"] <= 0.5


def test_isometria_identidad(tmp_path, salida):
    isometria = _escribir(tmp_path / "iso.json", json.dumps(
        {"n": 1, "columns": [[1, 0], [0, 1]]}))
    codigo = main(["isometry", "--in", isometria, "--b", "4",
                   "--epsilon", "0.01", "--verify", "--out-dir", str(salida)])
    assert codigo == 0
    assert max(_json(salida / "isometry.verify.json")["details"]
               ["errores"]) < 1e-6


def test_fanout(salida):
    assert main(["fanout", "--n", "5", "--strategy", "linear", "--verify",
                 "--out-dir", str(salida)]) == 0
    assert _json(salida / "fanout.verify.json")["passed"]


def test_red_swap(salida):
    assert main(["swapnet", "--N", "4", "--b", "1", "--verify",
                 "--out-dir", str(salida)]) == 0
    assert _json(salida / "swapnet.report.json")["t_count"] > 0


# Cotas y tablas

def test_cotas(tmp_path):
    destino = tmp_path / "cotas.json"
    assert main(["bounds", "--N", "1024", "--b", "1", "--q", "10",
                 "--out", str(destino)]) == 0
    datos = _json(destino)
    assert datos["query"]["N"] == 1024
    assert datos["bounds"][0]["name"] == "lookup"
    assert datos["bounds"][0]["value"] == 12


def test_tabla_de_costes(tmp_path, salida):
    destino = tmp_path / "costes.csv"
    assert main(["table", "--N", "16", "--b", "2", "--K", "2",
                 "--epsilon", "0.01", "--lambdas", "1,2,4",
                 "--out", str(destino), "--out-dir", str(salida)]) == 0
    lineas = destino.read_text(encoding="utf-8").splitlines()
    assert lineas[0].startswith("operation,source,lam")
    assert len(lineas) == 32
    assert (salida / "table.txt").read_text().startswith("operation")


def test_compromiso(tmp_path):
    destino = tmp_path / "tradeoff.csv"
    assert main(["tradeoff", "--N", "4", "--b", "4", "--lambdas", "1,2",
                 "--out", str(destino)]) == 0
    lineas = destino.read_text(encoding="utf-8").splitlines()
    assert lineas[0] == "lambda,t_count,t_depth,qubits"
    assert [linea.split(",")[0] for linea in lineas[1:]] == ["1", "2"]


# Circuitos existentes

def test_simular_circuito(tmp_path):
    circuito = _escribir(tmp_path / "bell.circ", "qubits 2\nH 0\nCX 0 1\n")
    destino = tmp_path / "bell.state"
    assert main(["simulate", "--in", circuito, "--out", str(destino),
                 "--out-dir", str(tmp_path)]) == 0
    lineas = destino.read_text(encoding="utf-8").splitlines()
    assert [linea.split()[0] for linea in lineas] == ["0", "3"]
    assert float(lineas[0].split()[1]) == pytest.approx(1 / np.sqrt(2))


def test_simular_con_medida(tmp_path):
    circuito = _escribir(tmp_path / "m.circ", "qubits 1\nH 0\nMZ 0 -> c0\n")
    destino = tmp_path / "m.state"
    assert main(["simulate", "--in", circuito, "--out", str(destino),
                 "--out-dir", str(tmp_path), "--name", "m"]) == 0
    ramas = _json(tmp_path / "m.branches.json")["ramas"]
    assert len(ramas) == 2
    assert [r["probabilidad"] for r in ramas] == pytest.approx([0.5, 0.5])
    assert (tmp_path / "m.state.rama0").exists()


def test_simular_desde_fichero_de_estado(tmp_path):
    circuito = _escribir(tmp_path / "x.circ", "qubits 2\nX 1\n")
    estado = _escribir(tmp_path / "in.state", "2 1 0\n")
    destino = tmp_path / "out.state"
    assert main(["simulate", "--in", circuito, "--state", estado,
                 "--out", str(destino), "--out-dir", str(tmp_path)]) == 0
    assert destino.read_text().split()[0] == "3"


DIRTY = """\
qubits 2
register a 0 1 workspace-clean
register d 1 1 workspace-dirty
"""


def test_sucios_restaurados(tmp_path, salida):
    circuito = _escribir(tmp_path / "ok.circ", DIRTY + "CX 1 0\nCX 1 0\n")
    assert main(["verify-dirty", "--in", circuito, "--trials", "2",
                 "--out-dir", str(salida)]) == 0
    assert _json(salida / "verify-dirty.verify.json")["checks"] == 4


# Códigos de salida

def test_sucios_sin_restaurar_es_fallo_de_verificacion(tmp_path, salida):
    circuito = _escribir(tmp_path / "mal.circ", DIRTY + "X 1\n")
    assert main(["verify-dirty", "--in", circuito,
                 "--out-dir", str(salida)]) == 3
    assert _json(salida / "verify-dirty.verify.json")["verdict"] == "FAIL"


def test_fichero_inexistente_es_error_de_parseo(tmp_path):
    assert main(["lookup", "--in", str(tmp_path / "nada.csv")]) == 1


def test_circuito_mal_formado_es_error_de_parseo(tmp_path):
    circuito = _escribir(tmp_path / "roto.circ", "qubits 2\nFOO 0\n")
    assert main(["simulate", "--in", circuito]) == 1


@pytest.mark.parametrize("contenido", [
    {"entries": [1, 0, 1, 1]},
    {"b": 1, "entries": ["x", 0]},
    {"b": 1, "entries": [1, 2]},
])
def test_tabla_mal_formada_es_error_de_parseo(tmp_path, contenido):
    tabla = _escribir(tmp_path / "tabla.json", json.dumps(contenido))
    assert main(["lookup", "--in", tabla, "--out-dir",
                 str(tmp_path / "salida")]) == 1


def test_fallo_interno_tiene_su_propio_codigo(monkeypatch, salida):
    def romper(*args, **kwargs):
        raise KeyError("registro")

    monkeypatch.setattr("src.services.synthesis_service.build_fanout", romper)
    assert main(["fanout", "--n", "3", "--out-dir", str(salida)]) == \
        INTERNAL_ERROR_EXIT_CODE


def test_parametros_fuera_de_rango(tabla_csv, salida):
    assert main(["lookup", "--in", tabla_csv, "--lambda", "0"]) == 2
    assert main(["lookup", "--in", tabla_csv, "--lambda", "9",
                 "--out-dir", str(salida)]) == 2
    assert main(["bounds", "--N", "4", "--q", "2", "--epsilon", "2"]) == 2


def test_limite_de_qubits(tmp_path, monkeypatch):
    monkeypatch.setenv("TGF_QUBIT_LIMIT", "2")
    circuito = _escribir(tmp_path / "grande.circ", "qubits 3\nH 0\n")
    assert main(["simulate", "--in", circuito,
                 "--out-dir", str(tmp_path)]) == 4


# Guardado en MongoDB

def test_guardar_sin_configuracion(monkeypatch, salida):
    monkeypatch.setattr(Settings, "MONGO_URI", None)
    assert main(["--store", "fanout", "--n", "3",
                 "--out-dir", str(salida)]) == 2


def test_guardar_ejecucion(monkeypatch, salida):
    monkeypatch.setattr(Settings, "MONGO_URI", "mongodb://localhost:27017")
    monkeypatch.setattr(Settings, "MONGO_DATABASE", "tgf_test")
    conexion = MagicMock()
    repositorio = MagicMock()
    repositorio.return_value.guardar_ejecucion.return_value = {
        'ejecuciones_guardadas': 1, 'errores': []}
    monkeypatch.setattr("src.services.synthesis_service.MongoDBConnection",
                        conexion)
    monkeypatch.setattr("src.services.synthesis_service.RunRepository",
                        repositorio)

    assert main(["--store", "fanout", "--n", "3", "--verify",
                 "--out-dir", str(salida)]) == 0
    (documento,), _ = repositorio.return_value.guardar_ejecucion.call_args
    assert documento["command"] == "fanout"
    assert documento["config"]["n"] == 3
    assert documento["verification"]["passed"]
    assert documento["estadisticas"]["qubits"] >= 4
    assert len(documento["id"]) == 32
    conexion.return_value.__enter__.return_value.create_indexes \
        .assert_called_once()


def test_error_al_guardar(monkeypatch, salida):
    monkeypatch.setattr(Settings, "MONGO_URI", "mongodb://localhost:27017")
    monkeypatch.setattr(Settings, "MONGO_DATABASE", "tgf_test")
    repositorio = MagicMock()
    repositorio.return_value.guardar_ejecucion.return_value = {
        'ejecuciones_guardadas': 0, 'errores': ["Sin conexión"]}
    monkeypatch.setattr("src.services.synthesis_service.MongoDBConnection",
                        MagicMock())
    monkeypatch.setattr("src.services.synthesis_service.RunRepository",
                        repositorio)
    assert main(["--store", "bounds", "--N", "4", "--q", "2",
                 "--out-dir", str(salida)]) == 2

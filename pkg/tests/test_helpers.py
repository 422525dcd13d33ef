from src.utils.helpers import COLUMNAS_TABLA, SynthesisHelpers
from src.models.circuit import RegisterRole
from src.circuits.builder import CircuitBuilder
from src.models.bounds import CostRow

import json


def _filas():
    return [
        CostRow(operation="select", source="previa", lam=1, qubits=10,
                t_count=64, t_depth=16),
        CostRow(operation="stateprep_lower_bound", source="cota",
                qubits=12, t_count=0, note="Γ_min"),
    ]


def test_id_estable_e_independiente_del_orden():
    a = SynthesisHelpers.generar_id_ejecucion({"command": "lookup", "lam": 2})
    b = SynthesisHelpers.generar_id_ejecucion({"lam": 2, "command": "lookup"})
    c = SynthesisHelpers.generar_id_ejecucion({"lam": 3, "command": "lookup"})
    assert a == b != c
    assert len(a) == 32


def test_formatear_valor():
    assert SynthesisHelpers.formatear_valor(None) == "-"
    assert SynthesisHelpers.formatear_valor(12.345) == "12.3"
    assert SynthesisHelpers.formatear_valor(7) == "7"


def test_tabla_de_texto_alineada():
    texto = SynthesisHelpers.formatear_tabla(_filas())
    lineas = texto.splitlines()
    assert len(lineas) == 4
    assert lineas[0].split() == COLUMNAS_TABLA
    assert set(lineas[1].replace(" ", "")) == {"-"}
    assert lineas[2].split()[:4] == ["select", "previa", "1", "10"]
    # Sin λ ni profundidad
    assert lineas[3].split()[2] == "-"
    inicio = lineas[0].index("t_count")
    assert lineas[2][inicio:].startswith("64")


def test_exportar_csv(tmp_path):
    ruta = tmp_path / "tablas" / "costes.csv"
    SynthesisHelpers.exportar_csv(SynthesisHelpers.filas_a_dicts(_filas()),
                                  COLUMNAS_TABLA, str(ruta))
    lineas = ruta.read_text(encoding="utf-8").splitlines()
    assert lineas[0] == ",".join(COLUMNAS_TABLA)
    assert lineas[1] == "select,previa,1,10,64,16,"
    assert lineas[2] == "stateprep_lower_bound,cota,,12,0,,Γ_min"


def test_exportar_a_json(tmp_path):
    ruta = tmp_path / "informe.json"
    SynthesisHelpers.exportar_a_json({"b": 1, "a": "λ"}, str(ruta))
    texto = ruta.read_text(encoding="utf-8")
    assert texto.index('"a"') < texto.index('"b"')
    assert "λ" in texto
    assert json.loads(texto) == {"a": "λ", "b": 1}


def test_estadisticas_del_circuito():
    builder = CircuitBuilder()
    builder.add_register("x", 2, RegisterRole.INDEX)
    builder.add_register("d", 3, RegisterRole.DIRTY)
    builder.h(0)
    builder.h(1)
    builder.ccx(0, 1, 2)
    estadisticas = SynthesisHelpers.calcular_estadisticas(builder.build())
    assert estadisticas == {
        'total_puertas': 3,
        'puertas_por_tipo': {"CCX": 1, "H": 2},
        'qubits': 5,
        'qubits_por_papel': {"index": 2, "workspace-dirty": 3},
        'registros': 2,
    }

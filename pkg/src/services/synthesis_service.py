from src.builders.stateprep import (
    build_state_prep, error_bound, prepared_state, preparation_error,
    state_prep_tradeoff
)
from src.builders.isometry import (
    build_isometry, isometry_column_errors, reflection_states
)
from src.builders.purified import (
    alias_decompose, build_purified_prep, exact_distribution,
    purified_distribution
)
from src.simulator.verification import (
    is_reversible, verify_fanout, verify_lookup, verify_swap_network
)
from src.simulator.dirty import (
    verify_dirty_restoration, verify_dirty_restoration_reversible
)
from src.builders.lookup import build_select, build_selectswap
from src.builders.lookup import build_selectswap_dirty
from src.builders.indicator import build_lookup_via_indicator
from src.builders.swapnet import build_swap_network
from src.builders.fanout import build_fanout
from src.bounds.lower_bounds import evaluate_bounds
from src.bounds.cost_table import cost_table
from src.parsers.circuit_parser import CircuitParser, CircuitWriter
from src.parsers.input_readers import InputParser, StateFile
from src.simulator.statevector import StatevectorSimulator
from src.database.connection import MongoDBConnection
from src.database.repository import RunRepository
from src.circuits.scheduling import resource_report
from src.utils.circuit_validator import CircuitValidator
from src.utils.helpers import COLUMNAS_TABLA, SynthesisHelpers
from src.utils.errors import (
    INTERNAL_ERROR_EXIT_CODE, ConfigurationError, ParameterError,
    SynthesisError, VerificationError
)
from src.models.simulation import StateVector, VerificationRecord
from src.models.resources import CostModel, ResourceReport
from src.models.strategies import SwapStrategy
from src.models.stateprep import StateSpec
from src.models.lookup import LookupPlan
from src.models.run_config import RunConfig
from src.models.bounds import BoundQuery
from src.models.circuit import Circuit
from src.config.settings import settings

from typing import Any, Callable, Dict, List, NamedTuple, Optional
from pydantic import ValidationError
from pathlib import Path

import numpy as np
import logging

_handlers: List[logging.Handler] = [logging.StreamHandler()]
if settings.LOG_FILE:
    _handlers.insert(0, logging.FileHandler(settings.LOG_FILE))

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=_handlers
)

logger = logging.getLogger(__name__)

COLUMNAS_TRADEOFF = ["lambda", "t_count", "t_depth", "qubits"]


class Resultado(NamedTuple):
    """Artefactos de un subcomando"""
    circuit: Optional[Circuit] = None
    report: Optional[ResourceReport] = None
    verification: Optional[VerificationRecord] = None
    extras: Dict[str, Any] = {}


def crear_config(**kwargs) -> RunConfig:
    """RunConfig a partir de argumentos; los errores de pydantic pasan a
    ParameterError"""
    try:
        return RunConfig(**{k: v for k, v in kwargs.items() if v is not None})
    except ValidationError as e:
        errores = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
            for err in e.errors())
        raise ParameterError(f"Configuración inválida: {errores}")


class SynthesisService:
    """Ejecuta los subcomandos: síntesis, informe, verificación y guardado"""

    def __init__(
        self,
        model: Optional[CostModel] = None,
        simulator: Optional[StatevectorSimulator] = None
    ):
        self.model = model or CostModel()
        self.simulator = simulator or StatevectorSimulator(model=self.model)
        self.parser = InputParser()
        self.comandos: Dict[str, Callable[[RunConfig], Resultado]] = {
            "lookup": self._lookup,
            "stateprep": self._stateprep,
            "purified": self._purified,
            "isometry": self._isometry,
            "fanout": self._fanout,
            "swapnet": self._swapnet,
            "bounds": self._bounds,
            "table": self._table,
            "simulate": self._simulate,
            "verify-dirty": self._verify_dirty,
            "tradeoff": self._tradeoff,
        }

    def run(
        self,
        config: RunConfig
    ) -> int:
        """
        Ejecuta un subcomando y devuelve el código de salida

        Returns:
            0 si todo fue bien; 1 parseo, 2 parámetros, 3 verificación
            fallida, 4 límite del simulador
        """
        try:
            comando = self.comandos.get(config.command)
            if comando is None:
                raise ConfigurationError(
                    f"Subcomando desconocido: {config.command}")

            if config.toffoli_strategy != self.model.toffoli_strategy:
                self.model = self.model.model_copy(
                    update={"toffoli_strategy": config.toffoli_strategy})
                self.simulator.model = self.model

            logger.info(f"=== INICIANDO {config.command.upper()} ===")
            # Paso 1: construir los artefactos del subcomando
            logger.info(" Paso 1: Construyendo...")
            resultado = comando(config)

            # Paso 2: validar y exportar
            logger.info(" Paso 2: Exportando artefactos...")
            self._exportar(config, resultado)

            # Paso 3: guardar la ejecución
            if config.store:
                logger.info(" Paso 3: Guardando la ejecución en MongoDB...")
                self._guardar(config, resultado)

            if resultado.verification is not None:
                logger.info(
                    f" Verificación: {resultado.verification.verdict}")
                if not resultado.verification.passed:
                    raise VerificationError(
                        f"{config.command}: la verificación ha fallado")

            logger.info(f"=== {config.command.upper()} COMPLETADO ===")
            return 0

        except SynthesisError as e:
            logger.error(f" {type(e).__name__}: {e}")
            return e.exit_code
        except ValidationError as e:
            logger.error(f" Parámetros inválidos: {e}")
            return ParameterError.exit_code
        except Exception as e:
            logger.error(f" Error inesperado: {e}", exc_info=True)
            return INTERNAL_ERROR_EXIT_CODE

    # Subcomandos de síntesis

    def _lookup(self, config: RunConfig) -> Resultado:
        tabla = self.parser.parse_table(self._entrada(config))

        def construir(macro_form: bool = False) -> Circuit:
            if config.k_split is not None:
                return build_lookup_via_indicator(
                    tabla, config.k_split, config.lam, config.dirty,
                    config.fanout_strategy)
            if config.lam == 1 and not config.dirty:
                return build_select(tabla, config.fanout_strategy)
            plan = LookupPlan(N=tabla.N, lam=config.lam, dirty=config.dirty)
            constructor = (build_selectswap_dirty if config.dirty
                           else build_selectswap)
            return constructor(tabla, plan, config.swap_strategy,
                               config.fanout_strategy, macro_form)

        circuito = construir()
        verificacion = None
        if config.verify:
            objetivo = self._verificable(circuito, lambda: construir(True))
            verificacion = verify_lookup(objetivo, tabla, self.simulator)
            if config.dirty:
                pruebas = self._pruebas_sucias(objetivo, config)
                verificacion = verificacion.model_copy(update={
                    "passed": verificacion.passed and
                    all(p.passed for p in pruebas),
                    "trials": pruebas,
                    "max_deviation": max(
                        [verificacion.max_deviation] +
                        [p.max_deviation for p in pruebas]),
                })
        return Resultado(circuito, self._informe(circuito), verificacion,
                         {"N": tabla.N, "b": tabla.b})

    def _stateprep(self, config: RunConfig) -> Resultado:
        spec = self.parser.parse_state_spec(self._entrada(config))
        circuito = build_state_prep(spec, config.lam, config.b,
                                    config.epsilon, config.method,
                                    fanout_strategy=config.fanout_strategy)
        verificacion = None
        extras: Dict[str, Any] = {}
        if config.verify:
            estado = prepared_state(circuito, self.simulator)
            error = preparation_error(spec, estado)
            cota = error_bound(spec.n, config.b, config.epsilon)
            verificacion = VerificationRecord(
                passed=error <= cota, method="statevector",
                max_deviation=error, checks=1,
                details={"error": error, "cota": cota})
            extras["estado"] = estado
        return Resultado(circuito, self._informe(circuito), verificacion,
                         extras)

    def _purified(self, config: RunConfig) -> Resultado:
        pesos = self.parser.parse_weights(self._entrada(config))
        circuito = build_purified_prep(pesos, config.lam, config.b,
                                       config.fanout_strategy)
        verificacion = None
        if config.verify:
            enumerable = circuito
            if config.lam > 1:
                enumerable = build_purified_prep(
                    pesos, config.lam, config.b, config.fanout_strategy,
                    macro_form=True)
            obtenida = purified_distribution(enumerable)
            alias = np.array(alias_decompose(pesos, config.b).distribucion())
            desviacion = float(np.max(np.abs(obtenida - alias)))
            distancia = float(np.sum(np.abs(
                obtenida - exact_distribution(pesos))))
            cota = 2.0 ** (1 - config.b)
            verificacion = VerificationRecord(
                passed=desviacion <= 1e-10 and distancia <= cota,
                method="reversible", max_deviation=desviacion,
                checks=int(obtenida.size),
                details={"distancia_l1": distancia, "cota_l1": cota})
        return Resultado(circuito, self._informe(circuito), verificacion)

    def _isometry(self, config: RunConfig) -> Resultado:
        spec = self.parser.parse_isometry(self._entrada(config))
        circuito = build_isometry(spec, config.lam, config.b, config.epsilon,
                                  config.method, config.fanout_strategy)
        programa = reflection_states(spec, config.b)
        extras = {"errores_modelo": programa.column_errors,
                  "modelo_verificado": programa.verified}
        verificacion = None
        if config.verify:
            errores = isometry_column_errors(circuito, spec, self.simulator)
            cota = spec.K * error_bound(spec.n, config.b, config.epsilon)
            verificacion = VerificationRecord(
                passed=max(errores) <= cota, method="statevector",
                max_deviation=max(errores), checks=spec.K,
                details={"errores": errores, "cota": cota})
        return Resultado(circuito, self._informe(circuito), verificacion,
                         extras)

    def _fanout(self, config: RunConfig) -> Resultado:
        if config.n is None:
            raise ParameterError("fanout necesita --n")
        circuito = build_fanout(config.n, config.fanout_strategy)
        verificacion = None
        if config.verify:
            verificacion = verify_fanout(circuito, seed=config.seed)
        return Resultado(circuito, self._informe(circuito), verificacion)

    def _swapnet(self, config: RunConfig) -> Resultado:
        if config.N is None:
            raise ParameterError("swapnet necesita --N")
        estrategia = config.swap_strategy or SwapStrategy.LINEAR

        def construir(macro_form: bool = False) -> Circuit:
            return build_swap_network(config.N, config.b, estrategia,
                                      config.fanout_strategy, macro_form)

        circuito = construir()
        verificacion = None
        if config.verify:
            objetivo = self._verificable(circuito, lambda: construir(True))
            verificacion = verify_swap_network(
                objetivo, config.N, config.b, seed=config.seed,
                simulator=self.simulator)
        return Resultado(circuito, self._informe(circuito), verificacion)

    # Subcomandos sin circuito

    def _bounds(self, config: RunConfig) -> Resultado:
        if config.N is None or config.q is None:
            raise ParameterError("bounds necesita --N y --q")
        consulta = BoundQuery(N=config.N, b=config.b, K=config.K,
                              q=config.q, epsilon=config.epsilon)
        cotas = evaluate_bounds(consulta)
        for cota in cotas:
            logger.info(f" Γ_min {cota.name}: {cota.value}")
        return Resultado(extras={
            "query": consulta.model_dump(mode="json"),
            "bounds": [c.model_dump(mode="json") for c in cotas],
        })

    def _table(self, config: RunConfig) -> Resultado:
        if config.N is None:
            raise ParameterError("table necesita --N")
        lambdas = config.lambdas or self._potencias(config.N)
        filas = cost_table(config.N, config.b, config.K, config.epsilon,
                           lambdas)
        logger.info("\n" + SynthesisHelpers.formatear_tabla(filas))
        return Resultado(extras={"filas": filas})

    def _tradeoff(self, config: RunConfig) -> Resultado:
        if config.input_path:
            spec = self.parser.parse_state_spec(config.input_path)
        else:
            if config.N is None:
                raise ParameterError("tradeoff necesita --in o --N")
            rng = np.random.default_rng(config.seed)
            spec = StateSpec(amplitudes=rng.normal(size=config.N) +
                             1j * rng.normal(size=config.N))
        lambdas = config.lambdas or list(range(1, spec.N + 1))
        filas = state_prep_tradeoff(spec, lambdas, config.b, config.epsilon,
                                    config.method, self.model)
        mejor = min(filas, key=lambda f: (f["t_count"], f["lambda"]))
        logger.info(f" λ óptima medida: {mejor['lambda']} "
                    f"({mejor['t_count']} T)")
        return Resultado(extras={"tradeoff": filas})

    # Subcomandos sobre circuitos existentes

    def _simulate(self, config: RunConfig) -> Resultado:
        circuito = CircuitParser().parse_file(self._entrada(config))
        self.simulator.comprobar_limite(circuito)
        if config.state_path:
            amplitudes = StateFile.read(config.state_path,
                                        circuito.num_qubits)
        else:
            amplitudes = np.zeros(1 << circuito.num_qubits,
                                  dtype=np.complex128)
            amplitudes[0] = 1
        ramas = self.simulator.simulate(
            circuito, StateVector(n=circuito.num_qubits,
                                  amplitudes=amplitudes))
        logger.info(f" {len(ramas)} ramas tras la simulación")
        return Resultado(extras={"ramas": ramas})

    def _verify_dirty(self, config: RunConfig) -> Resultado:
        circuito = CircuitParser().parse_file(self._entrada(config))
        pruebas = self._pruebas_sucias(circuito, config)
        verificacion = VerificationRecord(
            passed=all(p.passed for p in pruebas),
            method=("statevector"
                    if circuito.num_qubits <= self.simulator.limite
                    else "reversible"),
            max_deviation=max(p.max_deviation for p in pruebas),
            checks=len(pruebas),
            trials=pruebas)
        return Resultado(verification=verificacion)

    # Auxiliares

    def _entrada(self, config: RunConfig) -> str:
        if not config.input_path:
            raise ParameterError(f"{config.command} necesita --in")
        return config.input_path

    def _informe(self, circuito: Circuit) -> ResourceReport:
        validacion = CircuitValidator.validar_circuito(circuito)
        if not validacion['valido']:
            for error in validacion['errores']:
                logger.error(f"   ERROR: {error}")
            raise ConfigurationError("El circuito construido no es válido")
        for advertencia in validacion['advertencias']:
            logger.debug(f"   ADVERTENCIA: {advertencia}")
        informe = resource_report(circuito, self.model)
        logger.info(f" Recursos: {informe.t_count} T, profundidad T "
                    f"{informe.t_depth}, {informe.qubits_total} qubits")
        return informe

    def _verificable(
        self,
        circuito: Circuit,
        reconstruir: Callable[[], Circuit]
    ) -> Circuit:
        """El circuito, o su forma de macros si excede el simulador denso"""
        if is_reversible(circuito) or \
                circuito.num_qubits <= self.simulator.limite:
            return circuito
        logger.warning(f" {circuito.num_qubits} qubits superan el límite "
                       f"denso: se verifica la forma de macros")
        return reconstruir()

    def _pruebas_sucias(self, circuito: Circuit, config: RunConfig):
        if circuito.num_qubits <= self.simulator.limite:
            return verify_dirty_restoration(circuito, config.trials,
                                            config.seed, self.simulator)
        if not is_reversible(circuito):
            self.simulator.comprobar_limite(circuito)
        return verify_dirty_restoration_reversible(circuito, config.trials,
                                                   config.seed)

    @staticmethod
    def _potencias(N: int) -> List[int]:
        lambdas = []
        lam = 1
        while lam <= N:
            lambdas.append(lam)
            lam *= 2
        return lambdas

    def _ruta(self, config: RunConfig, sufijo: str) -> str:
        nombre = config.name or config.command
        return str(Path(config.out_dir) / f"{nombre}{sufijo}")

    def _exportar(self, config: RunConfig, resultado: Resultado):
        """Escribe circuito, informe, veredicto y ficheros propios"""
        if resultado.circuit is not None:
            CircuitWriter.write_file(resultado.circuit,
                                     self._ruta(config, ".circ"))
            estadisticas = SynthesisHelpers.calcular_estadisticas(
                resultado.circuit)
            logger.info(f" Estadísticas del circuito: {estadisticas}")
        if resultado.report is not None:
            datos = resultado.report.model_dump(mode="json")
            datos["command"] = config.command
            SynthesisHelpers.exportar_a_json(
                datos, self._ruta(config, ".report.json"))
        if resultado.verification is not None:
            datos = resultado.verification.model_dump(mode="json")
            datos["verdict"] = resultado.verification.verdict
            SynthesisHelpers.exportar_a_json(
                datos, self._ruta(config, ".verify.json"))

        extras = resultado.extras
        if "estado" in extras:
            StateFile.write(self._ruta(config, ".state"), extras["estado"])
        if "bounds" in extras:
            SynthesisHelpers.exportar_a_json(
                {"query": extras["query"], "bounds": extras["bounds"]},
                config.out_path or self._ruta(config, ".json"))
        if "filas" in extras:
            filas = extras["filas"]
            SynthesisHelpers.exportar_csv(
                SynthesisHelpers.filas_a_dicts(filas), COLUMNAS_TABLA,
                config.out_path or self._ruta(config, ".csv"))
            ruta_texto = self._ruta(config, ".txt")
            Path(ruta_texto).parent.mkdir(parents=True, exist_ok=True)
            Path(ruta_texto).write_text(
                SynthesisHelpers.formatear_tabla(filas), encoding="utf-8")
        if "tradeoff" in extras:
            SynthesisHelpers.exportar_csv(
                extras["tradeoff"], COLUMNAS_TRADEOFF,
                config.out_path or self._ruta(config, ".csv"))
        if "ramas" in extras:
            self._exportar_ramas(config, extras["ramas"])

    def _exportar_ramas(self, config: RunConfig, ramas):
        destino = config.out_path or self._ruta(config, ".state")
        resumen = []
        for i, rama in enumerate(ramas):
            ruta = destino if len(ramas) == 1 else f"{destino}.rama{i}"
            StateFile.write(ruta, rama.amplitudes)
            resumen.append({"fichero": Path(ruta).name,
                            "probabilidad": rama.probability,
                            "bits": rama.bits})
        SynthesisHelpers.exportar_a_json(
            {"ramas": resumen}, self._ruta(config, ".branches.json"))

    def _guardar(self, config: RunConfig, resultado: Resultado):
        if not settings.mongo_configurado():
            raise ConfigurationError(
                "--store necesita MONGO_URI y MONGO_DATABASE")
        datos_config = config.model_dump(mode="json")
        documento = {
            "id": SynthesisHelpers.generar_id_ejecucion(datos_config),
            "command": config.command,
            "config": datos_config,
            "report": (resultado.report.to_mongo()
                       if resultado.report else None),
            "verification": (resultado.verification.to_mongo()
                             if resultado.verification else None),
        }
        if resultado.circuit is not None:
            documento["estadisticas"] = \
                SynthesisHelpers.calcular_estadisticas(resultado.circuit)
        with MongoDBConnection() as conn:
            if not conn._is_connected():
                raise ConfigurationError("No se pudo conectar a MongoDB")
            conn.create_indexes()
            stats = RunRepository(conn).guardar_ejecucion(documento)
            if stats['errores']:
                raise ConfigurationError(
                    f"Error guardando la ejecución: {stats['errores']}")


def run(config: RunConfig) -> int:
    return SynthesisService().run(config)

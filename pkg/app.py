from src.services.synthesis_service import SynthesisService, crear_config
from src.models.strategies import (
    FanoutStrategy, RotationMethod, SwapStrategy, ToffoliStrategy
)
from src.utils.errors import SynthesisError

from typing import List, Optional

import argparse
import logging
import sys


def _lista_enteros(texto: str) -> List[int]:
    try:
        return [int(v) for v in texto.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"lista de enteros no válida: {texto}")


def _valores(enum) -> List[str]:
    return [e.value for e in enum]


def _comunes(sub: argparse.ArgumentParser):
    sub.add_argument("--out-dir", dest="out_dir", help="Directorio de salida")
    sub.add_argument("--out", dest="out_path", help="Fichero de salida")
    sub.add_argument("--name", help="Prefijo de los artefactos")
    sub.add_argument("--seed", type=int, help="Semilla de aleatoriedad")
    sub.add_argument("--toffoli", dest="toffoli_strategy",
                     choices=_valores(ToffoliStrategy))


def _sintesis(sub: argparse.ArgumentParser):
    sub.add_argument("--in", dest="input_path", help="Fichero de entrada")
    sub.add_argument("--lambda", dest="lam", type=int, help="λ")
    sub.add_argument("--b", type=int, help="Bits de precisión")
    sub.add_argument("--epsilon", type=float, help="Error objetivo ε")
    sub.add_argument("--fanout", dest="fanout_strategy",
                     choices=_valores(FanoutStrategy))
    sub.add_argument("--verify", action="store_true", default=None,
                     help="Verificar por simulación")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tgf",
        description="Síntesis Clifford+T de consultas de datos, estados e "
                    "isometrías con qubits sucios")
    parser.add_argument("--store", action="store_true",
                        help="Guardar la ejecución en MongoDB")
    parser.add_argument("--log-level", dest="log_level", default="INFO",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    subs = parser.add_subparsers(dest="command", required=True)

    lookup = subs.add_parser("lookup", help="Oráculo de consulta de datos")
    _sintesis(lookup)
    lookup.add_argument("--dirty", action="store_true", default=None)
    lookup.add_argument("--k", dest="k_split", type=int,
                        help="Corte del lookup por función indicadora")
    lookup.add_argument("--swap", dest="swap_strategy",
                        choices=_valores(SwapStrategy))
    lookup.add_argument("--trials", type=int)

    for nombre, ayuda in (("stateprep", "Preparación de estados"),
                          ("isometry", "Síntesis de isometrías")):
        sub = subs.add_parser(nombre, help=ayuda)
        _sintesis(sub)
        sub.add_argument("--method", choices=_valores(RotationMethod))

    purified = subs.add_parser("purified",
                               help="Matriz densidad purificada")
    _sintesis(purified)

    fanout = subs.add_parser("fanout", help="CNOT multi-objetivo")
    fanout.add_argument("--n", type=int, required=True)
    fanout.add_argument("--strategy", dest="fanout_strategy",
                        choices=_valores(FanoutStrategy))
    fanout.add_argument("--verify", action="store_true", default=None)

    swapnet = subs.add_parser("swapnet", help="Red Swap")
    swapnet.add_argument("--N", type=int, required=True)
    swapnet.add_argument("--b", type=int)
    swapnet.add_argument("--strategy", dest="swap_strategy",
                         choices=_valores(SwapStrategy))
    swapnet.add_argument("--fanout", dest="fanout_strategy",
                         choices=_valores(FanoutStrategy))
    swapnet.add_argument("--verify", action="store_true", default=None)

    bounds = subs.add_parser("bounds", help="Cotas inferiores de T")
    bounds.add_argument("--N", type=int, required=True)
    bounds.add_argument("--b", type=int)
    bounds.add_argument("--q", type=int, required=True)
    bounds.add_argument("--K", type=int)
    bounds.add_argument("--epsilon", type=float)

    table = subs.add_parser("table", help="Tablas de costes")
    table.add_argument("--N", type=int, required=True)
    table.add_argument("--b", type=int)
    table.add_argument("--K", type=int)
    table.add_argument("--epsilon", type=float)
    table.add_argument("--lambdas", type=_lista_enteros)

    tradeoff = subs.add_parser("tradeoff",
                               help="Coste de la preparación frente a λ")
    tradeoff.add_argument("--in", dest="input_path")
    tradeoff.add_argument("--N", type=int)
    tradeoff.add_argument("--b", type=int)
    tradeoff.add_argument("--epsilon", type=float)
    tradeoff.add_argument("--lambdas", type=_lista_enteros)
    tradeoff.add_argument("--method", choices=_valores(RotationMethod))

    simulate = subs.add_parser("simulate", help="Simula un circuito")
    simulate.add_argument("--in", dest="input_path", required=True)
    simulate.add_argument("--state", dest="state_path")

    dirty = subs.add_parser("verify-dirty",
                            help="Restauración de registros sucios")
    dirty.add_argument("--in", dest="input_path", required=True)
    dirty.add_argument("--trials", type=int)

    for sub in subs.choices.values():
        _comunes(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.getLogger().setLevel(args.log_level)
    opciones = vars(args)
    opciones.pop("log_level")
    try:
        config = crear_config(**opciones)
    except SynthesisError as e:
        logging.getLogger(__name__).error(str(e))
        return e.exit_code
    return SynthesisService().run(config)


if __name__ == '__main__':
    sys.exit(main())

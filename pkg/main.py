#!/usr/bin/env python3
"""
Point d'entrée principal du laboratoire Vicsek
Simulation et vérification du consensus sous graphes de voisinage commutants

Usage :
    python main.py run <fichier|nom> [--out DIR] [--steps N] [--tolerance X] [--graph-log]
    python main.py run --batch <répertoire> [--workers K]
    python main.py verify <fichier|nom>
    python main.py scenarios
"""

import argparse
import os
import sys

# Ajout du chemin src au PYTHONPATH
current_dir = os.path.dirname(os.path.abspath(__file__))
src_path = os.path.join(current_dir, 'src')
sys.path.insert(0, src_path)

from config import OUTPUT_DIR  # noqa: E402
from errors import VicsekError  # noqa: E402
from scenarios.library import resolve_scenario  # noqa: E402
from utils.logger import get_logger, setup_logging  # noqa: E402
from vicsek_runner import EXIT_ERROR, EXIT_OK, VicsekExperimentRunner  # noqa: E402

logger = get_logger("main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Consensus de caps (règle du plus proche voisin) sous signaux de commutation"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("run", "exécuter un scénario"),
                            ("verify", "exécuter un scénario et vérifier les invariants")):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("scenario", nargs="?", help="fichier de scénario ou nom de la bibliothèque")
        cmd.add_argument("--out", default=OUTPUT_DIR, help="répertoire de sortie (défaut : %(default)s)")
        cmd.add_argument("--steps", type=int, help="remplace le nombre de pas du scénario")
        cmd.add_argument("--tolerance", type=float, help="remplace la tolérance de consensus")
        cmd.add_argument("--graph-log", action="store_true", help="écrire graphs.log (graphes par pas)")
        cmd.add_argument("--batch", metavar="DIR", help="exécuter tous les scénarios *.json du répertoire")
        cmd.add_argument("--workers", type=int, default=1, help="processus pour --batch (défaut : 1)")

    sub.add_parser("scenarios", help="lister la bibliothèque de scénarios")
    return parser


def list_library() -> int:
    runner = VicsekExperimentRunner()
    try:
        entries = runner.list_scenarios()
    except VicsekError as e:
        logger.error(f"❌ {e}")
        return EXIT_ERROR
    width = max((len(e.name) for e in entries), default=0)
    for entry in entries:
        print(f"{entry.name:<{width}}  {entry.description}  [{entry.exercises}]")
    return EXIT_OK


def execute(args: argparse.Namespace) -> int:
    verify = args.command == "verify"
    runner = VicsekExperimentRunner(args.out, graph_log=args.graph_log,
                                    steps=args.steps, tolerance=args.tolerance)

    if args.batch:
        if args.scenario:
            logger.error("❌ --batch et un scénario unique sont exclusifs")
            return EXIT_ERROR
        return runner.run_batch(args.batch, workers=args.workers, verify=verify)

    if not args.scenario:
        logger.error("❌ Scénario manquant (fichier, nom de la bibliothèque ou --batch)")
        return EXIT_ERROR

    try:
        scn = resolve_scenario(args.scenario).with_overrides(args.steps, args.tolerance)
    except VicsekError as e:
        logger.error(f"❌ {e}")
        return EXIT_ERROR

    return runner.verify_scenario(scn) if verify else runner.run_scenario(scn)


def main(argv=None) -> int:
    """Fonction principale"""
    setup_logging()
    args = build_parser().parse_args(argv)
    if args.command == "scenarios":
        return list_library()
    return execute(args)


if __name__ == "__main__":
    sys.exit(main())

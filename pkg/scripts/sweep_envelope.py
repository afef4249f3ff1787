#!/usr/bin/env python3
"""
Balayage de l'enveloppe min/max sur des signaux aléatoires graines par
graines : chaque trajectoire doit avoir un minimum croissant et un maximum
décroissant. Écrit un résumé CSV (une ligne par graine).

Usage :
    python scripts/sweep_envelope.py [--seeds 1000] [--steps 500] [--out out/sweep_envelope.csv]
"""

import argparse
import os
import sys
from collections import defaultdict
from typing import Dict, Iterable, List, Tuple

current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(current_dir, '..', 'src'))

import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
from tqdm import tqdm  # noqa: E402

from analysis.envelope import EnvelopeSeries, envelope_series  # noqa: E402
from config import ENVELOPE_TOLERANCE, OUTPUT_DIR  # noqa: E402
from dynamics.headings import HeadingState, closed_neighborhood_means  # noqa: E402
from dynamics.simulation import simulate  # noqa: E402
from signals.generators import make_random  # noqa: E402
from utils.logger import get_logger, setup_logging  # noqa: E402
from utils.random_streams import keyed_generator  # noqa: E402

logger = get_logger("sweep_envelope")

PROBABILITIES = (0.1, 0.5, 1.0)
AGENT_COUNTS = range(2, 11)


def sweep_parameters(seed: int) -> Tuple[int, float]:
    """n et p déduits de la graine"""
    return AGENT_COUNTS[seed % len(AGENT_COUNTS)], PROBABILITIES[seed % len(PROBABILITIES)]


def initial_headings(seed: int, n: int) -> np.ndarray:
    return keyed_generator(seed, 0).uniform(0.0, 6.283185307179586, n)


def summary_row(seed: int, n: int, p: float, envelope: EnvelopeSeries) -> dict:
    violations = envelope.monotonicity_violations(ENVELOPE_TOLERANCE)
    return {
        "seed": seed,
        "n": n,
        "p": p,
        "initial_spread": float(envelope.spread[0]),
        "final_spread": float(envelope.spread[-1]),
        "violations": len(violations),
        "first_violation": violations[0] if violations else None,
    }


def sweep_run(seed: int, steps: int) -> dict:
    """Une trajectoire simulée pas à pas, caps tirés dans [0, 2*pi)"""
    n, p = sweep_parameters(seed)
    initial = HeadingState(initial_headings(seed, n))
    traj = simulate("leaderless", initial, make_random(n, seed, p), steps, seed=seed)
    return summary_row(seed, n, p, envelope_series(traj))


def sweep_batch(seeds: Iterable[int], steps: int) -> List[dict]:
    """
    Mêmes lignes que sweep_run, les graines de mêmes (n, p) avançant ensemble :
    adjacences tirées par fenêtre, moyenne appliquée au lot entier à chaque pas.
    """
    groups: Dict[Tuple[int, float], List[int]] = defaultdict(list)
    for seed in seeds:
        groups[sweep_parameters(seed)].append(seed)

    rows = {}
    for (n, p), members in tqdm(groups.items(), desc="Groupes (n, p)"):
        values = np.stack([initial_headings(seed, n) for seed in members])
        lower = np.empty((len(members), steps + 1))
        upper = np.empty((len(members), steps + 1))
        lower[:, 0], upper[:, 0] = values.min(axis=1), values.max(axis=1)
        if steps > 0:
            adjacency = np.stack([make_random(n, seed, p).adjacency_window(0, steps) for seed in members])
            for t in range(steps):
                values = closed_neighborhood_means(values, adjacency[:, t])
                lower[:, t + 1], upper[:, t + 1] = values.min(axis=1), values.max(axis=1)
        for k, seed in enumerate(members):
            rows[seed] = summary_row(seed, n, p, EnvelopeSeries(lower[k], upper[k]))
    return [rows[seed] for seed in sorted(rows)]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Balayage de la monotonie de l'enveloppe")
    parser.add_argument("--seeds", type=int, default=1000)
    parser.add_argument("--steps", type=int, default=500)
    parser.add_argument("--out", default=os.path.join(OUTPUT_DIR, "sweep_envelope.csv"))
    args = parser.parse_args(argv)

    setup_logging()
    logger.info(f"🚀 Balayage : {args.seeds} graines, {args.steps} pas")

    df = pd.DataFrame(sweep_batch(range(args.seeds), args.steps))

    os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
    df.to_csv(args.out, index=False, lineterminator="\n")
    logger.info(f"✅ Résumé sauvegardé : {args.out}")

    failing = df[df["violations"] > 0]
    if len(failing):
        logger.error(f"❌ {len(failing)} trajectoires violent la monotonie de l'enveloppe")
        return 1
    logger.info(f"📊 Écart final médian : {df['final_spread'].median():.3g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

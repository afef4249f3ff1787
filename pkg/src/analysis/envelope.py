"""Enveloppes min/max des caps et bornes d'accumulation estimées sur la queue."""

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import pandas as pd

from config import ENVELOPE_TOLERANCE
from dynamics.simulation import Trajectory
from errors import DomainError


@dataclass(frozen=True, eq=False)
class EnvelopeSeries:
    """Minimum et maximum des caps des suiveurs à chaque pas"""

    lower: np.ndarray
    upper: np.ndarray

    @property
    def spread(self) -> np.ndarray:
        return self.upper - self.lower

    def monotonicity_violations(self, tol: float = ENVELOPE_TOLERANCE) -> List[int]:
        """Pas t >= 1 où le min a baissé ou le max a augmenté de plus de tol"""
        lower_drop = self.lower[1:] < self.lower[:-1] - tol
        upper_rise = self.upper[1:] > self.upper[:-1] + tol
        return (np.flatnonzero(lower_drop | upper_rise) + 1).tolist()

    def is_monotone(self, tol: float = ENVELOPE_TOLERANCE) -> bool:
        return not self.monotonicity_violations(tol)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t": np.arange(self.lower.size),
            "theta_min": self.lower,
            "theta_max": self.upper,
            "spread": self.spread,
        })


def envelope_series(traj: Trajectory) -> EnvelopeSeries:
    """Le leader, constant, est exclu de l'enveloppe"""
    followers = traj.followers
    if followers.shape[0] == 0:
        raise DomainError("trajectoire vide")
    return EnvelopeSeries(followers.min(axis=1), followers.max(axis=1))


@dataclass(frozen=True, eq=False)
class TailBounds:
    """
    Estimations à horizon fini de m_i = min Accu(Theta_i) et M_i = max Accu(Theta_i) :
    min et max de chaque agent sur la fenêtre de queue.
    """

    agents: Tuple[int, ...]
    m_hat: np.ndarray
    M_hat: np.ndarray
    window_start: int
    window_length: int

    @property
    def m_overall(self) -> float:
        return float(self.m_hat.min())

    @property
    def M_overall(self) -> float:
        return float(self.M_hat.max())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"agent": self.agents, "m_hat": self.m_hat, "M_hat": self.M_hat})


def tail_bounds(traj: Trajectory, tail_fraction: float) -> TailBounds:
    if not 0 < tail_fraction <= 1:
        raise DomainError(f"fraction de queue hors de ]0, 1] : {tail_fraction}")
    followers = traj.followers
    records = followers.shape[0]
    length = max(1, math.ceil(tail_fraction * records))
    tail = followers[records - length:]
    return TailBounds(
        agents=tuple(range(1, traj.n + 1)),
        m_hat=tail.min(axis=0),
        M_hat=tail.max(axis=0),
        window_start=records - length,
        window_length=length,
    )

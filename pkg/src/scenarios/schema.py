"""
Schéma strict des fichiers de scénario (JSON). Toute clé inconnue est une
erreur ; chaque violation est rapportée avec son chemin.
"""

import json
import math
from typing import Annotated, Any, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from config import CONSENSUS_TOLERANCE
from dynamics.simulation import SimulationMode
from errors import ScenarioError
from signals.switching import NeighborhoodKind, TailPolicy

TWO_PI = 2 * math.pi

ShapeName = Literal["empty", "complete", "star", "path", "cycle"]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ShapeGraph(StrictModel):
    shape: ShapeName
    center: Optional[int] = None


class EdgesGraph(StrictModel):
    edges: List[Tuple[int, int]]


GraphSpec = Union[ShapeName, ShapeGraph, EdgesGraph]


class ConstantSignalSpec(StrictModel):
    type: Literal["constant"]
    graph: GraphSpec


class PeriodicSignalSpec(StrictModel):
    type: Literal["periodic"]
    phases: List[GraphSpec] = Field(min_length=1)
    period: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _period_matches_phases(self):
        if self.period is not None and self.period != len(self.phases):
            raise ValueError(f"period = {self.period} mais {len(self.phases)} phases")
        return self


class SparseSignalSpec(StrictModel):
    type: Literal["sparse"]
    connect_times: Union[Literal["powers_of_two"], List[Annotated[int, Field(ge=0)]]]
    event_graph: GraphSpec
    idle_graph: Optional[GraphSpec] = None


class BoundedIntervalsSignalSpec(StrictModel):
    type: Literal["bounded_intervals"]
    bound: int = Field(ge=1)
    schedules: List[List[GraphSpec]] = Field(min_length=1)
    starts: Optional[List[Annotated[int, Field(ge=0)]]] = None
    first: Optional[int] = Field(default=None, ge=0)
    stride: Optional[int] = Field(default=None, ge=1)
    idle_graph: Optional[GraphSpec] = None

    @model_validator(mode="after")
    def _one_start_rule(self):
        arithmetic = self.first is not None or self.stride is not None
        if self.starts is not None and arithmetic:
            raise ValueError("starts et first/stride sont exclusifs")
        if self.starts is None and (self.first is None or self.stride is None):
            raise ValueError("starts ou la paire first/stride est requis")
        return self


class RandomSignalSpec(StrictModel):
    type: Literal["random"]
    seed: int = Field(ge=0, lt=2 ** 64)
    p: float = Field(ge=0.0, le=1.0)


class TraceSignalSpec(StrictModel):
    type: Literal["trace"]
    graphs: List[GraphSpec]
    tail: TailPolicy


class GeometricSignalSpec(StrictModel):
    type: Literal["geometric"]


SignalSpec = Annotated[
    Union[
        ConstantSignalSpec,
        PeriodicSignalSpec,
        SparseSignalSpec,
        BoundedIntervalsSignalSpec,
        RandomSignalSpec,
        TraceSignalSpec,
        GeometricSignalSpec,
    ],
    Field(discriminator="type"),
]


class SeededHeadings(StrictModel):
    """Tirages uniformes dans [low, high), flux indexé par (seed, agent)"""

    seed: int = Field(ge=0, lt=2 ** 64)
    low: float = 0.0
    high: float = TWO_PI

    @model_validator(mode="after")
    def _range_inside_circle(self):
        if not 0 <= self.low < self.high <= TWO_PI:
            raise ValueError(f"0 <= low < high <= 2*pi attendu, reçu [{self.low}, {self.high})")
        return self


class Geometry(StrictModel):
    r: float = Field(gt=0)
    v: Union[float, List[float]]
    neighborhood: NeighborhoodKind = NeighborhoodKind.CLOSED
    initial_positions: List[Tuple[float, float]] = Field(min_length=1)

    @model_validator(mode="after")
    def _positive_speeds(self):
        speeds = self.v if isinstance(self.v, list) else [self.v]
        if not speeds or any(not s > 0 for s in speeds):
            raise ValueError("v doit être > 0")
        if isinstance(self.v, list) and len(self.v) != len(self.initial_positions):
            raise ValueError(f"{len(self.v)} vitesses pour {len(self.initial_positions)} positions")
        return self


class SeparationSpec(StrictModel):
    alpha: float
    beta: float
    gamma: float

    @model_validator(mode="after")
    def _ordered(self):
        if not self.alpha < self.beta < self.gamma:
            raise ValueError("alpha < beta < gamma attendu")
        return self


class Scenario(StrictModel):
    name: str = Field(pattern=r"^[A-Za-z0-9][A-Za-z0-9._-]*$")
    description: str = ""
    exercises: str = ""
    n: int = Field(ge=1)
    mode: SimulationMode = SimulationMode.LEADERLESS
    theta0: Optional[float] = None
    initial_headings: Union[List[float], SeededHeadings]
    signal: SignalSpec
    steps: int = Field(ge=0)
    tolerance: float = Field(default=CONSENSUS_TOLERANCE, gt=0)
    geometry: Optional[Geometry] = None
    separation: List[SeparationSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _cross_field_rules(self):
        leader = self.mode is SimulationMode.LEADER
        if leader and self.theta0 is None:
            raise ValueError("theta0 requis en mode leader")
        if not leader and self.theta0 is not None:
            raise ValueError("theta0 interdit en mode sans leader")
        if self.theta0 is not None and not math.isfinite(self.theta0):
            raise ValueError("theta0 non fini")

        geometric = self.signal.type == "geometric"
        if geometric and self.geometry is None:
            raise ValueError("signal géométrique sans bloc geometry")
        if not geometric and self.geometry is not None:
            raise ValueError("bloc geometry réservé au signal géométrique")
        if self.geometry is not None:
            expected = self.n + (1 if leader else 0)
            if len(self.geometry.initial_positions) != expected:
                raise ValueError(
                    f"geometry.initial_positions : {expected} positions attendues"
                    + (" (leader en tête)" if leader else "")
                    + f", reçu {len(self.geometry.initial_positions)}"
                )

        if isinstance(self.initial_headings, list):
            if len(self.initial_headings) != self.n:
                raise ValueError(
                    f"initial_headings : {self.n} caps attendus, reçu {len(self.initial_headings)}"
                )
            outside = [h for h in self.initial_headings if not 0 <= h < TWO_PI]
            if outside:
                raise ValueError(f"initial_headings hors de [0, 2*pi) : {outside}")
        return self

    def with_overrides(self, steps: Optional[int] = None,
                       tolerance: Optional[float] = None) -> "Scenario":
        """Copie revalidée avec --steps / --tolerance"""
        update = {}
        if steps is not None:
            update["steps"] = steps
        if tolerance is not None:
            update["tolerance"] = tolerance
        if not update:
            return self
        return _validate({**self.model_dump(), **update})


def _format_errors(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        path = ".".join(str(part) for part in item["loc"]) or "(racine)"
        lines.append(f"{path}: {item['msg']}")
    return "\n".join(lines)


def _validate(document: Mapping[str, Any]) -> Scenario:
    try:
        return Scenario.model_validate(document)
    except ValidationError as e:
        raise ScenarioError(f"scénario invalide :\n{_format_errors(e)}") from e


def parse_scenario(document: Union[str, bytes, Mapping[str, Any]]) -> Scenario:
    """Texte JSON (UTF-8) ou dictionnaire déjà chargé -> Scenario validé"""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"JSON invalide (ligne {e.lineno}, colonne {e.colno}) : {e.msg}") from e
    if not isinstance(document, Mapping):
        raise ScenarioError("(racine): un objet JSON est attendu")
    return _validate(document)

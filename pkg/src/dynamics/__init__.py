from dynamics.headings import (
    HeadingState,
    HeadingUpdateRule,
    LeaderConfig,
    closed_neighborhood_means,
    step_headings,
    step_headings_leader,
)
from dynamics.planar import PlanarState, geometric_neighbors, step_positions
from dynamics.simulation import SimulationMode, Trajectory, simulate

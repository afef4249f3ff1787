from analysis.envelope import EnvelopeSeries, TailBounds, envelope_series, tail_bounds
from analysis.consensus import (
    NOT_REACHED,
    ConvergenceReport,
    build_report,
    component_limits,
    detect_consensus,
)
from analysis.separation import (
    SeparationBranch,
    SeparationScenario,
    SeparationStatus,
    SeparationVerdict,
    check_separation_step,
    initial_separation_scenario,
    vertices_between,
)

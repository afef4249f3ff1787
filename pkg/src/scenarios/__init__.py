from scenarios.schema import Scenario, parse_scenario
from scenarios.builder import (
    build_graph,
    build_initial_state,
    build_leader,
    build_planar,
    build_separation,
    build_signal,
    seeded_headings,
)
from scenarios.library import ScenarioEntry, list_scenarios, load_scenario, resolve_scenario

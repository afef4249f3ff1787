from signals.switching import (
    POWERS_OF_TWO,
    BoundedIntervalsSignal,
    ConstantSignal,
    GeometricSignal,
    NeighborhoodKind,
    PeriodicSignal,
    RandomSignal,
    SparseEventsSignal,
    SwitchingSignal,
    TailPolicy,
    TraceSignal,
)
from signals.generators import (
    BoundedIntervalsParams,
    SparseEventsParams,
    make_bounded_intervals,
    make_constant,
    make_geometric,
    make_periodic,
    make_random,
    make_sparse_events,
    make_trace,
)
from signals.limits import (
    JointConnectivity,
    LimitGraph,
    first_disconnected_window,
    limit_graph,
    verify_finally_jointly_connected,
    window_union,
)

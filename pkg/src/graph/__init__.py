from graph.neighbor_graph import (
    NeighborGraph,
    VertexPartition,
    complete_graph,
    connected_components,
    cycle_graph,
    empty_graph,
    from_adjacency,
    from_edge_list,
    is_connected,
    is_subgraph,
    neighbors,
    path_graph,
    star_graph,
    to_edge_list,
    union,
)

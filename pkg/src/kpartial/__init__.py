"""Partial graph colorings: greedy and exact solvers, NP-hardness gadgets,
and a LOCAL-model indistinguishability harness."""

from kpartial.coloring import (
    BudgetExceeded,
    Coloring,
    PaletteError,
    PartialSpec,
    Violation,
    decide_exact,
    enumerate_valid,
    greedy_partial,
    verify_partial,
    verify_proper,
)
from kpartial.gadgets import (
    Permutation,
    PathOfCliquesSpec,
    assign_ids,
    edge_gadget_transform,
    indist_pair,
    path_of_cliques,
    propagation_composite,
)
from kpartial.graph import (
    Graph,
    build_graph,
    degeneracy,
    degree,
    delta_edge,
    delta_max,
    radius_neighborhood,
)
from kpartial.local import (
    NetworkInstance,
    NodeAlgorithm,
    RadiusView,
    extract_view,
    indistinguishability_report,
    lower_bound_demo,
    run_algorithm,
    views_equal,
)

__version__ = "0.1.0"

"""Exclusivity graphs of contextuality experiments and their bounds.

Classical (independence number), quantum (Lovasz number) and
exclusivity-principle (fractional packing number) maxima of
noncontextuality expressions, the matching STAB/TH/QSTAB membership tests,
perfect-graph detection and orthonormal representations.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundsReport,
    OrderingViolation,
    bounds_report,
    fractional_packing_number,
    independence_number,
    lovasz_theta,
)
from .graph import (
    CapExceeded,
    GraphError,
    VertexWeightedGraph,
    circulant,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    encode_graph6,
    enumerate_maximal_cliques,
    from_edge_list,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    is_isomorphic,
    parse_graph6,
    random_graph,
)
from .ortho import (
    OrthonormalRepresentation,
    or_from_theta_witness,
    or_value,
    quantum_assignment,
    umbrella_or,
    verify_or,
)
from .scenario import (
    Event,
    Scenario,
    ScenarioError,
    SExpression,
    chsh_expression,
    events_exclusive,
    exclusivity_subgraph,
    experiment_graph,
    kcbs_expression,
    ncycle_expression,
)
from .sdp import SolverNonConvergence
from .sets import (
    AssignmentError,
    MembershipVerdict,
    in_qstab,
    in_stab,
    in_th,
    is_perfect,
    result3_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]

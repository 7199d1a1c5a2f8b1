"""Normal-subgroup-based power graphs: exact construction, invariants, and verification."""

from .groups import (
    FiniteGroup,
    GroupSpec,
    euler_phi,
    from_cayley_table,
    make_group,
    parse_group_spec,
)
from .harness import (
    Budgets,
    Catalog,
    CatalogEntry,
    InstanceResult,
    Report,
    TheoremId,
    check_theorem,
    default_catalog,
    run_catalog,
)
from .invariants import (
    BudgetExceeded,
    GraphInvariants,
    basic_invariants,
    chromatic_number,
    clique_number,
    compute_invariants,
    degree_in_power_graph_formula,
    eulerian_circuit,
    girth,
    hamiltonian_cycle,
    is_perfect,
    is_planar,
    vertex_connectivity,
)
from .power_graphs import (
    NSBPowerGraph,
    SimpleGraph,
    expand_quotient_graph,
    graph_to_dot,
    graph_to_json,
    nsb_power_graph,
    power_graph,
    reduced_power_graph,
)
from .subgroups import (
    QuotientGroup,
    SubgroupSet,
    all_normal_subgroups,
    generated_subgroup,
    is_normal,
    quotient,
    recognize,
)

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup",
    "GroupSpec",
    "euler_phi",
    "from_cayley_table",
    "make_group",
    "parse_group_spec",
    "SubgroupSet",
    "QuotientGroup",
    "all_normal_subgroups",
    "generated_subgroup",
    "is_normal",
    "quotient",
    "recognize",
    "SimpleGraph",
    "NSBPowerGraph",
    "power_graph",
    "reduced_power_graph",
    "nsb_power_graph",
    "expand_quotient_graph",
    "graph_to_dot",
    "graph_to_json",
    "BudgetExceeded",
    "GraphInvariants",
    "basic_invariants",
    "clique_number",
    "chromatic_number",
    "vertex_connectivity",
    "is_planar",
    "is_perfect",
    "hamiltonian_cycle",
    "girth",
    "eulerian_circuit",
    "compute_invariants",
    "degree_in_power_graph_formula",
    "TheoremId",
    "InstanceResult",
    "Catalog",
    "CatalogEntry",
    "Budgets",
    "Report",
    "check_theorem",
    "default_catalog",
    "run_catalog",
    "__version__",
]

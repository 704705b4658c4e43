"""harmlesskit: exact solvers, sparse kernelization and hardness instances
for the Harmless Set problem (select as many vertices as possible so that
every vertex keeps strictly fewer selected neighbours than its threshold).
"""

__version__ = "0.1.0"

from .errors import InvalidArgumentError, ParseError, ResourceLimitError
from .graph import (
    AnnotatedInstance,
    Graph,
    Instance,
    SolutionSet,
    cap_thresholds,
    compute_core,
    is_harmless,
    residual_budget,
    x_avoiding_distance,
)
from .io import load_instance, load_instance_json, save_instance, save_instance_json
from .kernelize import (
    KernelReport,
    RemoveVertex,
    Stuck,
    YesCertificate,
    kernelize,
    shrink_core_step,
    shrink_graph_step,
    signature,
    to_plain_kernel,
)
from .reduction import (
    MccInstance,
    ReductionOutput,
    build_reduction,
    construct_clique_solution,
    is_2_spider_forest,
    load_mcc,
    modulator_set,
    reduction_target_size,
    save_mcc,
    verify_reduction,
)
from .solvers import (
    IlpModel,
    NeighbourhoodClass,
    brute_force_max,
    build_ilp,
    greedy_vertex_cover,
    ilp_solve,
    vc_solve,
)
from .sparsity import (
    DominationResult,
    ProjectionProfile,
    Waterlily,
    build_waterlily,
    count_profiles,
    domination_scattered,
    projection_closure,
    projection_profile,
    r_projection,
    uqw_scattered,
    verify_waterlily,
)

__all__ = [
    "AnnotatedInstance",
    "DominationResult",
    "Graph",
    "IlpModel",
    "Instance",
    "InvalidArgumentError",
    "KernelReport",
    "MccInstance",
    "NeighbourhoodClass",
    "ParseError",
    "ProjectionProfile",
    "ReductionOutput",
    "RemoveVertex",
    "ResourceLimitError",
    "SolutionSet",
    "Stuck",
    "Waterlily",
    "YesCertificate",
    "brute_force_max",
    "build_ilp",
    "build_reduction",
    "build_waterlily",
    "cap_thresholds",
    "compute_core",
    "construct_clique_solution",
    "count_profiles",
    "domination_scattered",
    "greedy_vertex_cover",
    "ilp_solve",
    "is_2_spider_forest",
    "is_harmless",
    "kernelize",
    "load_instance",
    "load_instance_json",
    "load_mcc",
    "modulator_set",
    "projection_closure",
    "projection_profile",
    "r_projection",
    "reduction_target_size",
    "residual_budget",
    "save_instance",
    "save_instance_json",
    "save_mcc",
    "shrink_core_step",
    "shrink_graph_step",
    "signature",
    "to_plain_kernel",
    "uqw_scattered",
    "vc_solve",
    "verify_reduction",
    "verify_waterlily",
    "x_avoiding_distance",
]

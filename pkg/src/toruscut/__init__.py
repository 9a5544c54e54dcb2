"""Edge cuts of torus partitions: bounds, audits, and contention modeling.

Core objects live in submodules; the names most callers want are re-exported
here. See the README for the command line interface.
"""

from .audit import (
    AuditReport,
    AuditRow,
    ComparisonRow,
    MachineComparison,
    audit,
    best_geometry,
    compare_machines,
    default_audit_sizes,
    enumerate_geometries,
    realizable_sizes,
    worst_geometry,
)
from .bgq import (
    BUILTIN_MACHINES,
    MachineError,
    MachineSpec,
    PartitionGeometry,
    PolicySpec,
    builtin_machines,
    builtin_policies,
    fits,
    load_machine,
    load_policy,
    node_shape,
    partition_bisection_bw,
)
from .core import (
    CuboidRegion,
    CutAccount,
    ShapeError,
    TorusShape,
    canonicalize,
    cuboid_cut_size,
    cut_account,
    small_set_expansion_of,
)
from .flowsim import (
    FlowResult,
    TrafficSpec,
    UnsupportedPatternError,
    furthest_pairing,
    pairing_time_ratio,
    route_flows,
    simulate_pairing_benchmark,
)
from .isoperimetry import (
    BoundResult,
    OracleBudgetExceeded,
    OracleResult,
    attaining_cuboid,
    bound_cubic_torus,
    bound_general_torus,
    brute_force_min_perimeter,
    compare_cuboids,
    enumerate_cuboids,
    hypercube_min_perimeter,
    min_cut_over_cuboids,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "AuditRow",
    "BUILTIN_MACHINES",
    "BoundResult",
    "ComparisonRow",
    "CuboidRegion",
    "CutAccount",
    "FlowResult",
    "MachineComparison",
    "MachineError",
    "MachineSpec",
    "OracleBudgetExceeded",
    "OracleResult",
    "PartitionGeometry",
    "PolicySpec",
    "ShapeError",
    "TorusShape",
    "TrafficSpec",
    "UnsupportedPatternError",
    "attaining_cuboid",
    "audit",
    "best_geometry",
    "bound_cubic_torus",
    "bound_general_torus",
    "brute_force_min_perimeter",
    "builtin_machines",
    "builtin_policies",
    "canonicalize",
    "compare_cuboids",
    "compare_machines",
    "cuboid_cut_size",
    "cut_account",
    "default_audit_sizes",
    "enumerate_cuboids",
    "enumerate_geometries",
    "fits",
    "furthest_pairing",
    "hypercube_min_perimeter",
    "load_machine",
    "load_policy",
    "min_cut_over_cuboids",
    "node_shape",
    "pairing_time_ratio",
    "partition_bisection_bw",
    "realizable_sizes",
    "route_flows",
    "simulate_pairing_benchmark",
    "small_set_expansion_of",
    "worst_geometry",
    "__version__",
]

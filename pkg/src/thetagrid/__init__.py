"""Angle-free point sets on n-by-n integer grids.

Exact integer-arithmetic detection of a target angle among chosen points,
closed-form constructions and bounds, exhaustive / branch-and-bound /
greedy maximum searches, and a CLI plus local HTTP service for the
interactive explorer.
"""

from .analysis import (
    Bounds,
    BucketStats,
    InteriorFlags,
    UpperBound,
    bounds,
    bucket_stats,
    capacity_after,
    interior_report,
    lower_bound,
    upper_bound,
)
from .angles import (
    COLLINEAR,
    DEG45,
    DEG135,
    RIGHT,
    AngleSpec,
    Degeneracy,
    DegenerateAngleError,
    ForbiddenTriple,
    NotPeacefulError,
    NotRepresentableError,
    ThetaSyntaxError,
    TripleKind,
    VerifyResult,
    VertexAngle,
    angle_equals,
    blocked_cells,
    blocked_report,
    classify_triple,
    forbidden_triples,
    iter_forbidden_triples,
    parse_theta,
    tangent_at_vertex,
    verify,
)
from .constructions import Witness, two_rows, witness
from .grid import (
    MINUS_ONE,
    Construction,
    GridDim,
    OutOfGridError,
    Point,
    Slope,
    SlopeBucketIndex,
    SlopeRangeError,
    bucket_id,
    count_buckets,
    dihedral_images,
    representative_set,
)
from .solver import (
    HAVE_SPEEDUPS,
    SOLVER_MAX_SIDE,
    SearchConfig,
    SolveReport,
    enumerate_peaceful,
    solve,
    solve_exact,
    solve_greedy,
    solve_oracle,
)

__version__ = "0.1.0"

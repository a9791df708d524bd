"""Secluded unit-hypercube partitions of R^d and the rounding they induce.

Everything boundary-sensitive runs on exact rational arithmetic.  See the
README for the CLI and the acceptance suite.
"""

from .exact import (
    DimensionMismatchError,
    NotUnitriangularError,
    QMatrix,
    QVector,
    Rational,
    format_rational,
    inverse_upper_unitriangular,
    linf_dist,
    linf_norm,
    mat_mul,
    mat_vec_mul,
    rat,
    to_rational,
)
from .reclusive import (
    NotReclusiveError,
    ReclusiveMatrix,
    WeakAlt1Verdict,
    adjacency_by_difference,
    canonical_reclusive,
    is_weak_alt_one,
    lattice_point,
    member_color,
    member_coords,
    reclusive_distance,
    representative,
    validate_reclusive,
    weak_alt_one_vectors,
)
from .lattice import (
    LatticePartition,
    Neighborhood,
    b_double_prime,
    b_prime,
    canonical_partition,
    cube_meets_box,
    from_matrix,
    grid,
)
from .schemes import (
    FloorScheme,
    HKScheme,
    InducedPartition,
    ReclusiveRounder,
    diameter_bound,
    floor_round,
    hk_round,
    hk_shift_select,
    partition_to_scheme,
    reclusive_round,
    scheme_to_partition,
    shift_round,
)
from .analysis import (
    CliqueReport,
    Counterexample,
    SPERNER_KNOWN,
    ToleranceBounds,
    clique_point,
    max_clique,
    recheck_counterexample,
    sperner_lower,
    tolerance_upper_bound,
    verify_secluded,
)
from .estimator import (
    EstimateResult,
    SampleOracle,
    bernoulli_oracle,
    constant_oracle,
    estimate_means,
    oracle_from_spec,
    sample_count,
)
from .render import RenderOptions, render_svg

__version__ = "0.1.0"

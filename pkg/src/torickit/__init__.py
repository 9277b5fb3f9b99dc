"""torickit: exact-arithmetic toolkit for complete toric varieties.

Fans and orbit combinatorics, isogenies of toric varieties, resolutions by
stellar subdivision, Fano-type certificates, and rational curves through
prescribed points in Cox coordinates, all over exact integer/rational
arithmetic.
"""

__version__ = "0.1.0"

from .curves import (  # noqa: E402
    AvoidanceReport,
    CoxCurve,
    CoxPolynomial,
    PointSpec,
    Witness,
    avoidance_verify,
    evaluate_curve,
    interpolate_avoiding,
    interpolate_through_points,
    orbit_closure_ideal,
    points_equal,
    pushforward_rank_one,
    validate_curve,
)
from .divisors import (  # noqa: E402
    CartierData,
    DivisorPolytope,
    FTCertificate,
    InvariantDivisor,
    canonical_divisor,
    cartier_data,
    div_chi,
    divisor_polytope,
    ft_certificate,
    interior_point_with_scaling,
    is_ample,
    klt_check,
    linear_equivalence,
    ray_divisor,
    verify_ft_certificate,
    zero_divisor,
)
from .fans import (  # noqa: E402
    Cone,
    Fan,
    OrbitDescriptor,
    ValidationReport,
    Violation,
    codim2_orbits,
    cone_multiplicity,
    is_complete,
    is_simplicial,
    is_smooth_cone,
    list_orbits,
    primitive_collections,
    validate_fan,
)
from .forms import BinaryForm, factor_form, form_gcd, form_gcd_many  # noqa: E402
from .grading import ClassGrading, class_grading, ray_degrees, wp_cover_weights  # noqa: E402
from .isogeny import (  # noqa: E402
    Isogeny,
    IsogenyChain,
    compose,
    identity_isogeny,
    make_isogeny,
    orbit_bijection,
    pullback_fan,
    reverse_isogeny,
    smoothing_isogeny,
)
from .lattice import (  # noqa: E402
    IntegerMatrix,
    SnfResult,
    SublatticeBasis,
    exponent_bound,
    hermite_normal_form,
    member_of_sublattice,
    primitive_vector,
    smith_normal_form,
    sublattice_index,
)
from .plans import (  # noqa: E402
    MAIN_LEMMA_CITATIONS,
    MAIN_THEOREM_CITATIONS,
    main_lemma_plan,
    main_theorem_plan,
    verify_plan,
)
from .refine import (  # noqa: E402
    SubdivisionStep,
    apply_steps,
    qfactorialize,
    resolve_marked,
    resolve_to_smooth,
    stellar_subdivision,
)

"""Two-register (2N-storage) Runge-Kutta schemes.

Representations and conversions, order conditions, tableau factorization,
node-reflection pairs, benchmark integration, linear stability, and numerical
branch search over five-stage order-four schemes, with a bundled catalog of
published coefficient sets.
"""

from .catalog import (
    CatalogEntry,
    REFLECTION_PAIRS,
    SELF_REFLECTED,
    catalog_get,
    catalog_names,
)
from .exceptions import (
    DegenerateCaseError,
    DegenerateFitError,
    NoConvergenceError,
    NoDFormError,
    NonFiniteError,
    NotTwoNCompatibleError,
    OutOfRangeError,
    SchemeError,
    SingularJacobianError,
    SingularPointError,
    UnknownSchemeError,
    WrongStageCountError,
    ZeroDenominatorError,
)
from .integrate import (
    BENCHMARKS,
    ODEProblem,
    RunResult,
    convergence_order,
    error_at_end,
    solve,
    step_2n,
    step_classical,
)
from .matrices import (
    anti_transpose,
    augment,
    build_C,
    build_D,
    build_F,
    build_G,
    build_L,
    build_N,
    build_P,
    build_Q,
    build_T,
    factorize,
    identity_residuals,
    reconstruct_augmented,
)
from .order_conditions import (
    CONDITION_LABELS,
    OrderReport,
    classify_order,
    dform_residuals_54,
    fifth_order_breaking,
    standard_residuals,
    tall_tree,
    trace_residuals,
)
from .reflection import (
    ReflectionPair,
    is_self_reflected,
    reflect_dform,
    reflect_matrix,
    reflect_scheme,
    reflection_pair,
    wcurve_scan,
    williamson_c3,
)
from .schemes import (
    ButcherTableau,
    DForm,
    TwoNScheme,
    ValidationReport,
    butcher_to_dform,
    butcher_to_twon,
    dform_to_butcher,
    dform_to_twon,
    twon_to_butcher,
    twon_to_dform,
    validate,
)
from .search import (
    BranchPoint,
    BranchWalk,
    SearchConfig,
    branch_walk,
    build_self_reflected_64,
    build_self_reflected_84,
    constrained_search_54,
    family_64_c3,
    newton_solve,
    residuals_54,
    walk_to_c2,
)
from .stability import StabilityPolynomial, StabilityRegion, stability_polynomial, stability_region

__version__ = "0.1.0"

"""Exact arithmetic, power residue symbols, Gauss sums, Hecke L-functions
and first-moment experiments over the nine class-number-one imaginary
quadratic fields Q(sqrt(d)), d in {-1,-2,-3,-7,-11,-19,-43,-67,-163}."""

from .fields import (
    FIELD_DS,
    Elem,
    FieldData,
    FieldMismatchError,
    PrimeElem,
    divides,
    divrem,
    elem,
    enumerate_norm_range,
    exact_div,
    factor,
    field_data,
    gcd,
    phi,
)
from .ntheory import FactorBudgetError, kronecker
from .primary import E_PRIMARY, PRIMARY, ParityData, canonical_primary, is_primary, t_pair
from .symbols import (
    IncompatibleOrderError,
    RootOfUnity,
    reciprocity_check,
    supplementary,
    symbol,
    unit_symbol,
)
from .gauss import (
    AdditiveCharCtx,
    e_tilde,
    gauss_G,
    gauss_G_primepower,
    gauss_G_twist,
    gauss_direct,
    gauss_hecke,
    gauss_prime_value,
)
from .zeta import ideal_sum_partial, residue_at_one, zeta_K
from .hecke import (
    GroupBudgetError,
    HeckeChar,
    PrimitiveData,
    RayClassGroup,
    c_k_family,
    char_denominator,
    char_from_symbol,
    conductor,
    extend_modulus,
    principal_char,
    ray_class_group,
)
from .lfunctions import (
    PrecisionError,
    dual_series_check,
    fe_residual,
    l_value,
    lambda_completed,
    theta_identity_check,
)
from .moments import (
    MomentConfig,
    MomentReport,
    TestFunction,
    default_phi,
    lhs_higher,
    lhs_quadratic,
    mellin_phi,
    mt_higher,
    mt_quadratic,
    run_experiment,
)

__version__ = "0.1.0"

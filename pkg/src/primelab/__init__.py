"""primelab: prime counting, zeta and Dirichlet L-functions, explicit
formula, and empirical verification harnesses.

The sieve layer runs on a compiled kernel when the extension built, with a
pure-Python/numpy fallback selected at import; `primelab.sieve.BACKEND`
names the active one. Everything downstream (summation, merging, zero
finding) is shared Python code, so results are bit-identical across
kernels and thread counts.
"""

from .arith import (
    bernoulli_number,
    bernoulli_poly_eval,
    chi_bernoulli_number,
    euler_phi,
    factorize,
    mobius,
    von_mangoldt,
)
from .characters import (
    CharacterGroup,
    DirichletCharacter,
    character_group,
    gauss_sum,
    orthogonality_residuals,
)
from .config import RunConfig, sieve_cap
from .errors import (
    InsufficientOrderError,
    NonCoprimeResidueError,
    NonPrimitiveError,
    ParityError,
    PoleError,
    SieveCapError,
    UnresolvedIntervalError,
    ZeroBankFormatError,
)
from .explicit import (
    ExplicitResult,
    ZeroBank,
    build_zero_bank,
    li,
    li_offset,
    li_principal,
    load_zeros,
    psi_explicit,
    residual_scan,
    truncation_bound,
)
from .lfunc import (
    LValue,
    completed_lambda,
    functional_equation_residual,
    l_special_value,
    l_value,
    root_number,
)
from .progressions import (
    APCountSnapshot,
    TwistValue,
    count_ap,
    decompose_check,
    psi_twist,
    theta_twist,
    twist,
    verify_ap_bertrand,
)
from .report import VerificationReport
from .sieve import (
    BACKEND,
    GapRecord,
    chebyshev_psi,
    chebyshev_theta,
    integer_kth_root,
    is_probable_prime,
    max_gap_scan,
    nth_prime,
    prime_pi,
    primes_between,
    sieve_range,
)
from .verify import (
    ap_partial_summation_identities,
    mertens_estimate,
    partial_summation_identities,
    pnt_error_scan,
    sample_points,
    short_interval_theta_margins,
    verify_bertrand,
    verify_short_interval_power,
    verify_short_interval_sqrt,
)
from .zeta import (
    find_zeros,
    gram_point,
    hardy_z,
    riemann_siegel_theta,
    zeta_alternating,
    zeta_euler_maclaurin,
)

__version__ = "0.1.0"

"""Exact-arithmetic toolkit for Riemann-Roch polynomials of holomorphic-symplectic manifolds.

Modules
-------
exactpoly   rational scalars, dense exact polynomials, residue sets
chebbern    Chebyshev polynomials, quarter-shift substitutes, Bernoulli numbers
chernrr     Riemann-Roch polynomial from Chern numbers (graded truncated exp)
qkbasis     positive symmetric basis, decompositions, exact root isolation
cnconst     certified gcd constants of square-difference products
hkprofile   invariant bundles, known families, denominator and parity checks
isosolver   residue sieve for the dimension-6 isotropic-class cases
cli         command-line reports (JSON / markdown)
"""

__version__ = "0.1.0"

from .chebbern import bernoulli, chebyshev_T, pk_poly
from .chernrr import ChernData, partitions, q_rr_from_chern
from .cnconst import (
    CnCertificate,
    SearchBudgetExceeded,
    cn_prime_support,
    cn_value,
    layer_gcd,
    min_padic_valuation,
    tuple_product,
)
from .exactpoly import (
    Poly,
    Rat,
    ResidueSet,
    as_rat,
    binomial_poly,
    integrality_residues,
    poly_compose_affine,
    poly_eval,
    rat_str,
    symmetry_shift,
)
from .hkprofile import (
    HKProfile,
    ProfileError,
    cubic_prr,
    denominator_check,
    double_factorial,
    even_values_check,
    known_family_prr,
    profile_from_prr,
    real_root_classifier,
)
from .isosolver import (
    IsotropicCase,
    UnsupportedCase,
    divisibility_residues,
    fujiki_from_pairing,
    gcd_constraint,
    hyperbolic_exclusion,
    mx_upper_bounds,
    pairing_candidates,
    pairing_congruence,
    solve_case,
    square_closure,
)
from .qkbasis import (
    NotInSpan,
    all_roots_real,
    count_real_roots,
    decompose_qk,
    decompose_shifted,
    qk_laurent_check,
    qk_poly,
    qk_roots,
    real_roots,
)

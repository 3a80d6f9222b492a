"""Invariant bundles extracted from candidate Riemann-Roch polynomials.

A profile collects the half-dimension n, the integral polynomial P_RR, its
normalized form Q_RR, the Fujiki constant c_x, the rescaling data n_x and
m_x = n_x/2, and the leading invariant a_x of Q_RR.  Extraction reads n_x
off the top two coefficients and then verifies the full reflection
symmetry, so inconsistent inputs are rejected rather than silently
profiled.  The module also houses the two known closed families, the
denominator bounds against the gcd constants, the even-value integrality
checks, and real-root classification of Q_RR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from .cnconst import cn_value
from .exactpoly import (
    Poly,
    RatLike,
    as_rat,
    binomial_poly,
    poly_compose_affine,
    rat_str,
    symmetry_shift,
)
from .qkbasis import all_roots_real

__all__ = [
    "ProfileError",
    "HKProfile",
    "double_factorial",
    "known_family_prr",
    "profile_from_prr",
    "cubic_prr",
    "DenominatorReport",
    "denominator_check",
    "EvenValuesReport",
    "even_values_check",
    "RootVerdict",
    "real_root_classifier",
]

# Reference constants attached to the n = 2 classification: either
# (b2, b3) = (23, 0) with a_x = 25/32, or b2 <= 8 with a_x in [5/6, 131/144].
# Stored as inert data; nothing in this artifact consumes Betti numbers.
N2_BETTI_SPLIT = {"b2": 23, "b3": 0, "a_x": Fraction(25, 32)}
N2_BETTI_SMALL = {"b2_max": 8, "a_x_min": Fraction(5, 6), "a_x_max": Fraction(131, 144)}


class ProfileError(ValueError):
    """A candidate polynomial violates a profile invariant."""


def double_factorial(m: int) -> int:
    """Product of the odd integers up to m."""
    out = 1
    for k in range(1 if m % 2 else 2, m + 1, 2):
        out *= k
    return out


@dataclass(frozen=True)
class HKProfile:
    """Invariants (n, P_RR, Q_RR, c_x, n_x, m_x, a_x) of one candidate."""

    n: int
    p_rr: Poly
    q_rr: Poly
    c_x: Fraction
    n_x: Fraction
    m_x: Fraction
    a_x: Fraction

    def validate(self) -> None:
        """Re-check every structural invariant (used by tests and the CLI)."""
        n = self.n
        fact2n = math.factorial(2 * n)
        if self.p_rr.leading() != self.c_x / fact2n:
            raise ProfileError("leading coefficient disagrees with c_x/(2n)!")
        if self.p_rr.coeff(0) != n + 1:
            raise ProfileError("bad constant term")
        if self.q_rr != poly_compose_affine(self.p_rr, self.m_x, 0):
            raise ProfileError("q_rr is not p_rr(m_x T)")
        if self.c_x != fact2n * self.a_x / self.m_x**n:
            raise ProfileError("c_x, a_x, m_x are inconsistent")
        sign = -1 if n % 2 else 1
        if poly_compose_affine(self.p_rr, -1, -2 * self.n_x) != self.p_rr * sign:
            raise ProfileError("no symmetry")
        if n > 1 and not (0 < self.a_x < 1):
            raise ProfileError("A_X out of range")

    @property
    def n_x_is_integer(self) -> bool:
        """Reportable flag; integrality of n_x is observed, never enforced."""
        return self.n_x.denominator == 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "c_x": rat_str(self.c_x),
            "n_x": rat_str(self.n_x),
            "m_x": rat_str(self.m_x),
            "a_x": rat_str(self.a_x),
            "n_x_is_integer": self.n_x_is_integer,
            "p_rr": self.p_rr.to_json(),
            "q_rr": self.q_rr.to_json(),
        }


_FAMILY_ALIASES = {
    "split": "split-type",
    "split-type": "split-type",
    "product": "product-type",
    "product-type": "product-type",
}


def known_family_prr(kind: str, n: int) -> Poly:
    """The two closed families: binom(T/2+1+n, n) and (n+1)*binom(T/2+n, n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    try:
        kind = _FAMILY_ALIASES[kind]
    except KeyError:
        raise ValueError(f"unknown family {kind!r}; use split-type or product-type")
    if kind == "split-type":
        return binomial_poly(n, Fraction(1, 2), n + 1)
    return binomial_poly(n, Fraction(1, 2), n) * (n + 1)


def profile_from_prr(n: int, p: Poly) -> HKProfile:
    """Extract and fully validate the invariant bundle of a degree-n candidate.

    n_x comes from the coefficient ratio a_{n-1}/(n a_n); the verified
    reflection symmetry then guarantees the whole bundle is consistent.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if p.degree != n:
        raise ProfileError(f"polynomial degree {p.degree} != n = {n}")
    if p.leading() <= 0:
        raise ProfileError("leading coefficient must be positive")
    if p.coeff(0) != n + 1:
        raise ProfileError("bad constant term")
    shift = symmetry_shift(p)
    if shift is None:
        raise ProfileError("no symmetry")
    n_x = p.coeff(n - 1) / (n * p.leading())
    m_x = n_x / 2
    c_x = math.factorial(2 * n) * p.leading()
    a_x = c_x * m_x**n / math.factorial(2 * n)
    if n > 1 and not (0 < a_x < 1):
        raise ProfileError("A_X out of range")
    profile = HKProfile(
        n=n,
        p_rr=p,
        q_rr=poly_compose_affine(p, m_x, 0),
        c_x=c_x,
        n_x=n_x,
        m_x=m_x,
        a_x=a_x,
    )
    profile.validate()
    return profile


def cubic_prr(c_x: RatLike, n_x: RatLike) -> Poly:
    """The degree-3 symmetric candidate with invariants (c_x, n_x).

    c_x/720 (T+n_x)^3 + b (T+n_x) with b pinned by the constant term 4:
    b = 4/n_x - c_x n_x^2 / 720.
    """
    c_x, n_x = as_rat(c_x), as_rat(n_x)
    if n_x == 0:
        raise ValueError("n_x must be nonzero")
    shifted = Poly((n_x, 1))
    b = Fraction(4, 1) / n_x - c_x * n_x**2 / 720
    return shifted**3 * (c_x / 720) + shifted * b


@cache
def _cn(n: int) -> int:
    return cn_value(n).value


@dataclass(frozen=True)
class DenominatorReport:
    """Coefficient denominators against the gcd-constant lattice bound."""

    ok: bool
    even_form: bool
    c_n: int
    coefficient_ok: tuple[bool, ...]
    fujiki_in_lattice: bool

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "even_form": self.even_form,
            "c_n": str(self.c_n),
            "coefficient_ok": list(self.coefficient_ok),
            "fujiki_in_lattice": self.fujiki_in_lattice,
        }


def denominator_check(n: int, p: Poly, even_form: bool, c_n: int | None = None) -> DenominatorReport:
    """Check a_i * 2^i * C(n) in Z for every i (or a_i * C(n) when not even).

    Also reports whether the Fujiki constant (2n)! a_n lies in the lattice
    ((2n)!/(2^n C(n))) Z, which is the i = n check in the even case.
    """
    if p.degree > n:
        raise ValueError("polynomial degree exceeds n")
    cn = _cn(n) if c_n is None else c_n
    flags = []
    for i in range(n + 1):
        scale = cn * 2**i if even_form else cn
        flags.append((p.coeff(i) * scale).denominator == 1)
    fujiki = (p.coeff(n) * 2**n * cn).denominator == 1
    return DenominatorReport(
        ok=all(flags),
        even_form=even_form,
        c_n=cn,
        coefficient_ok=tuple(flags),
        fujiki_in_lattice=fujiki,
    )


@dataclass(frozen=True)
class EvenValuesReport:
    """Consequences of the form representing all large even numbers."""

    ok: bool
    integral_on_even: bool
    leading_in_lattice: bool
    fujiki_multiple_of_double_factorial: bool
    c_x: Fraction

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "integral_on_even": self.integral_on_even,
            "leading_in_lattice": self.leading_in_lattice,
            "fujiki_multiple_of_double_factorial": self.fujiki_multiple_of_double_factorial,
            "c_x": rat_str(self.c_x),
        }


def even_values_check(n: int, p: Poly) -> EvenValuesReport:
    """Test integrality on even inputs and the induced leading-term bounds.

    Samples p(2t) for t = 1 .. 2*lcm(denominators), which covers every even
    residue class modulo the integrality period; on success the leading
    coefficient must lie in 1/(n! 2^n) Z and (2n)! a_n in (2n-1)!! Z.
    """
    if p.degree > n:
        raise ValueError("polynomial degree exceeds n")
    lcm = math.lcm(1, *(c.denominator for c in p.coeffs)) if p.coeffs else 1
    # Integer Horner on lcm * p: p(q) is an integer iff lcm | (lcm * p)(q).
    scaled = [int(c * lcm) for c in p.coeffs]

    def scaled_value(q: int) -> int:
        acc = 0
        for c in reversed(scaled):
            acc = acc * q + c
        return acc

    integral = all(scaled_value(2 * t) % lcm == 0 for t in range(1, 2 * lcm + 1))
    a_n = p.coeff(n)
    leading_ok = (a_n * math.factorial(n) * 2**n).denominator == 1
    c_x = math.factorial(2 * n) * a_n
    fujiki_ok = (c_x / double_factorial(2 * n - 1)).denominator == 1
    return EvenValuesReport(
        ok=integral and leading_ok and fujiki_ok,
        integral_on_even=integral,
        leading_in_lattice=leading_ok,
        fujiki_multiple_of_double_factorial=fujiki_ok,
        c_x=c_x,
    )


@dataclass(frozen=True)
class RootVerdict:
    """Reality classification of the roots of Q_RR."""

    n: int
    method: str  # "degree", "discriminant", "factored-discriminant", "isolation"
    all_real: bool
    discriminant: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "method": self.method,
            "all_real": self.all_real,
            "discriminant": None if self.discriminant is None else rat_str(self.discriminant),
        }


def real_root_classifier(profile: HKProfile) -> RootVerdict:
    """Decide whether every root of Q_RR is real.

    n = 2 uses the quadratic discriminant 4 a_x (4 a_x - 3); n = 3 first
    verifies the exact factorization Q_RR = (T+2)(a_x (T^2+4T) + 2) and then
    signs 8 a_x (2 a_x - 1); n >= 4 falls back to exact root isolation.
    """
    n, a = profile.n, profile.a_x
    if n == 1:
        return RootVerdict(n=1, method="degree", all_real=True)
    if n == 2:
        disc = 4 * a * (4 * a - 3)
        return RootVerdict(n=2, method="discriminant", all_real=disc >= 0, discriminant=disc)
    if n == 3:
        factored = Poly((2, 1)) * (Poly((0, 4, 1)) * a + 2)
        if profile.q_rr != factored:
            raise ProfileError("factorization failed")
        disc = 8 * a * (2 * a - 1)
        return RootVerdict(n=3, method="factored-discriminant", all_real=disc >= 0, discriminant=disc)
    return RootVerdict(n=n, method="isolation", all_real=all_roots_real(profile.q_rr))

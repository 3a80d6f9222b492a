"""Exact rational scalars and univariate polynomial algebra.

The scalar type is ``fractions.Fraction``: arbitrary precision, always in
lowest terms with positive denominator, so equality is structural and
hashing is free.  ``Poly`` is an immutable dense univariate polynomial
over Fraction (ascending coefficients, no trailing zeros).  Everything in
this module is pure and exact; there is no floating point and no epsilon
anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Iterator, Optional, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

__all__ = [
    "Rat",
    "RatLike",
    "as_rat",
    "rat_str",
    "Poly",
    "X",
    "ZERO",
    "ONE",
    "poly_eval",
    "poly_compose_affine",
    "binomial_poly",
    "symmetry_shift",
    "ResidueSet",
    "integrality_residues",
]


def as_rat(x: RatLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction, or 'p/q' string")
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", or just "p" when the denominator is 1."""
    return str(Fraction(x))


class Poly:
    """Dense univariate polynomial with exact Fraction coefficients.

    Coefficients are stored ascending by degree with trailing zeros
    stripped, so two polynomials are equal iff their coefficient tuples
    are.  The zero polynomial has an empty tuple and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()) -> None:
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        """Coefficient of T^i (zero beyond the degree)."""
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def is_zero(self) -> bool:
        return not self._coeffs

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "Poly | RatLike") -> "Poly":
        other = _as_poly(other)
        return Poly(a + b for a, b in zip_longest(self._coeffs, other._coeffs, fillvalue=Fraction(0)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self._coeffs)

    def __sub__(self, other: "Poly | RatLike") -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "Poly | RatLike") -> "Poly":
        return _as_poly(other) + (-self)

    def __mul__(self, other: "Poly | RatLike") -> "Poly":
        if not isinstance(other, Poly):
            c = as_rat(other)
            return Poly(c * a for a in self._coeffs)
        if self.is_zero() or other.is_zero():
            return ZERO
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: RatLike) -> "Poly":
        c = as_rat(scalar)
        return Poly(a / c for a in self._coeffs)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact polynomial division with remainder (divisor nonzero)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self._coeffs)
        d, lead = other.degree, other.leading()
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            c = rem[-1] / lead
            q[k] = c
            for j, b in enumerate(other._coeffs):
                rem[k + j] -= c * b
            rem.pop()
        return Poly(q), Poly(rem)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self._coeffs) if i >= 1)

    # -- evaluation and serialization ------------------------------------

    def __call__(self, x: RatLike) -> Fraction:
        return poly_eval(self, x)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == _as_poly(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Poly('0')"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return "Poly('{}')".format(" + ".join(parts).replace("+ -", "- "))

    def to_json(self) -> dict:
        """JSON form ``{"coeffs": ["p/q", ...]}``, ascending by degree."""
        return {"coeffs": [rat_str(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise ValueError("polynomial JSON must be an object with a 'coeffs' list")
        return cls(obj["coeffs"])


def _as_poly(x: "Poly | RatLike") -> Poly:
    return x if isinstance(x, Poly) else Poly((as_rat(x),))


ZERO = Poly()
ONE = Poly((1,))
X = Poly((0, 1))


def poly_eval(p: Poly, x: RatLike) -> Fraction:
    """Exact value p(x) by Horner's rule."""
    x = as_rat(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_compose_affine(p: Poly, a: RatLike, b: RatLike) -> Poly:
    """The polynomial T -> p(a*T + b), computed exactly."""
    inner = Poly((as_rat(b), as_rat(a)))
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * inner + c
    return acc


def binomial_poly(n: int, scale: RatLike, shift: RatLike) -> Poly:
    """Falling-factorial binomial polynomial in an affine argument.

    Returns (s*T + t)(s*T + t - 1)...(s*T + t - n + 1) / n!  where
    s = scale and t = shift; this is binom(s*T + t, n) as a polynomial.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    scale, shift = as_rat(scale), as_rat(shift)
    acc = ONE
    for i in range(n):
        acc = acc * Poly((shift - i, scale))
    return acc / math.factorial(n)


def symmetry_shift(p: Poly) -> Optional[Fraction]:
    """Shift s with p(-T - s) = (-1)^deg(p) * p(T), or None if there is none.

    The top two coefficients force s = 2*a_{n-1} / (n*a_n); that candidate
    is then verified against the full polynomial identity.
    """
    n = p.degree
    if n < 1:
        raise ValueError("polynomial must be nonzero of degree >= 1")
    s = 2 * p.coeff(n - 1) / (n * p.leading())
    sign = -1 if n % 2 else 1
    if poly_compose_affine(p, -1, -s) == p * sign:
        return s
    return None


@dataclass(frozen=True)
class ResidueSet:
    """A modulus M together with the allowed subset of Z/M.

    Membership of an integer q means ``q % M in allowed``.  The set is
    plain data; refinement to a larger modulus and canonical reduction
    preserve membership semantics exactly.
    """

    modulus: int
    allowed: frozenset[int]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "allowed", frozenset(self.allowed))
        if any(not (0 <= r < self.modulus) for r in self.allowed):
            raise ValueError("allowed residues must lie in [0, modulus)")

    def contains(self, q: int) -> bool:
        return q % self.modulus in self.allowed

    def lift(self, modulus: int) -> "ResidueSet":
        """The same set of integers, described modulo a multiple of M."""
        if modulus % self.modulus:
            raise ValueError("can only lift to a multiple of the modulus")
        step = self.modulus
        lifted = frozenset(r + k * step for r in self.allowed for k in range(modulus // step))
        return ResidueSet(modulus, lifted)

    def reduce(self) -> "ResidueSet":
        """Canonical form: the smallest modulus describing the same integers.

        A prime is peeled off the modulus only after verifying that the
        allowed set is exactly the preimage of its projection, so the
        reduction never changes membership.
        """
        m, allowed = self.modulus, self.allowed
        changed = True
        while changed and m > 1:
            changed = False
            for p in sorted(_prime_factors(m)):
                m2 = m // p
                proj = frozenset(r % m2 for r in allowed)
                if frozenset(r for r in range(m) if r % m2 in proj) == allowed:
                    m, allowed = m2, proj
                    changed = True
                    break
        return ResidueSet(m, allowed)

    def equivalent(self, other: "ResidueSet") -> bool:
        """True iff both describe the same set of integers."""
        m = math.lcm(self.modulus, other.modulus)
        return self.lift(m).allowed == other.lift(m).allowed

    def sorted_residues(self) -> list[int]:
        return sorted(self.allowed)


def _prime_factors(m: int) -> set[int]:
    out, d = set(), 2
    while d * d <= m:
        while m % d == 0:
            out.add(d)
            m //= d
        d += 1
    if m > 1:
        out.add(m)
    return out


def integrality_residues(p: Poly) -> ResidueSet:
    """The exact residue criterion for p to take an integer value.

    Returns (M, S) with M the lcm of the coefficient denominators and
    S = {q mod M : p(q) is an integer}; then p(q) in Z iff q mod M in S,
    since p(q + M) - p(q) is always an integer.
    """
    m = math.lcm(1, *(c.denominator for c in p.coeffs)) if p.coeffs else 1
    allowed = frozenset(q for q in range(m) if poly_eval(p, q).denominator == 1)
    return ResidueSet(m, allowed)

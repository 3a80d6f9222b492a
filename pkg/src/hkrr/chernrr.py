"""Riemann-Roch polynomial of a holomorphic-symplectic manifold from Chern numbers.

``q_rr_from_chern`` expands exp(-sum_k B_{2k}/(2k) * x_k * P_k(T)) in formal
graded variables x_k of weight k over a weight-truncated algebra, keeps the
total-weight-n part (the only part an integral over a 2n-fold picks up), and
substitutes the supplied intersection numbers for the weight-n monomials
x_{k_1}...x_{k_r}.  Monomials are keyed by the multiset {k_1,...,k_r}, since
products of cohomology classes commute.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .chebbern import bernoulli, pk_poly
from .exactpoly import ONE, Poly, RatLike, ZERO, as_rat, rat_str

__all__ = ["ChernData", "Partition", "partitions", "q_rr_from_chern"]

Partition = tuple[int, ...]

# A weight-graded element: multiset of variable weights -> Poly coefficient.
_Graded = dict[Partition, Poly]


def partitions(n: int) -> list[Partition]:
    """All partitions of n as ascending tuples, in lexicographic order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out: list[Partition] = []

    def rec(remaining: int, minimum: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(minimum, remaining + 1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, 1, ())
    return sorted(out)


def _canonical_key(key: Iterable[int]) -> Partition:
    return tuple(sorted(int(k) for k in key))


class ChernData:
    """Intersection numbers of Chern character components, keyed by multiset.

    ``values[{k_1,...,k_r}]`` holds the integral of ch_{2k_1}...ch_{2k_r};
    every key must be a nonempty multiset of positive integers summing to n.
    Missing keys are treated as 0.  The data is not checked for coming from
    an actual manifold: the property suites rely on arbitrary inputs.
    """

    def __init__(self, n: int, values: Mapping[Iterable[int], RatLike]) -> None:
        if n < 1:
            raise ValueError("half-dimension n must be >= 1")
        self.n = int(n)
        canon: dict[Partition, Fraction] = {}
        for raw_key, raw_value in values.items():
            key = _canonical_key(raw_key)
            if not key or any(k < 1 for k in key):
                raise ValueError(f"partition {key} must consist of positive integers")
            if sum(key) != self.n:
                raise ValueError(f"partition {key} does not sum to n={self.n}")
            if key in canon:
                raise ValueError(f"duplicate partition {key}")
            canon[key] = as_rat(raw_value)
        self.values: dict[Partition, Fraction] = canon

    def value(self, key: Iterable[int]) -> Fraction:
        return self.values.get(_canonical_key(key), Fraction(0))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "values": [
                {"partition": list(key), "value": rat_str(v)}
                for key, v in sorted(self.values.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ChernData":
        if not isinstance(obj, dict) or "n" not in obj or "values" not in obj:
            raise ValueError("Chern data JSON must carry 'n' and 'values'")
        return cls(obj["n"], {tuple(e["partition"]): e["value"] for e in obj["values"]})

    def __repr__(self) -> str:
        return f"ChernData(n={self.n}, values={self.values!r})"


def _weight(key: Partition) -> int:
    return sum(key)


def _mul_truncated(a: _Graded, b: _Graded, cap: int) -> _Graded:
    out: _Graded = {}
    for ka, pa in a.items():
        wa = _weight(ka)
        for kb, pb in b.items():
            if wa + _weight(kb) > cap:
                continue
            key = _canonical_key(ka + kb)
            prod = pa * pb
            out[key] = out.get(key, ZERO) + prod
    return {k: v for k, v in out.items() if not v.is_zero()}


def _exp_truncated(arg: _Graded, cap: int) -> _Graded:
    """exp of a graded element with no weight-0 part, up to total weight cap."""
    if any(_weight(k) < 1 for k in arg):
        raise ValueError("exponential argument must have positive weight")
    acc: _Graded = {(): ONE}
    power: _Graded = {(): ONE}
    for j in range(1, cap + 1):
        power = _mul_truncated(power, arg, cap)
        if not power:
            break
        inv_fact = Fraction(1, math.factorial(j))
        for key, poly in power.items():
            acc[key] = acc.get(key, ZERO) + poly * inv_fact
    return acc


def q_rr_from_chern(data: ChernData) -> Poly:
    """Degree-n Riemann-Roch polynomial (normalized form) from Chern numbers.

    The coefficient of x_{k_1}^{e_1}... in exp(sum c_k x_k) is
    prod c_k^{e_k} / e_k!; that multiplicity convention is what the
    truncated exponential produces before the multiset keying.
    """
    n = data.n
    arg: _Graded = {}
    for k in range(1, n + 1):
        scalar = -bernoulli(2 * k) / (2 * k)
        arg[(k,)] = pk_poly(k) * scalar
    series = _exp_truncated(arg, n)
    out = ZERO
    for key, poly in series.items():
        if _weight(key) != n:
            continue
        v = data.value(key)
        if v:
            out = out + poly * v
    return out

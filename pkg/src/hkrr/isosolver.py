"""Residue sieve for degree-3 Riemann-Roch candidates with an isotropic class.

Given the half-dimension n = 3 and the normalized pairing integral a, the
solver derives every constraint available from exact divisibility (the
pairing value q_lm, the Fujiki constant, upper bounds on the rescaling
m_x, and integrality congruences for n_x), then eliminates candidate n_x
values by sieving the residues on which the candidate polynomial is
integer valued.  Elimination rules, in the order applied:

* ``divisibility``: the exact residue classes where P takes integer values;
* ``gcd`` (forced divisor): an odd prime dividing every represented value
  contradicts the represented-value gcd being 1 or 2;
* ``square closure``: k^2 q is represented along with q, so a residue
  whose square orbit leaves the allowed set is impossible;
* ``hyperbolic exclusion``: a unique odd residue class mod 8 forces a
  bilinear contradiction mod 4 against the isotropic pair;
* ``parity``: the congruence coupling q(m) + n_x to an even number
  conflicts with an all-even residue set when n_x is odd;
* ``gcd`` (mod 4): an all-even residue set whose members are 0 mod 4
  contradicts the gcd being exactly 1 or 2.

The pairing value 2 is handled by the substitution layer: represented
values are twice a half-value q, the sieve runs on the half-values via
P(2T), and the branch dies on the mod-4 gcd contradiction.  Elimination
traces name the rule fired for every rejected candidate so a report can
be audited step by step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .cnconst import cn_value
from .exactpoly import (
    Poly,
    ResidueSet,
    integrality_residues,
    poly_compose_affine,
    rat_str,
)
from .hkprofile import cubic_prr, double_factorial

__all__ = [
    "UnsupportedCase",
    "pairing_candidates",
    "fujiki_from_pairing",
    "MxBounds",
    "mx_upper_bounds",
    "PairingCongruence",
    "pairing_congruence",
    "divisibility_residues",
    "square_closure",
    "hyperbolic_exclusion",
    "gcd_constraint",
    "TraceStep",
    "CandidateAnalysis",
    "PairingBranch",
    "IsotropicCase",
    "solve_case",
]


class UnsupportedCase(ValueError):
    """Only the fully mechanized configurations are solved end to end."""


def _cn(n: int, c_n: int | None) -> int:
    return cn_value(n).value if c_n is None else c_n


def pairing_candidates(n: int, a: int, even_form: bool, c_n: int | None = None) -> list[int]:
    """All pairing values q > 0 allowed by the divisibility constraint.

    The leading coefficient forces n! q^n | a C(n) for an even form and
    n! 2^n q^n | a C(n) otherwise.
    """
    if n < 1 or a < 1:
        raise ValueError("need n >= 1 and a >= 1")
    cn = _cn(n, c_n)
    budget = a * cn
    base = math.factorial(n) * (1 if even_form else 2**n)
    out = []
    q = 1
    while base * q**n <= budget:
        if budget % (base * q**n) == 0:
            out.append(q)
        q += 1
    return out


def fujiki_from_pairing(n: int, a: int, q_lm: int) -> Fraction:
    """c_x = a (2n-1)!! / q_lm^n, from the isotropic pairing relation."""
    if q_lm < 1:
        raise ValueError("q_lm must be positive")
    return Fraction(a * double_factorial(2 * n - 1), q_lm**n)


def _nth_root_upper(x: Fraction, n: int, eps: Fraction) -> Fraction:
    """Smallest multiple of eps that is >= x^(1/n), by exact bracketing."""
    if x < 0:
        raise ValueError("x must be >= 0")
    hi = 1
    while (hi * eps) ** n < x:
        hi *= 2
    lo = 0
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if (mid * eps) ** n < x:
            lo = mid
        else:
            hi = mid
    return hi * eps


@dataclass(frozen=True)
class MxBounds:
    """Strict rational upper bounds for m_x (each over-approximates by < 1/100)."""

    pairing_bound: Fraction  # 2 q_lm (n!/a)^(1/n), rounded up
    gcd_bound: Fraction  # 2 C(n)^(1/n), rounded up

    def to_json(self) -> dict:
        return {"pairing_bound": rat_str(self.pairing_bound), "gcd_bound": rat_str(self.gcd_bound)}


def mx_upper_bounds(n: int, a: int, q_lm: int, c_n: int | None = None) -> MxBounds:
    """Rational over-approximations of the two strict upper bounds on m_x."""
    if q_lm < 1:
        raise ValueError("q_lm must be positive")
    if a > math.factorial(n):
        raise ValueError("bound is meaningful only for a <= n!")
    eps = Fraction(1, 100)
    pairing = 2 * q_lm * _nth_root_upper(Fraction(math.factorial(n), a), n, eps / (2 * q_lm))
    gcd_b = 2 * _nth_root_upper(Fraction(_cn(n, c_n)), n, eps / 2)
    return MxBounds(pairing_bound=pairing, gcd_bound=gcd_b)


@dataclass(frozen=True)
class PairingCongruence:
    """Arithmetic facts the isotropic pair imposes on n_x and q(m).

    The base congruence is a (q(m) + n_x - (n-1) q_lm) = 0 mod 2 q_lm;
    dividing by gcd(a, 2 q_lm) gives q(m) + n_x = qm_residue mod
    qm_modulus.  n_x lies in Z + (2 q_lm / a) Z, hence is an integer
    whenever a divides 2 q_lm.  When the pairing value already forces an
    even form, the halved coupling constrains q(m)/2 + m_x instead.
    """

    n: int
    a: int
    q_lm: int
    nx_coset_step: Fraction
    nx_integral: bool
    qm_modulus: int
    qm_residue: int
    form_even_forced: bool
    mx_integral: bool
    half_modulus: Optional[int]
    half_residue: Optional[int]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "q_lm": self.q_lm,
            "nx_coset_step": rat_str(self.nx_coset_step),
            "nx_integral": self.nx_integral,
            "qm_plus_nx_congruence": {"modulus": self.qm_modulus, "residue": self.qm_residue},
            "form_even_forced": self.form_even_forced,
            "mx_integral": self.mx_integral,
            "half_congruence": None
            if self.half_modulus is None
            else {"modulus": self.half_modulus, "residue": self.half_residue},
        }


def pairing_congruence(n: int, a: int, q_lm: int, c_n: int | None = None) -> PairingCongruence:
    """Integrality facts for n_x and the parity coupling with q(m)."""
    if q_lm < 1:
        raise ValueError("q_lm must be positive")
    g = math.gcd(a, 2 * q_lm)
    qm_modulus = 2 * q_lm // g
    qm_residue = ((n - 1) * q_lm) % qm_modulus
    nx_integral = (2 * q_lm) % a == 0
    forced_even = q_lm not in pairing_candidates(n, a, even_form=False, c_n=c_n)
    # With an even form q(m) is even, so an even congruence modulus pins
    # the parity of n_x; an even n_x makes m_x = n_x/2 an integer.
    mx_integral = bool(
        forced_even and nx_integral and qm_modulus % 2 == 0 and qm_residue % 2 == 0
    )
    half_modulus = half_residue = None
    if forced_even and q_lm % 2 == 0 and qm_modulus % 2 == 0 and qm_residue % 2 == 0:
        half_modulus = qm_modulus // 2
        half_residue = (qm_residue // 2) % half_modulus if half_modulus > 0 else 0
    return PairingCongruence(
        n=n,
        a=a,
        q_lm=q_lm,
        nx_coset_step=Fraction(2 * q_lm, a),
        nx_integral=nx_integral,
        qm_modulus=qm_modulus,
        qm_residue=qm_residue,
        form_even_forced=forced_even,
        mx_integral=mx_integral,
        half_modulus=half_modulus,
        half_residue=half_residue,
    )


def divisibility_residues(n: int, c_x: Fraction | int, n_x: int) -> ResidueSet:
    """Exact residues q for which the degree-3 candidate takes integer values.

    The raw modulus is the lcm of the coefficient denominators; the result
    is returned canonically reduced, with every modulus reduction verified
    to preserve membership (nothing is assumed about which prime parts of
    the modulus actually constrain).
    """
    if n != 3:
        raise UnsupportedCase("divisibility residues are defined for n = 3")
    if n_x < 1:
        raise ValueError("n_x must be a positive integer")
    return integrality_residues(cubic_prr(c_x, n_x)).reduce()


def square_closure(rs: ResidueSet) -> ResidueSet:
    """Largest subset whose members keep their whole square orbit allowed.

    A represented value q forces k^2 q to be represented for every k, so a
    viable residue's orbit {k^2 r mod M} must stay inside the allowed set;
    the filter is iterated to a fixed point.
    """
    m = rs.modulus
    squares = {(k * k) % m for k in range(1, m + 1)}
    allowed = set(rs.allowed)
    while True:
        viable = {r for r in allowed if all((s * r) % m in allowed for s in squares)}
        if viable == allowed:
            return ResidueSet(m, frozenset(viable))
        allowed = viable


def hyperbolic_exclusion(odd_residue: int, modulus: int) -> bool:
    """Whether a lone odd residue class is impossible for the represented values.

    If every odd value falls in one residue class, adding isotropic-pair
    multiples forces t*u + t*x + u*y = 0 mod 4 for all t, u and the pair
    products x, y.  Exhausting (x, y) and (t, u) over (Z/4)^2 shows some
    choice of (t, u) always violates the congruence, which is the
    contradiction; the modulus (8 or 16) only scopes the uniqueness
    assumption made by the caller.
    """
    if modulus not in (8, 16):
        raise ValueError("modulus must be 8 or 16")
    if odd_residue % 2 == 0:
        raise ValueError("residue must be odd")
    r4 = range(4)
    return all(
        any((t * u + t * x + u * y) % 4 for t, u in product(r4, r4))
        for x, y in product(r4, r4)
    )


def gcd_constraint(rs: ResidueSet, required_gcd: int) -> str:
    """"consistent" or "contradiction" for the represented-value gcd.

    The gcd of all represented values is 1 (form not even) or 2 (even), so
    a residue set whose members are all divisible by twice the required
    gcd is impossible.  Divisibility by d is only decided by residues when
    d divides the modulus.
    """
    if required_gcd not in (1, 2):
        raise ValueError("required_gcd must be 1 or 2")
    d = 2 * required_gcd
    if rs.modulus % d:
        return "consistent"
    if rs.allowed and any(r % d for r in rs.allowed):
        return "consistent"
    return "contradiction"


# -- the mechanized n = 3 pipeline ----------------------------------------


@dataclass(frozen=True)
class TraceStep:
    rule: str
    detail: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "detail": self.detail}


@dataclass
class CandidateAnalysis:
    """One n_x (or m_x, on the halved branch) candidate and its fate."""

    sweep_var: str  # "n_x" or "m_x"
    sweep_value: int
    n_x: int
    p_rr: Poly
    residues: ResidueSet
    parity: str  # "even" | "undetermined"
    status: str  # "survives" | "rejected"
    rejected_by: Optional[str]
    trace: list[TraceStep] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "sweep_var": self.sweep_var,
            "sweep_value": self.sweep_value,
            "n_x": self.n_x,
            "p_rr": self.p_rr.to_json(),
            "residues": {
                "modulus": self.residues.modulus,
                "allowed": self.residues.sorted_residues(),
            },
            "parity": self.parity,
            "status": self.status,
            "rejected_by": self.rejected_by,
            "trace": [t.to_json() for t in self.trace],
        }


@dataclass
class PairingBranch:
    q_lm: int
    c_x: Fraction
    form_even_forced: bool
    congruence: PairingCongruence
    bounds: MxBounds
    sweep_var: str
    sweep_max: int
    candidates: list[CandidateAnalysis]
    survivors: list[int]  # surviving n_x values
    parity_verdict: str  # "even" | "not-even" | "contradiction"
    status: str  # "survives" | "rejected"

    def to_json(self) -> dict:
        return {
            "q_lm": self.q_lm,
            "c_x": rat_str(self.c_x),
            "form_even_forced": self.form_even_forced,
            "congruence": self.congruence.to_json(),
            "mx_bounds": self.bounds.to_json(),
            "sweep_var": self.sweep_var,
            "sweep_max": self.sweep_max,
            "candidates": [c.to_json() for c in self.candidates],
            "survivors": self.survivors,
            "parity_verdict": self.parity_verdict,
            "status": self.status,
        }


@dataclass
class IsotropicCase:
    """Full case report: branches per pairing value, traces, and survivors."""

    n: int
    a: int
    assumed_even: Optional[bool]
    branches: list[PairingBranch]

    def __post_init__(self) -> None:
        for branch in self.branches:
            if branch.c_x * branch.q_lm**self.n != self.a * double_factorial(2 * self.n - 1):
                raise ValueError("branch violates c_x q_lm^n = a (2n-1)!!")

    @property
    def survivors(self) -> list[tuple[int, int]]:
        return [(b.q_lm, nx) for b in self.branches for nx in b.survivors]

    def surviving_prr(self) -> dict[int, Poly]:
        """Map n_x -> P_RR over every candidate that survived its branch."""
        out: dict[int, Poly] = {}
        for branch in self.branches:
            for cand in branch.candidates:
                if cand.status == "survives":
                    out[cand.n_x] = cand.p_rr
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "assumed_even": self.assumed_even,
            "branches": [b.to_json() for b in self.branches],
            "survivors": [{"q_lm": q, "n_x": nx} for q, nx in self.survivors],
        }


def _strict_int_below(x: Fraction) -> int:
    """Largest integer strictly less than x."""
    return math.ceil(x) - 1


def _residue_summary(rs: ResidueSet) -> str:
    residues = rs.sorted_residues()
    if len(residues) > 12:
        body = ", ".join(str(r) for r in residues[:12]) + ", ..."
    else:
        body = ", ".join(str(r) for r in residues)
    return f"{{{body}}} mod {rs.modulus}"


def _odd_part(m: int) -> int:
    while m % 2 == 0:
        m //= 2
    return m


def _analyze_candidate(
    a: int,
    q_lm: int,
    c_x: Fraction,
    sweep_value: int,
    cong: PairingCongruence,
    assumed_even: Optional[bool],
) -> CandidateAnalysis:
    halved = q_lm == 2
    n_x = 2 * sweep_value if halved else sweep_value
    p_rr = cubic_prr(c_x, n_x)
    sieve_poly = poly_compose_affine(p_rr, 2, 0) if halved else p_rr
    value_word = "half-value" if halved else "value"
    trace: list[TraceStep] = []

    rs = integrality_residues(sieve_poly).reduce()
    work = math.lcm(rs.modulus, 16)
    rs = rs.lift(work)
    trace.append(
        TraceStep(
            "divisibility",
            f"P integral on {value_word}s {_residue_summary(rs.reduce())}",
        )
    )

    def rejected(rule: str, detail: str, residues: ResidueSet, parity: str) -> CandidateAnalysis:
        trace.append(TraceStep(rule, detail))
        return CandidateAnalysis(
            sweep_var="m_x" if halved else "n_x",
            sweep_value=sweep_value,
            n_x=n_x,
            p_rr=p_rr,
            residues=residues,
            parity=parity,
            status="rejected",
            rejected_by=rule,
            trace=trace,
        )

    # Forced odd divisor: an odd prime dividing every represented value
    # (or half-value) contradicts the represented gcd being 1 or 2.
    forced = math.gcd(work, *rs.allowed) if rs.allowed else work
    odd_forced = _odd_part(forced)
    if odd_forced > 1:
        return rejected(
            "gcd",
            f"every {value_word} is divisible by {odd_forced}; "
            "the gcd of represented values is 1 or 2",
            rs,
            "undetermined",
        )

    closed = square_closure(rs)
    removed = sorted(set(rs.allowed) - set(closed.allowed))
    if removed:
        trace.append(
            TraceStep(
                "square closure",
                f"square orbits remove residues {removed}; remaining "
                f"{_residue_summary(closed)}",
            )
        )

    odds = sorted(r for r in closed.allowed if r % 2)
    if odds:
        classes_mod8 = sorted({r % 8 for r in odds})
        if len(classes_mod8) == 1 and hyperbolic_exclusion(classes_mod8[0], 8):
            closed = ResidueSet(work, frozenset(set(closed.allowed) - set(odds)))
            trace.append(
                TraceStep(
                    "hyperbolic exclusion",
                    f"lone odd class {classes_mod8[0]} mod 8 excluded by the "
                    f"bilinear contradiction mod 4; residues {odds} removed",
                )
            )
            odds = []

    parity = "even" if not odds else "undetermined"
    if parity == "even":
        trace.append(TraceStep("parity", f"all surviving {value_word}s are even"))

    # Parity coupling from the pairing congruence.
    if parity == "even":
        if not halved and cong.qm_modulus % 2 == 0:
            required_qm_parity = (cong.qm_residue - n_x) % 2
            if required_qm_parity == 1:
                return rejected(
                    "parity",
                    f"q(m) + n_x must be = {cong.qm_residue} mod {cong.qm_modulus} "
                    f"so q(m) would be odd, but every value is even",
                    closed,
                    parity,
                )
        if halved and cong.half_modulus is not None and cong.half_modulus % 2 == 0:
            required_half_parity = (cong.half_residue - sweep_value) % 2
            if required_half_parity == 1:
                return rejected(
                    "parity",
                    f"q(m)/2 + m_x must be = {cong.half_residue} mod {cong.half_modulus} "
                    f"so q(m)/2 would be odd, but every half-value is even",
                    closed,
                    parity,
                )

    if assumed_even is False and gcd_constraint(closed, 1) == "contradiction":
        return rejected(
            "gcd",
            "every value is even, contradicting gcd 1 for a non-even form",
            closed,
            parity,
        )

    if halved:
        # Represented values are twice the half-values; an all-even
        # half-value set makes every value 0 mod 4, against gcd 2.
        values = ResidueSet(2 * work, frozenset((2 * r) % (2 * work) for r in closed.allowed))
        if gcd_constraint(values, 2) == "contradiction":
            return rejected(
                "gcd",
                "every represented value is 0 mod 4, but an even form has "
                "represented-value gcd exactly 2",
                closed,
                parity,
            )
    else:
        if (
            gcd_constraint(closed, 1) == "contradiction"
            and gcd_constraint(closed, 2) == "contradiction"
        ):
            return rejected(
                "gcd",
                "every represented value is 0 mod 4; the gcd of represented "
                "values is 1 or 2",
                closed,
                parity,
            )

    return CandidateAnalysis(
        sweep_var="m_x" if halved else "n_x",
        sweep_value=sweep_value,
        n_x=n_x,
        p_rr=p_rr,
        residues=closed,
        parity=parity,
        status="survives",
        rejected_by=None,
        trace=trace,
    )


def solve_case(n: int, a: int, even_form: Optional[bool] = None) -> IsotropicCase:
    """Run the full elimination for n = 3, a in {1, 2}.

    ``even_form`` None leaves the parity of the quadratic form open (the
    default); True assumes it even; False assumes it not even, which
    restricts the pairing candidates and turns an all-even conclusion into
    a contradiction.
    """
    if n != 3 or a not in (1, 2):
        raise UnsupportedCase("unsupported case: the full elimination covers n=3, a in {1, 2}")
    c_n = cn_value(n).value
    even_candidates = pairing_candidates(n, a, even_form=True, c_n=c_n)
    noteven_candidates = pairing_candidates(n, a, even_form=False, c_n=c_n)
    qlms = noteven_candidates if even_form is False else even_candidates

    branches: list[PairingBranch] = []
    for q_lm in qlms:
        c_x = fujiki_from_pairing(n, a, q_lm)
        cong = pairing_congruence(n, a, q_lm, c_n=c_n)
        bounds = mx_upper_bounds(n, a, q_lm, c_n=c_n)
        halved = q_lm == 2
        if halved and not cong.mx_integral:
            raise AssertionError("halved branch requires integral m_x")
        if not halved and not cong.nx_integral:
            raise AssertionError("integer sweep requires integral n_x")
        # n_x < 2 * bound, and on the halved branch m_x < bound.
        sweep_max = _strict_int_below(bounds.pairing_bound if halved else 2 * bounds.pairing_bound)
        candidates = [
            _analyze_candidate(a, q_lm, c_x, value, cong, even_form)
            for value in range(1, sweep_max + 1)
        ]
        survivors = [c.n_x for c in candidates if c.status == "survives"]
        if not survivors:
            verdict = "contradiction"
        elif all(c.parity == "even" for c in candidates if c.status == "survives"):
            verdict = "even"
        else:
            verdict = "not-even" if even_form is False else "undetermined"
        branches.append(
            PairingBranch(
                q_lm=q_lm,
                c_x=c_x,
                form_even_forced=cong.form_even_forced,
                congruence=cong,
                bounds=bounds,
                sweep_var="m_x" if halved else "n_x",
                sweep_max=sweep_max,
                candidates=candidates,
                survivors=survivors,
                parity_verdict=verdict,
                status="survives" if survivors else "rejected",
            )
        )
    return IsotropicCase(n=n, a=a, assumed_even=even_form, branches=branches)

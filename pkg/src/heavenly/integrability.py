"""Travelling-wave reductions, integrability decisions, and classification.

A 4D equation is integrable iff every nondegenerate travelling-wave
reduction is a linearisable 3D equation; exact random sampling of the
reduction parameters makes one failing sample a proof of non-integrability,
while many passing samples plus the singular-variety evidence support the
positive verdict.  Purely quadratic representatives are classified exactly
through the pair of binary quartics attached to the ten-dimensional space
of doubly-tangent quadratic equations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NoSamplePoint, NotInEF, ZeroReduction
from .forms import b_omega_lambda
from .grassmann import (
    LagrangePoint,
    MAEquation,
    osculating_containment,
    partial_legendre,
    singular_locus_quadratic,
    meets_all_sublagrangians,
    ucoord,
    uvar,
)
from .liesp import is_reductive, nondegenerate, symmetry_algebra
from .poly import Polynomial
from .quartic import BinaryQuartic, is_harmonic, multiplicity_pattern, quartic_invariants


@dataclass(frozen=True)
class ReductionSample:
    """Direction (alpha, beta, gamma) and quadratic shift for one reduction."""

    k: Tuple[Fraction, Fraction, Fraction]
    q: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_values(cls, k, q) -> "ReductionSample":
        kk = tuple(Fraction(x) for x in k)
        if len(kk) != 3:
            raise ValueError("need three direction constants")
        qq = tuple(tuple(Fraction(x) for x in row) for row in q)
        if len(qq) != 4 or any(len(r) != 4 for r in qq):
            raise ValueError("quadratic shift must be a 4x4 matrix")
        for i in range(4):
            for j in range(4):
                if qq[i][j] != qq[j][i]:
                    raise ValueError("quadratic shift must be symmetric")
        return cls(kk, qq)

    @classmethod
    def zero(cls, k=(0, 0, 0)) -> "ReductionSample":
        return cls.from_values(k, [[0] * 4 for _ in range(4)])

    @classmethod
    def random(cls, rng: Random) -> "ReductionSample":
        k = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3)]
        q = [[Fraction(0)] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i, 4):
                q[i][j] = q[j][i] = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
        return cls.from_values(k, q)


def travelling_wave_reduce(eq: MAEquation, sample: ReductionSample) -> MAEquation:
    """Reduce along u = w(x1 + a x4, x2 + b x4, x3 + c x4) + Q(x, x)."""
    if eq.n != 4:
        raise ValueError("travelling-wave reduction starts from n = 4")
    k = sample.k
    q = sample.q
    mapping: Dict[str, Polynomial] = {}
    for a in range(1, 4):
        for b in range(a, 4):
            mapping[ucoord(a, b)] = uvar(a, b) + 2 * q[a - 1][b - 1]
    for a in range(1, 4):
        img = Polynomial.constant(2 * q[a - 1][3])
        for b in range(1, 4):
            if k[b - 1]:
                img = img + k[b - 1] * uvar(a, b)
        mapping[ucoord(a, 4)] = img
    img44 = Polynomial.constant(2 * q[3][3])
    for a in range(1, 4):
        for b in range(1, 4):
            if k[a - 1] and k[b - 1]:
                img44 = img44 + k[a - 1] * k[b - 1] * uvar(a, b)
    mapping[ucoord(4, 4)] = img44
    reduced = eq.poly.subs(mapping)
    if reduced.is_zero():
        raise ZeroReduction("reduction vanished identically in this direction")
    return MAEquation.from_poly(3, reduced)


class Linearisability(Enum):
    LINEARISABLE = "linearisable"
    NOT_LINEARISABLE = "not-linearisable"
    DEGENERATE = "degenerate"


def linearisable_3d(eq: MAEquation, seed: int = 0, rng: Optional[Random] = None
                    ) -> Linearisability:
    """Nondegenerate 3D equations are linearisable iff the stabilizer has dim 9."""
    if eq.n != 3:
        raise ValueError("the linearisability test is for n = 3")
    try:
        nondeg = nondegenerate(eq, seed=seed, rng=rng)
    except NoSamplePoint:
        nondeg = False
    if not nondeg:
        return Linearisability.DEGENERATE
    dim = symmetry_algebra(eq).dim
    return (Linearisability.LINEARISABLE if dim == 9
            else Linearisability.NOT_LINEARISABLE)


def permute_equation(eq: MAEquation, perm: Sequence[int]) -> MAEquation:
    """Relabel chart indices by the permutation (1-based images)."""
    mapping = {}
    for a in range(1, eq.n + 1):
        for b in range(a, eq.n + 1):
            mapping[ucoord(a, b)] = uvar(perm[a - 1], perm[b - 1])
    return MAEquation.from_poly(eq.n, eq.poly.subs(mapping))


def find_quadratic_chart(eq: MAEquation):
    """The Legendre flip exposing the largest singular slice, if any is quadratic.

    A chart sees the singular variety only through a linear slice, so all
    flips are scanned and the purely quadratic representative with maximal
    singular dimension is returned as (flip, equation, dimension, kernel).
    """
    n = eq.n
    best = None
    for size in range(n + 1):
        for s in combinations(range(1, n + 1), size):
            moved = partial_legendre(eq, s) if s else eq
            if not moved.poly.is_homogeneous(2):
                continue
            dim, kernel = singular_locus_quadratic(moved)
            if best is None or dim > best[2]:
                best = (tuple(s), moved, dim, kernel)
    return best


def find_osculating_certificate(eq: MAEquation):
    """(flip, point) with the osculating space contained at that chart point.

    Chart origins are scanned across all Legendre flips; for n = 3 the
    singular directions of quadratic representatives are checked too.
    """
    n = eq.n
    for size in range(n + 1):
        for s in combinations(range(1, n + 1), size):
            moved = partial_legendre(eq, s) if s else eq
            if osculating_containment(moved, LagrangePoint.origin(n)):
                return tuple(s), LagrangePoint.origin(n)
            if n == 3 and moved.poly.is_homogeneous(2):
                _, kernel = singular_locus_quadratic(moved)
                for mat in kernel:
                    point = LagrangePoint.from_rows(n, mat)
                    if osculating_containment(moved, point):
                        return tuple(s), point
    return None


class Verdict(Enum):
    INTEGRABLE = "integrable"
    NOT_INTEGRABLE = "not-integrable"
    LINEARISABLE = "linearisable"
    DEGENERATE = "degenerate"


@dataclass
class IntegrabilityReport:
    verdict: Verdict
    samples_run: int = 0
    degenerate_skipped: int = 0
    failing_sample: Optional[dict] = None
    nondegenerate: bool = True
    symmetry_dim: Optional[int] = None
    quadratic_flip: Optional[Tuple[int, ...]] = None
    singular_dim: Optional[int] = None
    meets_all: Optional[bool] = None
    osculating_flip: Optional[Tuple[int, ...]] = None
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "samples-run": self.samples_run,
            "degenerate-skipped": self.degenerate_skipped,
            "nondegenerate": self.nondegenerate,
        }
        if self.symmetry_dim is not None:
            out["symmetry-dim"] = self.symmetry_dim
        if self.failing_sample is not None:
            out["failing-sample"] = self.failing_sample
        if self.quadratic_flip is not None:
            out["quadratic-flip"] = list(self.quadratic_flip)
            out["singular-dim"] = self.singular_dim
            out["meets-all-sublagrangians"] = self.meets_all
        if self.osculating_flip is not None:
            out["osculating-flip"] = list(self.osculating_flip)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def integrable_4d(eq: MAEquation, trials: int = 50, seed: int = 0) -> IntegrabilityReport:
    """Decide integrability of a 4D equation by exhausting reduction samples.

    Every nondegenerate travelling-wave reduction (over random directions,
    quadratic shifts and coordinate permutations) must be linearisable; one
    exact failure is a counterexample.  Purely quadratic representatives
    contribute the singular-variety evidence, and equations with the full
    n^2-dimensional stabilizer are reported as linearisable outright.
    """
    if eq.n != 4:
        raise ValueError("the integrability decision is for n = 4")
    rng = Random(seed)
    report = IntegrabilityReport(Verdict.INTEGRABLE)
    if not nondegenerate(eq, rng=rng):
        report.verdict = Verdict.DEGENERATE
        report.nondegenerate = False
        return report
    report.symmetry_dim = symmetry_algebra(eq).dim

    quad = find_quadratic_chart(eq)
    if quad is not None:
        flip, moved, dim, kernel = quad
        report.quadratic_flip = flip
        report.singular_dim = dim
        report.meets_all = meets_all_sublagrangians(moved, kernel, seed=seed)

    perms = list(permutations((1, 2, 3, 4)))
    for _ in range(trials):
        sample = ReductionSample.random(rng)
        perm = perms[rng.randrange(len(perms))]
        try:
            reduced = travelling_wave_reduce(permute_equation(eq, perm), sample)
        except ZeroReduction:
            report.degenerate_skipped += 1
            continue
        status = linearisable_3d(reduced, rng=rng)
        report.samples_run += 1
        if status is Linearisability.DEGENERATE:
            report.degenerate_skipped += 1
        elif status is Linearisability.NOT_LINEARISABLE:
            report.verdict = Verdict.NOT_INTEGRABLE
            report.failing_sample = {
                "permutation": list(perm),
                "k": [str(x) for x in sample.k],
                "q": [[str(x) for x in row] for row in sample.q],
            }
            break

    if report.verdict is Verdict.INTEGRABLE:
        if report.symmetry_dim == 16:
            report.verdict = Verdict.LINEARISABLE
            cert = find_osculating_certificate(eq)
            if cert is not None:
                report.osculating_flip = cert[0]
            else:
                report.notes.append("full stabilizer found, no chart-origin certificate")
        if report.quadratic_flip is not None and report.verdict is Verdict.INTEGRABLE:
            if report.singular_dim != 4 or not report.meets_all:
                report.notes.append(
                    "singular-variety evidence disagrees with reduction sampling")
    return report


# -- the ten-dimensional space of doubly tangent quadratics -----------------


@lru_cache(maxsize=None)
def ef_basis() -> Tuple[Tuple[Polynomial, ...], Tuple[Polynomial, ...]]:
    """The two pentads of quadratic equations matched to binary quartics."""
    u = uvar
    half = Fraction(1, 2)
    sixth = Fraction(1, 6)
    third = Fraction(1, 3)
    e = (
        u(1, 1) * u(2, 2) - u(1, 2) ** 2,
        half * (u(1, 1) * u(2, 4) - u(1, 2) * u(1, 4)
                + u(2, 2) * u(1, 3) - u(1, 2) * u(2, 3)),
        sixth * (u(1, 1) * u(4, 4) - u(1, 4) ** 2 + u(2, 2) * u(3, 3) - u(2, 3) ** 2)
        + third * (2 * u(1, 3) * u(2, 4) - u(1, 4) * u(2, 3) - u(1, 2) * u(3, 4)),
        half * (u(3, 3) * u(2, 4) - u(2, 3) * u(3, 4)
                + u(4, 4) * u(1, 3) - u(1, 4) * u(3, 4)),
        u(3, 3) * u(4, 4) - u(3, 4) ** 2,
    )
    f = (
        u(1, 1) * u(3, 3) - u(1, 3) ** 2,
        half * (u(1, 1) * u(3, 4) - u(1, 3) * u(1, 4)
                + u(3, 3) * u(1, 2) - u(1, 3) * u(2, 3)),
        sixth * (u(1, 1) * u(4, 4) - u(1, 4) ** 2 + u(2, 2) * u(3, 3) - u(2, 3) ** 2)
        + third * (2 * u(1, 2) * u(3, 4) - u(1, 4) * u(2, 3) - u(1, 3) * u(2, 4)),
        half * (u(2, 2) * u(3, 4) - u(2, 3) * u(2, 4)
                + u(4, 4) * u(1, 2) - u(1, 4) * u(2, 4)),
        u(2, 2) * u(4, 4) - u(2, 4) ** 2,
    )
    return e, f


def tangency_points() -> Tuple[List[List[Fraction]], List[List[Fraction]]]:
    """The two finite base points all doubly tangent quadratics go through."""
    origin = [[Fraction(0)] * 4 for _ in range(4)]
    third = [[Fraction(0)] * 4 for _ in range(4)]
    third[0][3] = third[3][0] = Fraction(1)
    third[1][2] = third[2][1] = Fraction(-1)
    return origin, third


@dataclass(frozen=True)
class QuarticPair:
    """Quartics (p, q) describing a vector of the tangent pencil as p - q."""

    p: BinaryQuartic
    q: BinaryQuartic

    def reconstruct(self) -> MAEquation:
        e, f = ef_basis()
        total = Polynomial.zero()
        for c, poly in zip(self.p.coeffs(), e):
            if c:
                total = total + c * poly
        for c, poly in zip(self.q.coeffs(), f):
            if c:
                total = total - c * poly
        if total.is_zero():
            raise ValueError("zero quartic pair")
        return MAEquation.from_poly(4, total)


def ef_coordinates(eq: MAEquation) -> QuarticPair:
    """Decompose a quadratic equation over the tangent pencil, as p - q."""
    if eq.n != 4:
        raise NotInEF("the tangent pencil lives in n = 4")
    e, f = ef_basis()
    polys = list(e) + list(f)
    from .linalg import RatMatrix, solve_linear
    from .poly import mono_order_key

    monomials = sorted({m for p in polys for m in p.terms}, key=mono_order_key)
    index = {m: i for i, m in enumerate(monomials)}
    rows = [[Fraction(0)] * len(polys) for _ in monomials]
    for j, p in enumerate(polys):
        for m, c in p.terms.items():
            rows[index[m]][j] = c
    target = [Fraction(0)] * len(monomials)
    for m, c in eq.poly.terms.items():
        if m not in index:
            raise NotInEF("equation is outside the doubly tangent quadratic pencil")
        target[index[m]] = c
    sol = solve_linear(RatMatrix(rows), target)
    if sol is None:
        raise NotInEF("equation is outside the doubly tangent quadratic pencil")
    coeffs = sol[0]
    p = BinaryQuartic.from_coeffs(coeffs[:5])
    q = BinaryQuartic.from_coeffs([-c for c in coeffs[5:]])
    return QuarticPair(p, q)


CASE_NAMES = {
    1: "general heavenly",
    2: "Husain",
    3: "first heavenly",
    4: "degenerate equation",
    5: "modified heavenly",
    6: "second heavenly",
    7: "degenerate equation",
    8: "Hess u = 1 (non-integrable)",
    9: "linear wave",
    10: "degenerate equation",
}

_PATTERN_CLASS = {
    (4,): 1,          # nonzero constant: quadruple root at infinity
    (3, 1): 2,        # t
    (2, 2): 3,        # t^2
    (2, 1, 1): 4,     # t^2 - 1
    (1, 1, 1, 1): 5,  # four distinct roots
}

# Case 5 is the pair (t, t): the proof's enumeration is authoritative here,
# and the reconstructed (t, t) equation indeed carries the 13-dimensional
# stabilizer of the modified heavenly equation while (t^2, t) does not.
_CASE_TABLE = {
    frozenset({(5, "h"), (5, "h")}): 1,
    frozenset({(5, "g"), (5, "g")}): 1,
    frozenset({(5, "h"), (5, "g")}): 1,
    frozenset({(4, ""), (4, "")}): 2,
    frozenset({(4, ""), (3, "")}): 3,
    frozenset({(3, ""), (3, "")}): 4,
    frozenset({(2, ""), (2, "")}): 5,
    frozenset({(2, ""), (1, "")}): 6,
    frozenset({(1, ""), (1, "")}): 7,
    frozenset({(5, "h"), (0, "")}): 8,
    frozenset({(2, ""), (0, "")}): 9,
    frozenset({(1, ""), (0, "")}): 10,
}


@dataclass(frozen=True)
class Classification:
    case: Optional[int]
    name: str
    pattern_p: Optional[Tuple[int, ...]]
    pattern_q: Optional[Tuple[int, ...]]
    singular_dim: Optional[int] = None
    j_invariants: Optional[Tuple[Optional[Fraction], Optional[Fraction]]] = None

    @property
    def recognized(self) -> bool:
        return self.case is not None


def _quartic_class(q: BinaryQuartic):
    if q.is_zero():
        return (0, ""), None
    pattern = multiplicity_pattern(q)
    cls = _PATTERN_CLASS[pattern]
    if cls == 5:
        return (5, "h" if is_harmonic(q) else "g"), pattern
    return (cls, ""), pattern


def _j_invariant(q: BinaryQuartic) -> Optional[Fraction]:
    """Orbit invariant I^3 / (I^3 - 27 J^2) for quartics with distinct roots."""
    i_inv, j_inv, disc = quartic_invariants(q)
    if disc == 0:
        return None
    return i_inv ** 3 / disc


def classify_quartic_pair(pair: QuarticPair) -> Classification:
    """Match the root-pattern pair against the ten-row case table."""
    cls_p, pat_p = _quartic_class(pair.p)
    cls_q, pat_q = _quartic_class(pair.q)
    key = frozenset({cls_p, cls_q}) if cls_p != cls_q else frozenset({cls_p})
    case = _CASE_TABLE.get(key)
    singular_dim = None
    j_invs = None
    if case == 1:
        # four distinct roots on both sides: confirm the tangency variety
        # is four-dimensional before naming it, and report both orbit invariants
        singular_dim, _ = singular_locus_quadratic(pair.reconstruct())
        j_invs = (_j_invariant(pair.p), _j_invariant(pair.q))
        if singular_dim != 4:
            return Classification(None, "unrecognized", pat_p, pat_q,
                                  singular_dim, j_invs)
    if case is None:
        try:
            singular_dim, _ = singular_locus_quadratic(pair.reconstruct())
        except ValueError:
            singular_dim = None
        return Classification(None, "unrecognized", pat_p, pat_q, singular_dim)
    return Classification(case, CASE_NAMES[case], pat_p, pat_q, singular_dim, j_invs)


# -- fingerprints ------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    symmetry_dim: int
    lambda_zero: bool
    reductive: Optional[bool]
    nondegenerate: bool

    def as_dict(self) -> dict:
        out = {
            "symmetry-dim": self.symmetry_dim,
            "lambda-zero": self.lambda_zero,
            "nondegenerate": self.nondegenerate,
        }
        out["reductive"] = self.reductive if self.reductive is not None else "n/a"
        return out


_NORMAL_FORM_FINGERPRINTS = {
    (16, True, None, True): "linear wave",
    (14, True, None, True): "second heavenly",
    (13, True, None, True): "modified heavenly",
    (13, False, None, True): "first heavenly",
    (12, False, False, True): "Husain",
    (12, False, True, True): "general heavenly",
}


def fingerprint(eq: MAEquation, seed: int = 0) -> Fingerprint:
    """(stabilizer dimension, lambda vanishing, reductivity at dim 12, symbol rank)."""
    if eq.n != 4:
        raise ValueError("fingerprints are defined for n = 4")
    alg = symmetry_algebra(eq)
    lambda_zero, _ = b_omega_lambda(eq)
    reductive = is_reductive(alg) if alg.dim == 12 else None
    try:
        nondeg = nondegenerate(eq, seed=seed)
    except NoSamplePoint:
        nondeg = False
    return Fingerprint(alg.dim, lambda_zero, reductive, nondeg)


def identify_equation(eq: MAEquation, seed: int = 0) -> Tuple[Optional[str], Fingerprint]:
    """Name the equation by its invariant fingerprint; None when no row matches."""
    fp = fingerprint(eq, seed=seed)
    key = (fp.symmetry_dim, fp.lambda_zero, fp.reductive, fp.nondegenerate)
    return _NORMAL_FORM_FINGERPRINTS.get(key), fp

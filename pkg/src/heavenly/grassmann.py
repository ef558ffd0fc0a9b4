"""Hyperplane sections of the Plucker-embedded Lagrangian Grassmannian.

The chart identifies a Lagrangian plane with a symmetric n x n matrix U of
variables u_ij (i <= j).  The minors of U (all sizes, the empty minor being
the constant 1) span an N-dimensional space with N = C(2n,n) - C(2n,n+2);
an equation is a hyperplane section, i.e. an element of that span.

The canonical basis is the reduced echelon form of the minor set, degree by
degree, with columns ordered by the frozen monomial order, so coordinates
are reproducible across runs and serializable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

from .errors import DegenerateChart, NotInSpan, NotPurelyQuadratic, UnsupportedDimension
from .linalg import RatMatrix, rank_kernel, rref
from .poly import Monomial, Polynomial, determinant, mono_order_key

MIN_DIM, MAX_DIM = 2, 4


def ucoord(i: int, j: int) -> str:
    return f"u{min(i, j)}{max(i, j)}"


def uvar(i: int, j: int) -> Polynomial:
    return Polynomial.variable(ucoord(i, j))


def chart_vars(n: int) -> List[str]:
    return [ucoord(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def hessian_matrix(n: int) -> List[List[Polynomial]]:
    return [[uvar(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def minor_poly(rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    if not rows:
        return Polynomial.one()
    return determinant([[uvar(i, j) for j in cols] for i in rows])


def all_minors(n: int, size: int) -> List[Polynomial]:
    """All size x size minors of the symmetric Hessian, unordered {rows, cols}."""
    if size == 0:
        return [Polynomial.one()]
    subsets = list(combinations(range(1, n + 1), size))
    out = []
    for a in range(len(subsets)):
        for b in range(a, len(subsets)):
            out.append(minor_poly(subsets[a], subsets[b]))
    return out


@dataclass(frozen=True)
class MinorBasis:
    """Canonical (reduced-echelon) basis of the minor span for dimension n."""

    n: int
    basis_polys: Tuple[Polynomial, ...]
    per_degree_dims: Tuple[int, ...]
    _pivot_index: Dict[Monomial, int] = field(hash=False, compare=False, default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis_polys)

    def degree_slice(self, d: int) -> range:
        start = sum(self.per_degree_dims[:d])
        return range(start, start + self.per_degree_dims[d])


def _echelonize_polys(polys: Sequence[Polynomial]) -> List[Polynomial]:
    monomials = sorted({m for p in polys for m in p.terms}, key=mono_order_key)
    index = {m: k for k, m in enumerate(monomials)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(monomials)
        for m, c in p.terms.items():
            row[index[m]] = c
        rows.append(row)
    _, reduced = rref(rows)
    out = []
    for row in reduced:
        out.append(Polynomial({monomials[k]: c for k, c in enumerate(row) if c}))
    return out


@lru_cache(maxsize=None)
def minor_basis(n: int) -> MinorBasis:
    """Canonical minor basis; supports 2 <= n <= 4."""
    if not MIN_DIM <= n <= MAX_DIM:
        raise UnsupportedDimension(f"n={n} outside supported range {MIN_DIM}..{MAX_DIM}")
    basis: List[Polynomial] = []
    dims: List[int] = []
    for size in range(n + 1):
        echelon = _echelonize_polys(all_minors(n, size))
        dims.append(len(echelon))
        basis.extend(echelon)
    expected = comb(2 * n, n) - comb(2 * n, n + 2)
    assert len(basis) == expected, "minor span dimension mismatch"
    pivots = {p.lead_monomial(): k for k, p in enumerate(basis)}
    return MinorBasis(n, tuple(basis), tuple(dims), pivots)


def decompose(poly: Polynomial, basis: MinorBasis) -> List[Fraction]:
    """Coordinates of poly over basis.basis_polys; raises NotInSpan otherwise."""
    allowed = set(chart_vars(basis.n))
    foreign = poly.variables() - allowed
    if foreign:
        bad = [m for m in poly.terms if any(v in foreign for v, _ in m)]
        raise NotInSpan(_mono_strs(bad))
    coords = [Fraction(0)] * basis.dimension
    rem = poly
    while rem.terms:
        lm = rem.lead_monomial()
        k = basis._pivot_index.get(lm)
        if k is None:
            raise NotInSpan(_mono_strs([lm]))
        c = rem.lead_coeff() / basis.basis_polys[k].lead_coeff()
        coords[k] += c
        rem = rem - c * basis.basis_polys[k]
    return coords


def _mono_strs(monos):
    return [Polynomial({m: Fraction(1)}).__str__() for m in monos]


def combine(coords: Sequence, basis: MinorBasis) -> Polynomial:
    total = Polynomial.zero()
    for c, p in zip(coords, basis.basis_polys):
        if c:
            total = total + Fraction(c) * p
    return total


@dataclass(frozen=True)
class MAEquation:
    """A symplectic Monge-Ampere equation F(u_ij) = 0 in dimension n."""

    n: int
    poly: Polynomial
    coords: Tuple[Fraction, ...]

    @classmethod
    def from_poly(cls, n: int, poly: Polynomial) -> "MAEquation":
        if poly.is_zero():
            raise ValueError("equation polynomial must be nonzero")
        coords = decompose(poly, minor_basis(n))
        return cls(n, poly, tuple(coords))

    @classmethod
    def from_coords(cls, n: int, coords: Sequence) -> "MAEquation":
        basis = minor_basis(n)
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != basis.dimension:
            raise ValueError(f"expected {basis.dimension} coordinates, got {len(cs)}")
        poly = combine(cs, basis)
        if poly.is_zero():
            raise ValueError("equation polynomial must be nonzero")
        return cls(n, poly, cs)

    @property
    def basis(self) -> MinorBasis:
        return minor_basis(self.n)

    def value_at(self, matrix: Sequence[Sequence]) -> Fraction:
        assignment = {ucoord(i + 1, j + 1): Fraction(matrix[i][j])
                      for i in range(self.n) for j in range(i, self.n)}
        return self.poly.evaluate(assignment)

    def scaled(self, c) -> "MAEquation":
        c = Fraction(c)
        if not c:
            raise ValueError("scale must be nonzero")
        return MAEquation(self.n, c * self.poly, tuple(c * x for x in self.coords))

    def __str__(self):
        return f"{self.poly} = 0  (n={self.n})"


@dataclass(frozen=True)
class LagrangePoint:
    """A point of the Grassmannian in a (possibly Legendre-flipped) chart."""

    n: int
    matrix: Tuple[Tuple[Fraction, ...], ...]
    chart: frozenset = frozenset()

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[Sequence], chart=()) -> "LagrangePoint":
        m = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError("matrix shape mismatch")
        for i in range(n):
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise ValueError("matrix must be symmetric")
        return cls(n, m, frozenset(chart))

    @classmethod
    def origin(cls, n: int) -> "LagrangePoint":
        return cls.from_rows(n, [[0] * n for _ in range(n)])


def sym_matrix(n: int, entries: Dict[Tuple[int, int], Fraction]) -> List[List[Fraction]]:
    """Symmetric matrix from upper-triangular entries {(i,j): value}, 1-based."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in entries.items():
        m[i - 1][j - 1] = Fraction(v)
        m[j - 1][i - 1] = Fraction(v)
    return m


def plucker_eval(point: LagrangePoint, basis: MinorBasis) -> List[Fraction]:
    """Values of every canonical basis polynomial at the chart point."""
    if point.chart:
        raise ValueError("plucker_eval expects the plain affine chart")
    assignment = {ucoord(i + 1, j + 1): point.matrix[i][j]
                  for i in range(basis.n) for j in range(i, basis.n)}
    return [p.evaluate(assignment) for p in basis.basis_polys]


def translate(eq: MAEquation, u0: Sequence[Sequence]) -> MAEquation:
    """The equation in the chart shifted by U0, i.e. poly(U + U0)."""
    n = eq.n
    mapping = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            c = Fraction(u0[i - 1][j - 1])
            if c:
                mapping[ucoord(i, j)] = uvar(i, j) + c
    if not mapping:
        return eq
    return MAEquation.from_poly(n, eq.poly.subs(mapping))


def legendre_chart_matrix(matrix: Sequence[Sequence[Fraction]], flip: Sequence[int]):
    """Image of a chart point under the Legendre flip of the given index pairs.

    Block inversion on the flipped block:

        [A B; B^T D]  ->  [A^-1, -A^-1 B; -B^T A^-1, B^T A^-1 B - D]

    which is an exact involution.  Returns None when the flipped block is
    singular (the point is outside the new chart).
    """
    n = len(matrix)
    s = sorted(set(flip))
    t = [i for i in range(1, n + 1) if i not in s]
    a = [[Fraction(matrix[i - 1][j - 1]) for j in s] for i in s]
    det_a = determinant(a)
    if det_a == 0:
        return None
    k = len(s)
    adj = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            sub = [[a[p][q] for q in range(k) if q != j] for p in range(k) if p != i]
            c = determinant(sub) if sub else Fraction(1)
            adj[j][i] = -c if (i + j) % 2 else c
    ainv = [[adj[i][j] / det_a for j in range(k)] for i in range(k)]
    out = [[Fraction(0)] * n for _ in range(n)]
    pos = {idx: p for p, idx in enumerate(s)}
    for ii in s:
        for jj in s:
            out[ii - 1][jj - 1] = ainv[pos[ii]][pos[jj]]
    for ii in s:
        for jj in t:
            v = -sum((ainv[pos[ii]][pos[kk]] * Fraction(matrix[kk - 1][jj - 1]) for kk in s),
                     Fraction(0))
            out[ii - 1][jj - 1] = v
            out[jj - 1][ii - 1] = v
    for ii in t:
        for jj in t:
            v = sum((Fraction(matrix[p - 1][ii - 1]) * ainv[pos[p]][pos[q]]
                     * Fraction(matrix[q - 1][jj - 1]) for p in s for q in s), Fraction(0))
            out[ii - 1][jj - 1] = v - Fraction(matrix[ii - 1][jj - 1])
    return out


@lru_cache(maxsize=None)
def _minor_pairs(n: int) -> Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]:
    pairs = []
    for size in range(n + 1):
        subsets = list(combinations(range(1, n + 1), size))
        for a in range(len(subsets)):
            for b in range(a, len(subsets)):
                pairs.append((subsets[a], subsets[b]))
    return tuple(pairs)


@lru_cache(maxsize=None)
def _minor_polys(n: int) -> Tuple[Polynomial, ...]:
    return tuple(minor_poly(r, c) for r, c in _minor_pairs(n))


@lru_cache(maxsize=None)
def _basis_over_minors(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Each canonical basis polynomial as a combination of the raw minors."""
    from .linalg import solve_linear

    pairs = _minor_pairs(n)
    polys = _minor_polys(n)
    monomials = sorted({m for p in polys for m in p.terms}, key=mono_order_key)
    index = {m: k for k, m in enumerate(monomials)}
    cols = [[Fraction(0)] * len(pairs) for _ in monomials]
    for j, p in enumerate(polys):
        for m, c in p.terms.items():
            cols[index[m]][j] = c
    coeff_matrix = RatMatrix(cols)
    out = []
    for b in minor_basis(n).basis_polys:
        target = [Fraction(0)] * len(monomials)
        for m, c in b.terms.items():
            target[index[m]] = c
        sol = solve_linear(coeff_matrix, target)
        assert sol is not None, "canonical basis element escaped the minor set"
        out.append(tuple(sol[0]))
    return tuple(out)


def _relabel_minor(pair, s: frozenset, n: int):
    """Minor label after the Legendre flip: Plucker rows swap roles on s."""
    r, c = set(pair[0]), set(pair[1])
    c_comp = set(range(1, n + 1)) - c
    r_new = (r - s) | (c_comp & s)
    c_new_comp = (c_comp - s) | (r & s)
    c_new = set(range(1, n + 1)) - c_new_comp
    a, b = tuple(sorted(r_new)), tuple(sorted(c_new))
    return (a, b) if a <= b else (b, a)


@lru_cache(maxsize=None)
def _legendre_signed_relabel(n: int, s: frozenset):
    """For each canonical minor: (index of its image minor, sign).

    The image satisfies  minor(legendre(V)) * det(V_ss) = sign * image(V)
    exactly; the sign is pinned by exact evaluation at sample points where
    no minor vanishes.
    """
    from random import Random

    pairs = _minor_pairs(n)
    polys = _minor_polys(n)
    pair_index = {p: k for k, p in enumerate(pairs)}
    rng = Random(10 * n + len(s))
    s_list = sorted(s)

    def sample_point():
        while True:
            m = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] = m[j][i] = Fraction(rng.randint(-9, 9))
            assignment = {ucoord(i + 1, j + 1): m[i][j] for i in range(n) for j in range(i, n)}
            if all(p.evaluate(assignment) for p in polys if p.degree() > 0):
                return m, assignment

    results = None
    for _ in range(2):  # two independent samples pin and confirm each sign
        v, assignment = sample_point()
        image = legendre_chart_matrix(v, s_list)
        det_s = minor_poly(s_list, s_list).evaluate(assignment) if s_list else Fraction(1)
        img_assignment = {ucoord(i + 1, j + 1): image[i][j]
                          for i in range(n) for j in range(i, n)}
        current = []
        for k, pair in enumerate(pairs):
            new_pair = _relabel_minor(pair, s, n)
            j = pair_index[new_pair]
            lhs = polys[k].evaluate(img_assignment) * det_s
            rhs = polys[j].evaluate(assignment)
            sign = lhs / rhs
            assert sign in (1, -1), f"legendre relabeling failed for {pair} -> {new_pair}"
            current.append((j, int(sign)))
        if results is None:
            results = current
        else:
            assert results == current, "legendre signs disagree between samples"
    return tuple(results)


@lru_cache(maxsize=None)
def legendre_matrix(n: int, s: frozenset) -> RatMatrix:
    """Action of the Legendre flip on canonical coordinates (N x N, exact)."""
    basis = minor_basis(n)
    relabel = _legendre_signed_relabel(n, s)
    minor_images = _basis_over_minors(n)
    polys = _minor_polys(n)
    columns = []
    for k in range(basis.dimension):
        image = Polynomial.zero()
        for m_idx, coeff in enumerate(minor_images[k]):
            if coeff:
                j, sign = relabel[m_idx]
                image = image + coeff * sign * polys[j]
        columns.append(decompose(image, basis))
    return RatMatrix([[columns[k][i] for k in range(basis.dimension)]
                      for i in range(basis.dimension)])


def partial_legendre(eq: MAEquation, flip: Sequence[int]) -> MAEquation:
    """Chart change swapping (x^i, u_i) for i in flip.

    The Hessian transforms by block inversion on the flipped block (see
    legendre_chart_matrix), an exact involution.  On the span the flip acts
    linearly over a single det(A) denominator, so the whole transform is a
    cached exact matrix on canonical coordinates.  The result is rescaled
    so its leading coefficient in the frozen monomial order is 1.
    """
    n = eq.n
    s = frozenset(flip)
    if any(i < 1 or i > n for i in s):
        raise ValueError("flip indices out of range")
    if not s:
        return eq
    new_coords = legendre_matrix(n, s).mat_vec(eq.coords)
    poly = combine(new_coords, eq.basis)
    if poly.is_zero():
        raise DegenerateChart("legendre transform produced the zero polynomial")
    return MAEquation.from_poly(n, poly.monic())


def quadratic_form_matrix(eq: MAEquation) -> RatMatrix:
    """Symmetric matrix of a purely quadratic equation over the chart variables."""
    if not (eq.poly.is_homogeneous(2) and not eq.poly.is_zero()):
        raise NotPurelyQuadratic("equation is not purely quadratic in the chart variables")
    names = chart_vars(eq.n)
    idx = {v: k for k, v in enumerate(names)}
    m = len(names)
    h = [[Fraction(0)] * m for _ in range(m)]
    for mono, c in eq.poly.terms.items():
        if len(mono) == 1:
            v, e = mono[0]
            assert e == 2
            h[idx[v]][idx[v]] = c
        else:
            (v1, _), (v2, _) = mono
            h[idx[v1]][idx[v2]] = c / 2
            h[idx[v2]][idx[v1]] = c / 2
    return RatMatrix(h)


def singular_locus_quadratic(eq: MAEquation):
    """Singular locus {F = 0, grad F = 0} of a purely quadratic equation.

    Returns (dimension, kernel directions as symmetric matrices).
    """
    h = quadratic_form_matrix(eq)
    rank, kernel = rank_kernel(h)
    names = chart_vars(eq.n)
    directions = []
    for vec in kernel:
        m = [[Fraction(0)] * eq.n for _ in range(eq.n)]
        for k, name in enumerate(names):
            i, j = int(name[1]), int(name[2])
            m[i - 1][j - 1] = vec[k]
            m[j - 1][i - 1] = vec[k]
        directions.append(m)
    return len(names) - rank, directions


def meets_all_sublagrangians(eq: MAEquation, kernel_basis: Sequence,
                             trials: int = 16, seed: int = 0) -> bool:
    """Whether the tangency directions sweep out the whole symplectic space.

    The map (t, x) -> (x, U(t) x) with U(t) = sum t_k B_k over the kernel
    directions is dominant iff its Jacobian has generic rank 2n; after
    column reduction this is the condition that the n x d matrix
    [B_1 x ... B_d x] reaches rank n.  Random exact evaluations certify a
    positive answer; the symbolic-minor fallback decides the rest.
    """
    from random import Random

    n = eq.n
    if n != 4:
        raise UnsupportedDimension("sub-Grassmannian sweep test is specific to n=4")
    mats = [RatMatrix(b) for b in kernel_basis]
    d = len(mats)
    if d < n:
        return False
    rng = Random(seed)
    for _ in range(trials):
        x = [Fraction(rng.randint(-1000, 1000)) for _ in range(n)]
        cols = [m.mat_vec(x) for m in mats]
        grid = RatMatrix([[cols[k][i] for k in range(d)] for i in range(n)])
        rank, _ = rank_kernel(grid)
        if rank == n:
            return True
    # symbolic fallback: some n x n minor of [B_k x] must be a nonzero polynomial
    xs = [Polynomial.variable(f"x{i+1}") for i in range(n)]
    sym_cols = []
    for m in mats:
        col = []
        for i in range(n):
            acc = Polynomial.zero()
            for j in range(n):
                if m.entries[i][j]:
                    acc = acc + m.entries[i][j] * xs[j]
            col.append(acc)
        sym_cols.append(col)
    for pick in combinations(range(d), n):
        det = determinant([[sym_cols[k][i] for k in pick] for i in range(n)])
        if not det.is_zero():
            return True
    return False


def osculating_containment(eq: MAEquation, point: LagrangePoint) -> bool:
    """Whether the hyperplane contains the osculating space O_{n-2} at the point.

    After translating the point to the origin, the equation must have zero
    coefficients on every basis element of degree <= n-2 (constant included),
    i.e. consist of minors of orders n-1 and n only.
    """
    if point.chart:
        raise ValueError("osculating test expects the plain affine chart")
    neg = [[-x for x in row] for row in point.matrix]
    moved = translate(eq, neg)
    basis = eq.basis
    cutoff = sum(basis.per_degree_dims[: eq.n - 1])
    return all(c == 0 for c in moved.coords[:cutoff])


# -- serialization ---------------------------------------------------------

FORMAT_TAG = "ma-equation/1"


def equation_to_json(eq: MAEquation) -> str:
    return json.dumps(
        {"format": FORMAT_TAG, "n": eq.n, "coords": [str(c) for c in eq.coords]},
        indent=2,
    )


def equation_from_json(text: str) -> MAEquation:
    data = json.loads(text)
    if data.get("format") != FORMAT_TAG:
        raise ValueError(f"unsupported equation format: {data.get('format')!r}")
    return MAEquation.from_coords(int(data["n"]), [Fraction(c) for c in data["coords"]])

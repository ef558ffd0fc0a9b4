"""The sp(2n) action on equations and symmetry-algebra computation.

Generators act on the chart as vector fields: X translations, L linear
flows U' = e_ij U + U e_ji, P quadratic flows U' = U S_ij U.  On the
minor span the induced action is linear only after subtracting the
projective cocycle phi (0 for X, -delta_ij for L_ij, -2 u_ij for P_ij):
phi is the derivative of the Plucker normalizing factor det(A + BU), and
g(m) + phi_g * m always decomposes in the span.  An equation F is
stabilized projectively iff A_v c = mu c for its coordinate vector c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NoSamplePoint
from .grassmann import MAEquation, MinorBasis, chart_vars, decompose, minor_basis, ucoord, uvar
from .linalg import RatMatrix, rank_kernel, row_space_basis, solve_linear
from .poly import Polynomial


@dataclass(frozen=True)
class SpGenerator:
    """One infinitesimal generator with its chart derivation and cocycle."""

    label: str
    kind: str  # "X", "L" or "P"
    i: int
    j: int
    derivation: Tuple[Tuple[str, Polynomial], ...]
    phi: Polynomial

    def apply(self, poly: Polynomial) -> Polynomial:
        """Raw derivation: sum over chart variables of D(u_ab) * d poly/d u_ab."""
        out = Polynomial.zero()
        for var, image in self.derivation:
            part = poly.partial(var)
            if not part.is_zero():
                out = out + image * part
        return out

    def corrected(self, poly: Polynomial) -> Polynomial:
        """Derivation plus the cocycle term; lands in the minor span."""
        return self.apply(poly) + self.phi * poly


def _derivation_from_flow(n: int, flow) -> Tuple[Tuple[str, Polynomial], ...]:
    out = []
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            img = flow(a, b)
            if not img.is_zero():
                out.append((ucoord(a, b), img))
    return tuple(out)


@lru_cache(maxsize=None)
def sp_generators(n: int) -> Tuple[SpGenerator, ...]:
    """The n(2n+1) generators: X_ij (i<=j), L_ij (all i,j), P_ij (i<=j)."""
    gens: List[SpGenerator] = []
    zero = Polynomial.zero()
    one = Polynomial.one()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            deriv = ((ucoord(i, j), one),)
            gens.append(SpGenerator(f"X{i}{j}", "X", i, j, deriv, zero))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            def flow(a, b, i=i, j=j):
                # U' = e_ij U + U e_ji
                img = Polynomial.zero()
                if a == i:
                    img = img + uvar(j, b)
                if b == i:
                    img = img + uvar(j, a)
                return img
            phi = Polynomial.constant(-1) if i == j else zero
            gens.append(SpGenerator(f"L{i}{j}", "L", i, j,
                                    _derivation_from_flow(n, flow), phi))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            def flow(a, b, i=i, j=j):
                # U' = U S_ij U with S_ij = e_ij + e_ji (2 e_ii on the diagonal)
                img = uvar(a, i) * uvar(j, b) + uvar(a, j) * uvar(i, b)
                return img
            gens.append(SpGenerator(f"P{i}{j}", "P", i, j,
                                    _derivation_from_flow(n, flow),
                                    -2 * uvar(i, j)))
    assert len(gens) == n * (2 * n + 1)
    return tuple(gens)


def generator_action_matrix(g: SpGenerator, basis: MinorBasis) -> RatMatrix:
    """N x N matrix of the generator on canonical coordinates.

    Column k holds the decomposition of the corrected action on basis
    polynomial k; the correction is what makes the decomposition succeed
    for the quadratic generators.
    """
    cols = [decompose(g.corrected(p), basis) for p in basis.basis_polys]
    return RatMatrix([[cols[k][i] for k in range(basis.dimension)]
                      for i in range(basis.dimension)])


@lru_cache(maxsize=None)
def action_matrices(n: int) -> Tuple[RatMatrix, ...]:
    basis = minor_basis(n)
    return tuple(generator_action_matrix(g, basis) for g in sp_generators(n))


def derivation_bracket(n: int, v: "SpGenerator", w: "SpGenerator"):
    """Vector-field bracket on the chart: images [v,w](u_ab) for all a <= b."""
    v_img = dict(v.derivation)
    w_img = dict(w.derivation)

    def act(images, poly):
        out = Polynomial.zero()
        for var, image in images.items():
            part = poly.partial(var)
            if not part.is_zero():
                out = out + image * part
        return out

    out = {}
    for var in chart_vars(n):
        a = act(v_img, w_img.get(var, Polynomial.zero()))
        b = act(w_img, v_img.get(var, Polynomial.zero()))
        img = a - b
        if not img.is_zero():
            out[var] = img
    return out


def _flatten_derivation(images: Dict[str, Polynomial]):
    out = {}
    for var, poly in images.items():
        for mono, c in poly.terms.items():
            out[(var, mono)] = c
    return out


@lru_cache(maxsize=None)
def _derivation_frame(n: int):
    """Pivot data to decompose a derivation over the sp generators."""
    from .linalg import invert, rref

    gens = sp_generators(n)
    vecs = [_flatten_derivation(dict(g.derivation)) for g in gens]
    keys = sorted({k for v in vecs for k in v})
    index = {k: i for i, k in enumerate(keys)}
    rows = [[v.get(k, Fraction(0)) for k in keys] for v in vecs]
    pivots, _ = rref(rows)
    assert len(pivots) == len(gens), "sp generator derivations are dependent"
    pivot_keys = [keys[c] for c in pivots]
    square = RatMatrix([[rows[i][c] for i in range(len(gens))] for c in pivots])
    return gens, vecs, index, pivot_keys, invert(square)


def _decompose_derivation(n: int, images: Dict[str, Polynomial]) -> List[Fraction]:
    gens, vecs, index, pivot_keys, square_inv = _derivation_frame(n)
    flat = _flatten_derivation(images)
    target = [flat.get(k, Fraction(0)) for k in pivot_keys]
    coords = square_inv.mat_vec(target)
    # exact reconstruction check
    recon: Dict = {}
    for coeff, vec in zip(coords, vecs):
        if coeff:
            for k, c in vec.items():
                recon[k] = recon.get(k, Fraction(0)) + coeff * c
    recon = {k: c for k, c in recon.items() if c}
    assert recon == flat, "derivation decomposition failed to reconstruct"
    return coords


@lru_cache(maxsize=None)
def sp_structure_constants(n: int):
    """Sparse bracket table: table[p][q] = tuple of (index, coefficient)."""
    gens = sp_generators(n)
    dim = len(gens)
    table = []
    for p in range(dim):
        row = []
        for q in range(dim):
            if p == q:
                row.append(())
                continue
            bracket = derivation_bracket(n, gens[p], gens[q])
            coords = _decompose_derivation(n, bracket)
            row.append(tuple((r, c) for r, c in enumerate(coords) if c))
        table.append(tuple(row))
    return tuple(table)


class LieSubalgebra:
    """A subalgebra of sp(2n) given by coefficient vectors over the generators.

    Structure constants over the stored basis are computed on first use.
    """

    def __init__(self, n: int, basis, structure_constants=None, eigenvalues=()):
        self.n = n
        self.basis = tuple(tuple(Fraction(x) for x in v) for v in basis)
        self.eigenvalues = tuple(eigenvalues)
        self._structure = structure_constants

    @property
    def structure_constants(self):
        if self._structure is None:
            self._structure = _subalgebra_structure(self)
        return self._structure

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.n * (2 * self.n + 1)

    def bracket_sp(self, v: Sequence[Fraction], w: Sequence[Fraction]) -> List[Fraction]:
        """Bracket of two coefficient vectors inside sp(2n)."""
        table = sp_structure_constants(self.n)
        g = self.ambient_dim
        out = [Fraction(0)] * g
        for p in range(g):
            if not v[p]:
                continue
            for q in range(g):
                if not w[q]:
                    continue
                c = v[p] * w[q]
                for r, t in table[p][q]:
                    out[r] += c * t
        return out

    def describe(self) -> Dict[str, object]:
        return {
            "dimension": self.dim,
            "generators": [format_sp_vector(self.n, v) for v in self.basis],
            "center-dimension": len(center(self)),
            "derived-dimension": len(derived_subalgebra(self)),
            "reductive": is_reductive(self),
        }


def format_sp_vector(n: int, vector: Sequence[Fraction]) -> str:
    """Human-readable combination of X/L/P generators, e.g. 'L12 - L43'."""
    labels = [g.label for g in sp_generators(n)]
    pieces = []
    for c, label in zip(vector, labels):
        if not c:
            continue
        if c == 1:
            body = label
        elif c == -1:
            body = label
        else:
            body = f"{abs(c)} {label}"
        pieces.append(("-" if c < 0 else "+", body))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def invariance_eigenvalue(eq: MAEquation, vector: Sequence[Fraction]) -> Optional[Fraction]:
    """mu with A_v c = mu c, or None when v does not stabilize the equation."""
    mats = action_matrices(eq.n)
    c = list(eq.coords)
    image = [Fraction(0)] * len(c)
    for coeff, m in zip(vector, mats):
        if coeff:
            for i, val in enumerate(m.mat_vec(c)):
                image[i] += coeff * val
    mu = None
    for i, ci in enumerate(c):
        if ci:
            cand = image[i] / ci
            if mu is None:
                mu = cand
            elif cand != mu:
                return None
        elif image[i]:
            return None
    return mu if mu is not None else Fraction(0)


def symmetry_algebra(eq: MAEquation) -> LieSubalgebra:
    """Projective stabilizer of the equation inside sp(2n).

    Solves {(v, mu) : sum_g v_g A_g c = mu c} exactly and returns the
    projection to v with structure constants over the returned basis.
    """
    n = eq.n
    mats = action_matrices(n)
    c = list(eq.coords)
    g = len(mats)
    rows = [[Fraction(0)] * (g + 1) for _ in range(len(c))]
    for k, m in enumerate(mats):
        col = m.mat_vec(c)
        for i in range(len(c)):
            rows[i][k] = col[i]
    for i in range(len(c)):
        rows[i][g] = -c[i]
    _, kernel = rank_kernel(RatMatrix(rows))
    basis = [tuple(vec[:g]) for vec in kernel]
    eigen = tuple(vec[g] for vec in kernel)
    return LieSubalgebra(n, basis, eigenvalues=eigen)


def _subalgebra_structure(alg: LieSubalgebra):
    dim = alg.dim
    if dim == 0:
        return ()
    rows = [list(v) for v in alg.basis]
    mt = RatMatrix(rows).transpose()
    table = []
    for a in range(dim):
        row = []
        for b in range(dim):
            br = alg.bracket_sp(alg.basis[a], alg.basis[b])
            sol = solve_linear(mt, br)
            assert sol is not None, "stabilizer is not closed under bracket"
            row.append(tuple(sol[0]))
        table.append(tuple(row))
    return tuple(table)


def adjoint_matrix(alg: LieSubalgebra, index: int) -> RatMatrix:
    dim = alg.dim
    return RatMatrix([[alg.structure_constants[index][j][k] for j in range(dim)]
                      for k in range(dim)])


def killing_form(alg: LieSubalgebra) -> RatMatrix:
    dim = alg.dim
    ads = [adjoint_matrix(alg, i) for i in range(dim)]
    return RatMatrix([[_trace(ads[i].mat_mul(ads[j])) for j in range(dim)]
                      for i in range(dim)])


def _trace(m: RatMatrix) -> Fraction:
    return sum((m.entries[i][i] for i in range(m.rows)), Fraction(0))


def derived_subalgebra(alg: LieSubalgebra) -> List[List[Fraction]]:
    """Canonical basis of [g, g] in the subalgebra's own coordinates."""
    rows = []
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            rows.append(list(alg.structure_constants[a][b]))
    rows = [r for r in rows if any(r)]
    return row_space_basis(rows) if rows else []


def center(alg: LieSubalgebra) -> List[List[Fraction]]:
    """Canonical basis of the center in the subalgebra's own coordinates."""
    dim = alg.dim
    if dim == 0:
        return []
    rows = []
    for j in range(dim):
        for k in range(dim):
            rows.append([alg.structure_constants[i][j][k] for i in range(dim)])
    _, kernel = rank_kernel(RatMatrix(rows))
    return kernel


def radical(alg: LieSubalgebra) -> List[List[Fraction]]:
    """Solvable radical = Killing-orthogonal complement of [g, g]."""
    derived = derived_subalgebra(alg)
    if not derived:
        return [list(v) for v in RatMatrix.identity(alg.dim).entries] if alg.dim else []
    k = killing_form(alg)
    rows = [k.mat_vec(d) for d in derived]
    _, kernel = rank_kernel(RatMatrix(rows))
    return kernel


def is_reductive(alg: LieSubalgebra) -> bool:
    """True iff the solvable radical equals the center."""
    return len(radical(alg)) == len(center(alg))


# -- non-degeneracy --------------------------------------------------------


def sample_zero_point(eq: MAEquation, rng, budget: int = 200) -> Dict[str, Fraction]:
    """A rational chart point with F = 0 exactly.

    Assigns random rationals to all variables but one and solves for the
    remaining variable; minor-span elements are at most quadratic in any
    single variable, and a rational root is accepted only when exact.
    """
    names = chart_vars(eq.n)
    active = sorted(eq.poly.variables()) or [names[0]]
    for attempt in range(budget):
        target = active[attempt % len(active)]
        assignment = {v: Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                      for v in names if v != target}
        coeffs = [Fraction(0), Fraction(0), Fraction(0)]
        for mono, c in eq.poly.terms.items():
            power = 0
            val = c
            for v, e in mono:
                if v == target:
                    power = e
                else:
                    val *= assignment[v] ** e
            coeffs[power] += val
        c0, c1, c2 = coeffs
        if c2:
            disc = c1 * c1 - 4 * c2 * c0
            root = _fraction_sqrt(disc)
            if root is None:
                continue
            assignment[target] = (-c1 + root) / (2 * c2)
        elif c1:
            assignment[target] = -c0 / c1
        else:
            if c0:
                continue
            assignment[target] = Fraction(rng.randint(-9, 9))
        return assignment
    raise NoSamplePoint(f"no rational point found on {{F = 0}} within {budget} attempts")


def _fraction_sqrt(q: Fraction) -> Optional[Fraction]:
    from math import isqrt

    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def symbol_matrix(eq: MAEquation, point: Dict[str, Fraction]) -> RatMatrix:
    """Linearization symbol Q with Q_aa = dF/du_aa, Q_ab = dF/du_ab / 2."""
    n = eq.n
    q = [[Fraction(0)] * n for _ in range(n)]
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            val = eq.poly.partial(ucoord(a, b)).evaluate(point)
            if a == b:
                q[a - 1][a - 1] = val
            else:
                q[a - 1][b - 1] = val / 2
                q[b - 1][a - 1] = val / 2
    return RatMatrix(q)


def nondegenerate(eq: MAEquation, samples: int = 6, seed: int = 0, rng=None) -> bool:
    """Whether the symbol is an irreducible quadratic form (rank >= 3) on {F=0}.

    Rank <= 2 quadratic forms factor over C, hence are reducible; a single
    exact sample of rank >= 3 certifies non-degeneracy.
    """
    from random import Random

    if rng is None:
        rng = Random(seed)
    for _ in range(samples):
        point = sample_zero_point(eq, rng)
        rank, _ = rank_kernel(symbol_matrix(eq, point))
        if rank >= 3:
            return True
    return False

"""Finite-dimensional unital associative algebras over Q by structure constants.

An Algebra is a dense tensor c[i][j][k] with e_i e_j = sum_k c[i][j][k] e_k
plus a distinguished unit vector.  Construction always validates
associativity on all basis triples and the two-sided unit law, so any
Algebra in circulation is genuinely an associative unital algebra.

Elements are plain coordinate tuples (linalg.Vec) relative to the basis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    ImproperIdeal,
    NotAnIdeal,
    NotAssociative,
    SkewexError,
    UnitFails,
)
from .linalg import (
    Mat,
    Poly,
    Subspace,
    Vec,
    ZERO,
    ONE,
    is_zero_vec,
    kernel,
    rat,
    span,
    unit_vec,
    vec,
    vec_add,
    vec_scale,
    zero_vec,
)


class Algebra:
    """Validated structure-constant algebra; immutable by convention."""

    def __init__(self, dim: int, sc, unit: Vec, labels: Optional[Sequence[str]] = None):
        self.dim = dim
        # sc[i][j] is the coordinate vector of e_i * e_j.
        self.sc: tuple[tuple[Vec, ...], ...] = tuple(
            tuple(vec(sc[i][j]) for j in range(dim)) for i in range(dim)
        )
        self.unit: Vec = vec(unit)
        self.labels: tuple[str, ...] = tuple(labels) if labels else tuple(
            f"e{i}" for i in range(dim)
        )
        if len(self.labels) != dim:
            raise DimensionMismatch("label count differs from dimension")

    def basis_element(self, i: int) -> Vec:
        return unit_vec(i, self.dim)

    def element(self, values) -> Vec:
        v = vec(values)
        if len(v) != self.dim:
            raise DimensionMismatch(f"element length {len(v)} != dim {self.dim}")
        return v

    def scalar(self, c) -> Vec:
        return vec_scale(rat(c), self.unit)

    def multiply(self, x: Vec, y: Vec) -> Vec:
        """Bilinear product via the structure constants."""
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("element length differs from algebra dimension")
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.sc[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, s in enumerate(row[j]):
                    if s:
                        out[k] += c * s
        return tuple(out)

    def power(self, x: Vec, m: int) -> Vec:
        acc = self.unit
        for _ in range(m):
            acc = self.multiply(acc, x)
        return acc

    def left_regular(self, x: Vec) -> Mat:
        """Matrix of left multiplication by x (a faithful representation)."""
        cols = [self.multiply(x, self.basis_element(j)) for j in range(self.dim)]
        return Mat.from_columns(cols)

    def right_regular(self, x: Vec) -> Mat:
        cols = [self.multiply(self.basis_element(j), x) for j in range(self.dim)]
        return Mat.from_columns(cols)

    def trace_of(self, x: Vec) -> Fraction:
        return self.left_regular(x).trace()

    def commutator(self, x: Vec, y: Vec) -> Vec:
        return tuple(a - b for a, b in zip(self.multiply(x, y), self.multiply(y, x)))

    def is_commutative(self) -> bool:
        return all(
            self.sc[i][j] == self.sc[j][i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, labels={list(self.labels)})"


def make_algebra(dim: int, sc, unit, labels: Optional[Sequence[str]] = None) -> Algebra:
    """Build and validate an algebra; raises NotAssociative / UnitFails."""
    algebra = Algebra(dim, sc, unit, labels)
    for i in range(dim):
        e = algebra.basis_element(i)
        if algebra.multiply(algebra.unit, e) != e or algebra.multiply(e, algebra.unit) != e:
            raise UnitFails(i)
    for i in range(dim):
        for j in range(dim):
            left = algebra.sc[i][j]
            for k in range(dim):
                lhs = algebra.multiply(left, algebra.basis_element(k))
                rhs = algebra.multiply(algebra.basis_element(i), algebra.sc[j][k])
                if lhs != rhs:
                    raise NotAssociative(i, j, k)
    return algebra


def ideal_closure(algebra: Algebra, gens: Sequence[Vec], side: str = "two") -> Subspace:
    """Smallest subspace containing gens closed under the requested multiplications.

    side is "left", "right", or "two"; closure iterates basis products until
    the span stabilizes.
    """
    if side not in ("left", "right", "two"):
        raise ValueError(f"unknown side {side!r}")
    current = span(list(gens), algebra.dim)
    while True:
        new_vectors = list(current.basis)
        for v in current.basis:
            for b in range(algebra.dim):
                eb = algebra.basis_element(b)
                if side in ("left", "two"):
                    new_vectors.append(algebra.multiply(eb, v))
                if side in ("right", "two"):
                    new_vectors.append(algebra.multiply(v, eb))
        grown = span(new_vectors, algebra.dim)
        if grown.dim == current.dim:
            return grown
        current = grown


def two_sided_ideal(algebra: Algebra, gens: Sequence[Vec]) -> Subspace:
    return ideal_closure(algebra, gens, "two")


def subalgebra_generated(algebra: Algebra, gens: Sequence[Vec]) -> Subspace:
    """Smallest unital multiplicatively closed subspace containing gens."""
    current = span([algebra.unit] + list(gens), algebra.dim)
    while True:
        new_vectors = list(current.basis)
        for v in current.basis:
            for w in current.basis:
                new_vectors.append(algebra.multiply(v, w))
        grown = span(new_vectors, algebra.dim)
        if grown.dim == current.dim:
            return grown
        current = grown


def is_ideal(algebra: Algebra, subspace: Subspace) -> bool:
    for v in subspace.basis:
        for b in range(algebra.dim):
            eb = algebra.basis_element(b)
            if not subspace.contains(algebra.multiply(eb, v)):
                return False
            if not subspace.contains(algebra.multiply(v, eb)):
                return False
    return True


def quotient(algebra: Algebra, ideal: Subspace) -> tuple[Algebra, Mat]:
    """Quotient algebra on the non-pivot coordinates, with the projection matrix.

    The ideal must be a verified proper two-sided ideal.  The projection is a
    surjective algebra homomorphism whose kernel is the ideal.
    """
    if ideal.ambient_dim != algebra.dim:
        raise DimensionMismatch("ideal lives in the wrong space")
    if not is_ideal(algebra, ideal):
        raise NotAnIdeal("subspace is not closed under two-sided multiplication")
    if ideal.dim == algebra.dim:
        raise ImproperIdeal("cannot divide by the whole algebra")
    pivots = set(ideal.pivots())
    coords = [j for j in range(algebra.dim) if j not in pivots]
    q = len(coords)

    def project(x: Vec) -> Vec:
        residual = ideal.reduce(x)
        return tuple(residual[j] for j in coords)

    sc = [
        [project(algebra.multiply(algebra.basis_element(coords[i]),
                                  algebra.basis_element(coords[j])))
         for j in range(q)]
        for i in range(q)
    ]
    unit = project(algebra.unit)
    labels = [algebra.labels[j] for j in coords]
    quot = make_algebra(q, sc, unit, labels)
    proj = Mat.from_columns([project(algebra.basis_element(c)) for c in range(algebra.dim)])
    return quot, proj


def quotient_section(algebra: Algebra, ideal: Subspace) -> Mat:
    """Coordinate section of the quotient projection: columns are the surviving
    basis vectors of the ambient algebra, so projection * section = identity."""
    pivots = set(ideal.pivots())
    coords = [j for j in range(algebra.dim) if j not in pivots]
    return Mat.from_columns([algebra.basis_element(j) for j in coords])


def radical(algebra: Algebra) -> Subspace:
    """Kernel of the trace form (x, y) -> trace(mu(x y)); the maximal nilpotent ideal.

    Verified nilpotent as an ideal before returning.
    """
    traces = [algebra.trace_of(algebra.basis_element(k)) for k in range(algebra.dim)]
    gram = Mat.from_rows([
        [
            sum((algebra.sc[i][j][k] * traces[k] for k in range(algebra.dim)
                 if algebra.sc[i][j][k]), ZERO)
            for i in range(algebra.dim)
        ]
        for j in range(algebra.dim)
    ])
    rad = kernel(gram)
    current = rad
    for _ in range(algebra.dim + 1):
        if current.dim == 0:
            break
        products = [algebra.multiply(x, y) for x in current.basis for y in rad.basis]
        nxt = span(products, algebra.dim)
        if nxt == current:
            raise SkewexError("radical candidate is not nilpotent")
        current = nxt
    if current.dim != 0:
        raise SkewexError("radical candidate is not nilpotent")
    return rad


def center(algebra: Algebra) -> Subspace:
    """Elements commuting with everything: mu(x) = rho(x)."""
    n = algebra.dim
    rows = []
    for r in range(n):
        for c in range(n):
            # coefficient of x_k in (mu(x) - rho(x))[r][c]
            rows.append([algebra.sc[k][c][r] - algebra.sc[c][k][r] for k in range(n)])
    return kernel(Mat.from_rows(rows))


def subalgebra_as_algebra(algebra: Algebra, subspace: Subspace) -> tuple[Algebra, Mat]:
    """Present a unital multiplicatively closed subspace as an Algebra.

    Returns the small algebra plus the inclusion matrix whose columns are the
    subspace basis in ambient coordinates.
    """
    basis = subspace.basis
    pivots = subspace.pivots()

    def coords(v: Vec) -> Vec:
        if not subspace.contains(v):
            raise SkewexError("subspace is not multiplicatively closed")
        return tuple(v[p] for p in pivots)

    d = len(basis)
    sc = [[coords(algebra.multiply(basis[i], basis[j])) for j in range(d)] for i in range(d)]
    unit = coords(algebra.unit)
    small = make_algebra(d, sc, unit)
    return small, Mat.from_columns(list(basis))


SIMPLE = "simple"
NOT_SIMPLE = "not_simple"
INCONCLUSIVE = "inconclusive"


def is_simple(algebra: Algebra) -> tuple[str, Optional[Subspace]]:
    """Decide simplicity via the radical and central idempotents.

    Returns (verdict, witness_ideal): NOT_SIMPLE carries a proper nonzero
    two-sided ideal; INCONCLUSIVE means central idempotent enumeration could
    not certify completeness.
    """
    from .idempotents import enumerate_idempotents

    rad = radical(algebra)
    if rad.dim > 0:
        return NOT_SIMPLE, rad
    cent = center(algebra)
    small, inclusion = subalgebra_as_algebra(algebra, cent)
    idems = enumerate_idempotents(small)
    for e_small in idems.items:
        e = inclusion.apply(e_small)
        if is_zero_vec(e) or e == algebra.unit:
            continue
        return NOT_SIMPLE, two_sided_ideal(algebra, [e])
    if not idems.complete:
        return INCONCLUSIVE, None
    return SIMPLE, None


# ---------------------------------------------------------------------------
# Builders for the test corpus.  Each documents its basis order.
# ---------------------------------------------------------------------------

def matrix_algebra(n: int) -> Algebra:
    """Full matrix algebra with matrix-unit basis E_ij, row-major order."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    dim = n * n

    def idx(i: int, j: int) -> int:
        return i * n + j

    sc = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        target = [ZERO] * dim
                        target[idx(i, l)] = ONE
                        sc[idx(i, j)][idx(k, l)] = tuple(target)
    unit = [ZERO] * dim
    for i in range(n):
        unit[idx(i, i)] = ONE
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return make_algebra(dim, sc, unit, labels)


def poly_quotient(f: Poly) -> Algebra:
    """Q[t]/(f) with basis 1, t, ..., t^(d-1); f must be monic of degree >= 1."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("modulus must be monic of degree >= 1")
    d = f.degree
    # t^m mod f for m up to 2d-2
    reductions: list[Vec] = [unit_vec(m, d) for m in range(d)]
    for m in range(d, 2 * d - 1):
        prev = reductions[m - 1]
        shifted = [ZERO] + list(prev[:-1])
        top = prev[-1]
        if top:
            shifted = [s - top * f.coeffs[i] for i, s in enumerate(shifted)]
        reductions.append(tuple(shifted))
    sc = [[reductions[i + j] for j in range(d)] for i in range(d)]
    unit = unit_vec(0, d)
    labels = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, d)]
    return make_algebra(d, sc, unit, labels)


def cyclic_group_algebra(m: int) -> Algebra:
    """Group algebra of the cyclic group of order m, basis g^0 .. g^(m-1)."""
    if m < 1:
        raise ValueError("group order must be >= 1")
    sc = [[unit_vec((i + j) % m, m) for j in range(m)] for i in range(m)]
    labels = [f"g^{i}" if i > 1 else ("g" if i == 1 else "1") for i in range(m)]
    return make_algebra(m, sc, unit_vec(0, m), labels)


def direct_product(a: Algebra, b: Algebra) -> Algebra:
    """Product algebra on the concatenated bases; unit is (1, 1)."""
    dim = a.dim + b.dim

    def embed_a(v: Vec) -> Vec:
        return tuple(v) + zero_vec(b.dim)

    def embed_b(v: Vec) -> Vec:
        return zero_vec(a.dim) + tuple(v)

    sc = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            sc[i][j] = embed_a(a.sc[i][j])
    for i in range(b.dim):
        for j in range(b.dim):
            sc[a.dim + i][a.dim + j] = embed_b(b.sc[i][j])
    unit = vec_add(embed_a(a.unit), embed_b(b.unit))
    labels = [f"({lab},0)" for lab in a.labels] + [f"(0,{lab})" for lab in b.labels]
    return make_algebra(dim, sc, unit, labels)


def upper_triangular(n: int) -> Algebra:
    """Upper-triangular matrices, basis E_ij with i <= j in row-major order."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    index = {pos: k for k, pos in enumerate(positions)}
    dim = len(positions)
    sc = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
    for (i, j), a_idx in index.items():
        for (k, l), b_idx in index.items():
            if j == k:
                target = [ZERO] * dim
                target[index[(i, l)]] = ONE
                sc[a_idx][b_idx] = tuple(target)
    unit = [ZERO] * dim
    for i in range(n):
        unit[index[(i, i)]] = ONE
    labels = [f"E{i + 1}{j + 1}" for (i, j) in positions]
    return make_algebra(dim, sc, unit, labels)


def change_of_basis(algebra: Algebra, t: Mat) -> Algebra:
    """Same algebra expressed in the basis given by the columns of t."""
    from .linalg import inverse

    t_inv = inverse(t)
    if t_inv is None:
        raise ValueError("change of basis matrix must be invertible")
    n = algebra.dim
    new_basis = [t.column(j) for j in range(n)]
    sc = [
        [t_inv.apply(algebra.multiply(new_basis[i], new_basis[j])) for j in range(n)]
        for i in range(n)
    ]
    unit = t_inv.apply(algebra.unit)
    return make_algebra(n, sc, unit, [f"b{i}" for i in range(n)])

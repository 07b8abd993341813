"""Exact linear algebra over the rationals.

Everything here works with `fractions.Fraction`, so all results are exact:
rank, kernel and minimal-polynomial computations never see rounding.  Vectors
are plain tuples of Fractions; matrices and subspaces are small immutable
wrappers.  Subspaces are kept in reduced row-echelon form, which makes
equality a structural comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch

Rat = Fraction
Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def vec(values: Iterable) -> Vec:
    return tuple(rat(v) for v in values)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(i: int, n: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


@dataclass(frozen=True)
class Mat:
    """Immutable rational matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Mat":
        grid = tuple(tuple(rat(x) for x in r) for r in rows)
        nrows = len(grid)
        ncols = len(grid[0]) if grid else 0
        if any(len(r) != ncols for r in grid):
            raise DimensionMismatch("ragged rows")
        return Mat(nrows, ncols, grid)

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, tuple(unit_vec(i, n) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Mat":
        return Mat(rows, cols, tuple(zero_vec(cols) for _ in range(rows)))

    @staticmethod
    def from_columns(cols: Sequence[Vec]) -> "Mat":
        if not cols:
            return Mat(0, 0, ())
        n = len(cols[0])
        return Mat(n, len(cols), tuple(tuple(c[i] for c in cols) for i in range(n)))

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Vec) -> Vec:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"expected length {self.cols}, got {len(v)}")
        return tuple(sum((r[j] * v[j] for j in range(self.cols) if v[j]), ZERO) for r in self.entries)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return Mat(self.rows, self.cols,
                   tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(vec_scale(-ONE, r) for r in self.entries))

    def scale(self, c) -> "Mat":
        c = rat(c)
        return Mat(self.rows, self.cols, tuple(vec_scale(c, r) for r in self.entries))

    def __mul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        bt = list(zip(*other.entries)) if other.entries else []
        grid = tuple(
            tuple(sum((a[k] * col[k] for k in range(self.cols) if a[k]), ZERO) for col in bt)
            for a in self.entries
        )
        return Mat(self.rows, other.cols, grid)

    def power(self, k: int) -> "Mat":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        result = Mat.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else ())

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.entries)


def _rref_rows(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        lead = rows[r]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], lead)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: Mat) -> tuple[Mat, list[int], int]:
    """Unique reduced row-echelon form along with pivot columns and rank."""
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref_rows(rows)
    reduced = Mat(m.rows, m.cols, tuple(tuple(r) for r in rows))
    return reduced, pivots, len(pivots)


def solve(m: Mat, b: Vec) -> Optional[Vec]:
    """One solution of m x = b, free variables set to zero; None if inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatch("right-hand side length differs from row count")
    rows = [list(r) + [b[i]] for i, r in enumerate(m.entries)]
    rows, pivots = _rref_rows(rows)
    # A pivot in the augmented column means the system is inconsistent.
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return tuple(x)


def inverse(m: Mat) -> Optional[Mat]:
    if m.rows != m.cols:
        return None
    n = m.rows
    rows = [list(r) + list(unit_vec(i, n)) for i, r in enumerate(m.entries)]
    rows, pivots = _rref_rows(rows)
    if pivots[:n] != list(range(n)):
        return None
    return Mat(n, n, tuple(tuple(r[n:]) for r in rows[:n]))


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n with a reduced row-echelon basis.

    The basis is canonical, so two Subspaces are equal exactly when their
    stored tuples are equal.
    """

    ambient_dim: int
    basis: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        out = []
        for row in self.basis:
            out.append(next(j for j, x in enumerate(row) if x))
        return out

    def contains(self, v: Vec) -> bool:
        """Membership by residual elimination against the echelon basis."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        residual = list(v)
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            f = residual[p]
            if f:
                residual = [x - f * y for x, y in zip(residual, row)]
        return all(x == 0 for x in residual)

    def reduce(self, v: Vec) -> Vec:
        """Residual of v after eliminating against the basis."""
        residual = list(v)
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            f = residual[p]
            if f:
                residual = [x - f * y for x, y in zip(residual, row)]
        return tuple(residual)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return span(list(self.basis) + list(other.basis), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus block elimination."""
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        n = self.ambient_dim
        block = [list(v) + list(v) for v in self.basis]
        block += [list(v) + [ZERO] * n for v in other.basis]
        rows, _ = _rref_rows(block)
        inter = [tuple(r[n:]) for r in rows if all(x == 0 for x in r[:n]) and any(r[n:])]
        return span(inter, n)


def span(vectors: Sequence[Vec], ambient_dim: int) -> Subspace:
    """Canonical subspace spanned by the given vectors (empty list -> zero)."""
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
    rows = [list(v) for v in vectors if not is_zero_vec(v)]
    rows, pivots = _rref_rows(rows)
    basis = tuple(tuple(r) for r in rows[: len(pivots)])
    return Subspace(ambient_dim, basis)


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, tuple(unit_vec(i, n) for i in range(n)))


def kernel(m: Mat) -> Subspace:
    """Null space {x : m x = 0} in canonical form."""
    reduced, pivots, rank = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced.entries[r][f]
        basis.append(tuple(v))
    return span(basis, m.cols)


def column_space(m: Mat) -> Subspace:
    return span(m.columns(), m.rows)


@dataclass(frozen=True)
class Poly:
    """Univariate rational polynomial, coefficients from the constant term up.

    The zero polynomial stores an empty tuple; otherwise the leading
    coefficient is nonzero.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(coeffs: Iterable) -> "Poly":
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(tuple(cs))

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((ONE,))

    @staticmethod
    def x() -> "Poly":
        return Poly((ZERO, ONE))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.of([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.of([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly.of(out)

    def scale(self, c) -> "Poly":
        c = rat(c)
        return Poly.of([c * a for a in self.coeffs])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(ONE / self.coeffs[-1])

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dcs = divisor.coeffs
        dd = divisor.degree
        lead = dcs[-1]
        quot = [ZERO] * max(0, len(rem) - dd)
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            f = rem[-1] / lead
            quot[k] = f
            for i in range(dd + 1):
                rem[k + i] -= f * dcs[i]
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly.of(quot), Poly.of(rem)

    def mod(self, divisor: "Poly") -> "Poly":
        return self.divmod(divisor)[1]

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.mod(b)
        return a.monic()

    def lcm(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        return (self * other).divmod(self.gcd(other))[0].monic()

    def derivative(self) -> "Poly":
        return Poly.of([i * c for i, c in enumerate(self.coeffs)][1:])

    def squarefree_part(self) -> "Poly":
        if self.degree < 1:
            return self.monic()
        return self.divmod(self.gcd(self.derivative()))[0].monic()

    def eval(self, x) -> Fraction:
        x = rat(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: Mat) -> Mat:
        """p(M) by Horner's rule."""
        acc = Mat.zeros(m.rows, m.cols)
        ident = Mat.identity(m.rows)
        for c in reversed(self.coeffs):
            acc = acc * m + ident.scale(c)
        return acc

    def rational_roots(self) -> list[Fraction]:
        """All rational roots, via the rational-root bound on a cleared form."""
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        p = self
        roots = []
        if p.coeff(0) == 0:
            roots.append(ZERO)
            while p.coeff(0) == 0 and p.degree >= 1:
                p = Poly.of(p.coeffs[1:])
        if p.degree < 1:
            return sorted(set(roots))
        denom_lcm = 1
        for c in p.coeffs:
            denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in p.coeffs]
        lead, const = ints[-1], ints[0]
        for num in _divisors(abs(const)):
            for den in _divisors(abs(lead)):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if p.eval(cand) == 0:
                        roots.append(cand)
        return sorted(set(roots))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return " + ".join(parts)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return []
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def minimal_polynomial(m: Mat) -> Poly:
    """Monic minimal polynomial, as the lcm of Krylov relations per basis vector.

    For each basis vector e_i the iterates e_i, m e_i, m^2 e_i, ... are fed
    into an echelon basis until the first linear dependence, whose
    coefficients give the local relation polynomial.  The lcm over all i is
    returned, after re-checking that it annihilates m.
    """
    if m.rows != m.cols:
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    n = m.rows
    result = Poly.one()
    for i in range(n):
        v = unit_vec(i, n)
        krylov: list[Vec] = []
        current = v
        while True:
            dep = solve(Mat.from_columns(krylov), current) if krylov else None
            if krylov and dep is not None:
                local = Poly.of([-c for c in dep] + [ONE])
                break
            krylov.append(current)
            current = m.apply(current)
        result = result.lcm(local)
    if not result.eval_matrix(m).is_zero():
        raise AssertionError("minimal polynomial candidate does not annihilate the matrix")
    return result

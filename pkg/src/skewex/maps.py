"""Derivations, algebra endomorphisms, and difference maps I - phi.

Role wrappers (Derivation, AlgebraEndo, EDerivation) certify their defining
identity on all basis pairs at construction time, so downstream code can rely
on the algebraic meaning of the matrix it is handed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .algebra import Algebra, is_ideal, quotient
from .errors import (
    NotAutomorphism,
    NotDerivation,
    NotEndomorphism,
    NotInKernelChain,
    NotInvertible,
    NotLocallyNilpotent,
    SkewexError,
)
from .linalg import (
    Mat,
    Poly,
    Subspace,
    Vec,
    ZERO,
    inverse,
    kernel,
    minimal_polynomial,
    rat,
    solve,
    vec_add,
    vec_sub,
)


@dataclass(frozen=True)
class LinearEndo:
    """A linear map on an algebra's coordinate space."""

    algebra: Algebra
    matrix: Mat

    def __call__(self, v: Vec) -> Vec:
        return self.matrix.apply(v)


def is_derivation(algebra: Algebra, m: Mat) -> tuple[bool, Optional[tuple[int, int]]]:
    """Product rule D(ab) = D(a)b + aD(b) on all basis pairs; witness on failure."""
    for i in range(algebra.dim):
        ei = algebra.basis_element(i)
        dei = m.apply(ei)
        for j in range(algebra.dim):
            ej = algebra.basis_element(j)
            lhs = m.apply(algebra.sc[i][j])
            rhs = vec_add(algebra.multiply(dei, ej), algebra.multiply(ei, m.apply(ej)))
            if lhs != rhs:
                return False, (i, j)
    return True, None


def is_endomorphism(
    algebra: Algebra, m: Mat, require_unital: bool = True
) -> tuple[bool, Optional[tuple]]:
    """Multiplicativity on all basis pairs, plus unit preservation when required."""
    if require_unital and m.apply(algebra.unit) != algebra.unit:
        return False, ("unit",)
    for i in range(algebra.dim):
        fi = m.apply(algebra.basis_element(i))
        for j in range(algebra.dim):
            lhs = m.apply(algebra.sc[i][j])
            rhs = algebra.multiply(fi, m.apply(algebra.basis_element(j)))
            if lhs != rhs:
                return False, (i, j)
    return True, None


def is_automorphism(algebra: Algebra, m: Mat, require_unital: bool = True) -> bool:
    ok, _ = is_endomorphism(algebra, m, require_unital)
    return ok and inverse(m) is not None


def is_ederivation(algebra: Algebra, m: Mat, require_unital: bool = True) -> bool:
    """d(ab) = d(a)b + a d(b) - d(a)d(b), cross-checked against I - d being
    an endomorphism; the two criteria must agree."""
    direct = True
    for i in range(algebra.dim):
        ei = algebra.basis_element(i)
        di = m.apply(ei)
        for j in range(algebra.dim):
            ej = algebra.basis_element(j)
            dj = m.apply(ej)
            lhs = m.apply(algebra.sc[i][j])
            rhs = vec_sub(
                vec_add(algebra.multiply(di, ej), algebra.multiply(ei, dj)),
                algebra.multiply(di, dj),
            )
            if lhs != rhs:
                direct = False
                break
        if not direct:
            break
    phi = Mat.identity(algebra.dim) - m
    via_endo, _ = is_endomorphism(algebra, phi, require_unital=False)
    if direct != via_endo:
        raise SkewexError("difference-map criteria disagree; internal inconsistency")
    if require_unital and direct and phi.apply(algebra.unit) != algebra.unit:
        return False
    return direct


@dataclass(frozen=True)
class Derivation(LinearEndo):
    """Certified derivation."""

    @staticmethod
    def certify(algebra: Algebra, m: Mat) -> "Derivation":
        ok, witness = is_derivation(algebra, m)
        if not ok:
            raise NotDerivation(witness)
        return Derivation(algebra, m)


@dataclass(frozen=True)
class AlgebraEndo(LinearEndo):
    """Certified algebra endomorphism (unital unless stated otherwise)."""

    unital: bool = True

    @staticmethod
    def certify(algebra: Algebra, m: Mat, require_unital: bool = True) -> "AlgebraEndo":
        ok, witness = is_endomorphism(algebra, m, require_unital)
        if not ok:
            raise NotEndomorphism(witness)
        return AlgebraEndo(algebra, m, require_unital)

    def is_invertible(self) -> bool:
        return inverse(self.matrix) is not None


@dataclass(frozen=True)
class EDerivation(LinearEndo):
    """Certified map of the form I - phi with phi an algebra endomorphism."""

    phi: AlgebraEndo = None

    @staticmethod
    def certify(algebra: Algebra, m: Mat, require_unital: bool = True) -> "EDerivation":
        if not is_ederivation(algebra, m, require_unital):
            raise NotEndomorphism(("difference map",), reason="difference-map identity")
        phi = AlgebraEndo.certify(
            algebra, Mat.identity(algebra.dim) - m, require_unital
        )
        return EDerivation(algebra, m, phi)


def inner_derivation(algebra: Algebra, u: Vec) -> Derivation:
    """a -> u a - a u."""
    m = algebra.left_regular(u) - algebra.right_regular(u)
    return Derivation.certify(algebra, m)


def invert_element(algebra: Algebra, u: Vec) -> Vec:
    """Two-sided inverse of u, or NotInvertible."""
    mu = algebra.left_regular(u)
    u_inv = solve(mu, algebra.unit)
    if u_inv is None or algebra.multiply(u_inv, u) != algebra.unit:
        raise NotInvertible(f"element {u} has no two-sided inverse")
    return u_inv


def inner_automorphism(algebra: Algebra, u: Vec) -> AlgebraEndo:
    """a -> u a u^(-1); requires u invertible."""
    u_inv = invert_element(algebra, u)
    m = algebra.left_regular(u) * algebra.right_regular(u_inv)
    endo = AlgebraEndo.certify(algebra, m)
    if not endo.is_invertible():
        raise NotAutomorphism("conjugation matrix unexpectedly singular")
    return endo


@dataclass(frozen=True)
class FinitenessReport:
    is_ln: bool
    nilpotency_index: Optional[int]
    min_poly: Poly


def local_finiteness_report(endo: LinearEndo) -> FinitenessReport:
    """In finite dimension every map is locally finite; the minimal polynomial
    is the certificate.  The map is locally nilpotent exactly when the minimal
    polynomial is a pure power of t."""
    p = minimal_polynomial(endo.matrix)
    pure_power = all(c == 0 for c in p.coeffs[:-1])
    return FinitenessReport(pure_power, p.degree if pure_power else None, p)


def kernel_chain(phi: AlgebraEndo) -> tuple[Subspace, int]:
    """Union of Ker(phi^i); stabilizes within dim steps and is a two-sided ideal."""
    algebra = phi.algebra
    power = phi.matrix
    prev = kernel(power)
    index = 1
    for _ in range(algebra.dim):
        power = power * phi.matrix
        nxt = kernel(power)
        if nxt == prev:
            break
        prev = nxt
        index += 1
    if not is_ideal(algebra, prev):
        raise SkewexError("kernel chain failed to be a two-sided ideal")
    return prev, index


@dataclass(frozen=True)
class InducedQuotient:
    quotient: Algebra
    projection: Mat
    induced: AlgebraEndo
    injective: bool
    surjective: bool
    chain: Subspace


def induced_map(phi: AlgebraEndo) -> InducedQuotient:
    """Quotient by the kernel chain together with the map phi induces on it.

    The induced map satisfies induced . projection = projection . phi on every
    basis vector, is always injective here, and is surjective exactly when its
    rank is full.
    """
    algebra = phi.algebra
    chain, _ = kernel_chain(phi)
    if chain.dim == 0:
        ident = Mat.identity(algebra.dim)
        induced = AlgebraEndo(algebra, phi.matrix, phi.unital)
        return InducedQuotient(algebra, ident, induced, True, phi.is_invertible(), chain)
    quot, proj = quotient(algebra, chain)
    cols = []
    pivots = set(chain.pivots())
    coords = [j for j in range(algebra.dim) if j not in pivots]
    for j in coords:
        cols.append(proj.apply(phi.matrix.apply(algebra.basis_element(j))))
    induced_matrix = Mat.from_columns(cols)
    for c in range(algebra.dim):
        e = algebra.basis_element(c)
        if induced_matrix.apply(proj.apply(e)) != proj.apply(phi.matrix.apply(e)):
            raise SkewexError("induced map does not commute with the projection")
    induced = AlgebraEndo.certify(quot, induced_matrix)
    rank = len(rref_rank(induced_matrix))
    injective = rank == quot.dim
    if not injective:
        raise SkewexError("induced map on the kernel-chain quotient must be injective")
    return InducedQuotient(quot, proj, induced, injective, rank == quot.dim, chain)


def rref_rank(m: Mat) -> list[int]:
    from .linalg import rref

    _, pivots, _ = rref(m)
    return pivots


def kernel_chain_preimage(phi: AlgebraEndo, a: Vec) -> Vec:
    """b = a + phi(a) + ... + phi^(k-1)(a) with (I - phi)(b) = a, for a killed
    by some power of phi."""
    algebra = phi.algebra
    k = None
    power = a
    for i in range(1, algebra.dim + 1):
        power = phi.matrix.apply(power)
        if all(x == 0 for x in power):
            k = i
            break
    if k is None:
        raise NotInKernelChain(f"no power up to {algebra.dim} kills the element")
    b = a
    term = a
    for _ in range(k - 1):
        term = phi.matrix.apply(term)
        b = vec_add(b, term)
    check = vec_sub(b, phi.matrix.apply(b))
    if check != tuple(a):
        raise SkewexError("preimage identity failed; internal inconsistency")
    return b


def automorphism_order(phi: AlgebraEndo, bound: int = 64) -> Optional[int]:
    """Least m <= bound with phi^m = I, or None."""
    if not phi.is_invertible():
        raise NotAutomorphism("order is only defined for automorphisms")
    ident = Mat.identity(phi.algebra.dim)
    power = phi.matrix
    for m in range(1, bound + 1):
        if power == ident:
            return m
        power = power * phi.matrix
    return None


def exp_derivation(d: Derivation) -> AlgebraEndo:
    """exp(D) for nilpotent D: a finite sum that is an automorphism with
    inverse exp(-D)."""
    report = local_finiteness_report(d)
    if not report.is_ln:
        raise NotLocallyNilpotent(f"minimal polynomial {report.min_poly} is not a pure power")
    n = d.algebra.dim
    k = report.nilpotency_index

    def exp_matrix(m: Mat) -> Mat:
        acc = Mat.identity(n)
        term = Mat.identity(n)
        for i in range(1, k):
            term = term * m
            acc = acc + term.scale(rat(1) / math.factorial(i))
        return acc

    forward = exp_matrix(d.matrix)
    backward = exp_matrix(-d.matrix)
    if forward * backward != Mat.identity(n):
        raise SkewexError("exp(D) exp(-D) != I; internal inconsistency")
    endo = AlgebraEndo.certify(d.algebra, forward)
    if not endo.is_invertible():
        raise NotAutomorphism("exponential of a nilpotent derivation must be invertible")
    return endo


def derivation_space(algebra: Algebra) -> list[Derivation]:
    """Basis of the space of derivations, by solving the product-rule system.

    Unknowns are the n^2 matrix entries; each basis pair contributes n scalar
    equations.  Every returned map re-passes the certificate.
    """
    n = algebra.dim
    rows = []
    for i in range(n):
        for j in range(n):
            prod = algebra.sc[i][j]
            for k in range(n):
                # coefficient of m[r][c]: from D(e_i e_j) minus D(e_i)e_j + e_i D(e_j)
                row = [ZERO] * (n * n)
                for c in range(n):
                    if prod[c]:
                        row[k * n + c] += prod[c]
                for r in range(n):
                    # D(e_i) = column i of m; (D(e_i) e_j)_k = sum_r m[r][i] sc[r][j][k]
                    coeff = algebra.sc[r][j][k]
                    if coeff:
                        row[r * n + i] -= coeff
                    coeff = algebra.sc[i][r][k]
                    if coeff:
                        row[r * n + j] -= coeff
                rows.append(row)
    system = Mat.from_rows(rows)
    null = kernel(system)
    result = []
    for v in null.basis:
        m = Mat.from_rows([[v[r * n + c] for c in range(n)] for r in range(n)])
        result.append(Derivation.certify(algebra, m))
    return result

"""Skew polynomials twisted by a derivation, and the inner-witness extension.

The ring multiplies by the single rewrite X a = a X + D(a), applied step by
step until the product is in left-normal form.  The quotient construction
adjoins an element u with p(u) = 0 whose commutator restricts to D on the
embedded base algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from ._extension import (
    ExtensionResult,
    FreeModel,
    TermList,
    assemble,
    module_generation,
    poly_of_element,
)
from .algebra import Algebra, is_simple, SIMPLE
from .errors import AnnihilatorFails, DimensionMismatch, NotMonic, SkewexError
from .linalg import (
    Mat,
    Poly,
    Vec,
    is_zero_vec,
    kernel,
    minimal_polynomial,
    span,
    vec_add,
    vec_sub,
    zero_vec,
)
from .maps import Derivation


@dataclass(frozen=True)
class SkewPoly:
    """Left-normal form sum of a_i X^i; trailing zero coefficients trimmed."""

    algebra: Algebra
    coeffs: tuple[Vec, ...]

    @staticmethod
    def of(algebra: Algebra, coeffs) -> "SkewPoly":
        cs = [tuple(c) for c in coeffs]
        for c in cs:
            if len(c) != algebra.dim:
                raise DimensionMismatch("coefficient length differs from algebra dimension")
        while cs and is_zero_vec(cs[-1]):
            cs.pop()
        return SkewPoly(algebra, tuple(cs))

    @staticmethod
    def zero(algebra: Algebra) -> "SkewPoly":
        return SkewPoly(algebra, ())

    @staticmethod
    def constant(algebra: Algebra, a: Vec) -> "SkewPoly":
        return SkewPoly.of(algebra, [a])

    @staticmethod
    def monomial(algebra: Algebra, a: Vec, power: int) -> "SkewPoly":
        return SkewPoly.of(algebra, [zero_vec(algebra.dim)] * power + [list(a)])

    @staticmethod
    def x(algebra: Algebra, power: int = 1) -> "SkewPoly":
        return SkewPoly.monomial(algebra, algebra.unit, power)

    @staticmethod
    def from_scalar_poly(algebra: Algebra, p: Poly) -> "SkewPoly":
        return SkewPoly.of(algebra, [tuple(c * x for x in algebra.unit) for c in p.coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Vec:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return zero_vec(self.algebra.dim)

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly.of(self.algebra, [vec_add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly.of(self.algebra, [vec_sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def is_zero(self) -> bool:
        return not self.coeffs


def _x_step(algebra: Algebra, d_matrix: Mat, coeffs: list[Vec]) -> list[Vec]:
    """One application of the rewrite: X * (sum c_p X^p)."""
    out = [zero_vec(algebra.dim) for _ in range(len(coeffs) + 1)]
    for p, c in enumerate(coeffs):
        if is_zero_vec(c):
            continue
        out[p + 1] = vec_add(out[p + 1], c)
        out[p] = vec_add(out[p], d_matrix.apply(c))
    while out and is_zero_vec(out[-1]):
        out.pop()
    return out


def skew_mul(f: SkewPoly, g: SkewPoly, d: Derivation) -> SkewPoly:
    """Product in left-normal form via repeated single-step rewriting."""
    if f.algebra is not g.algebra and f.algebra.sc != g.algebra.sc:
        raise DimensionMismatch("operands live over different algebras")
    algebra = f.algebra
    acc = [zero_vec(algebra.dim) for _ in range(max(0, f.degree + g.degree + 1))]
    current = list(g.coeffs)
    for i in range(f.degree + 1):
        a_i = f.coeff(i)
        if not is_zero_vec(a_i):
            for p, c in enumerate(current):
                if is_zero_vec(c):
                    continue
                acc[p] = vec_add(acc[p], algebra.multiply(a_i, c))
        current = _x_step(algebra, d.matrix, current)
    return SkewPoly.of(algebra, acc)


def commutator_power(n: int, a: Vec, d: Derivation) -> tuple[SkewPoly, SkewPoly]:
    """X^n a - a X^n computed two ways: by rewriting and by the binomial sum.

    Returns (direct, formula) after asserting they agree.
    """
    algebra = d.algebra
    xn = SkewPoly.x(algebra, n) if n > 0 else SkewPoly.constant(algebra, algebra.unit)
    ca = SkewPoly.constant(algebra, a)
    direct = skew_mul(xn, ca, d) - skew_mul(ca, xn, d)
    terms = [zero_vec(algebra.dim) for _ in range(n)] if n else []
    value = tuple(a)
    for i in range(1, n + 1):
        value = d.matrix.apply(value)
        c = comb(n, i)
        terms[n - i] = tuple(c * x for x in value)
    formula = SkewPoly.of(algebra, terms)
    if direct.coeffs != formula.coeffs:
        raise SkewexError("commutator rewrite and binomial sum disagree")
    return direct, formula


def constant_terms(f: SkewPoly, d: Derivation) -> tuple[Vec, Vec]:
    """Constant coefficient in left-normal form and in right-coefficient form.

    The right form is produced top-down by peeling leading terms; converting
    back must reproduce f exactly, which is asserted.
    """
    algebra = f.algebra
    left_c0 = f.coeff(0)
    rem = f
    right: dict[int, Vec] = {}
    while not rem.is_zero():
        deg = rem.degree
        c = rem.coeffs[deg]
        right[deg] = c
        rem = rem - skew_mul(SkewPoly.x(algebra, deg), SkewPoly.constant(algebra, c), d)
    rebuilt = SkewPoly.zero(algebra)
    for power, c in right.items():
        rebuilt = rebuilt + skew_mul(
            SkewPoly.x(algebra, power), SkewPoly.constant(algebra, c), d
        )
    if rebuilt.coeffs != f.coeffs:
        raise SkewexError("left/right coefficient round-trip failed")
    return left_c0, right.get(0, zero_vec(algebra.dim))


def constant_term_identity(q: Poly, b: Vec, d: Derivation) -> tuple[Vec, Vec]:
    """Constant term of q(X) * b versus the operator value q(D)(b).

    The left side goes through full skew multiplication, the right side
    through matrix evaluation; they are asserted equal and both returned.
    """
    algebra = d.algebra
    lhs = skew_mul(SkewPoly.from_scalar_poly(algebra, q), SkewPoly.constant(algebra, b), d).coeff(0)
    rhs = q.eval_matrix(d.matrix).apply(b)
    if lhs != rhs:
        raise SkewexError("constant-term identity failed")
    return lhs, rhs


@dataclass(frozen=True)
class IdealConstantTerm:
    value: Vec
    predicted: Vec
    member: bool


def ideal_constant_term(q: Poly, b: Vec, m: int, k: int, d: Derivation) -> IdealConstantTerm:
    """Constant term of X^m q(X) b X^k: zero for k >= 1, q(D)(D^m(b)) for k = 0,
    and always inside the span of x * q(D)(y)."""
    algebra = d.algebra
    h = skew_mul(SkewPoly.x(algebra, m), SkewPoly.from_scalar_poly(algebra, q), d) \
        if m > 0 else SkewPoly.from_scalar_poly(algebra, q)
    h = skew_mul(h, SkewPoly.constant(algebra, b), d)
    if k > 0:
        h = skew_mul(h, SkewPoly.x(algebra, k), d)
    value = h.coeff(0)
    if k >= 1:
        predicted = zero_vec(algebra.dim)
    else:
        dm_b = b
        for _ in range(m):
            dm_b = d.matrix.apply(dm_b)
        predicted = q.eval_matrix(d.matrix).apply(dm_b)
    if value != predicted:
        raise SkewexError("ideal constant-term closed form failed")
    qd = q.eval_matrix(d.matrix)
    image_span = span(
        [algebra.multiply(algebra.basis_element(i), qd.apply(algebra.basis_element(j)))
         for i in range(algebra.dim) for j in range(algebra.dim)],
        algebra.dim,
    )
    member = image_span.contains(value) if image_span.dim else is_zero_vec(value)
    return IdealConstantTerm(value, predicted, member)


def _check_annihilates(d_matrix: Mat, p: Poly) -> None:
    min_poly = minimal_polynomial(d_matrix)
    if not p.mod(min_poly).is_zero():
        image = p.eval_matrix(d_matrix)
        witness = next(j for j in range(d_matrix.cols) if not is_zero_vec(image.column(j)))
        raise AnnihilatorFails(witness, image.column(witness))


def ore_quotient(
    algebra: Algebra,
    d: Derivation,
    p: Optional[Poly] = None,
    _skip_annihilator_check: bool = False,
) -> ExtensionResult:
    """Adjoin u with p(u) = 0 whose commutator realizes d on the base.

    p defaults to the minimal polynomial of d and must be monic with
    p(d) = 0.  The result's verified postconditions: the base embeds as a
    unital subalgebra, p(u) = 0, [u, embed(a)] = embed(d(a)) for every basis
    a, and the extension is generated as a left and a right module over the
    embedded base by the powers u^i, i < deg p.

    The private flag skips the annihilator precondition; the construction
    then works on the raw rewrite grid, whose consistency certificate fails
    whenever p(d) != 0.
    """
    if p is None:
        p = minimal_polynomial(d.matrix)
    if not p.is_monic() or p.degree < 1:
        raise NotMonic("relation polynomial must be monic of degree >= 1")
    if not _skip_annihilator_check:
        _check_annihilates(d.matrix, p)

    def monomial_product(a: int, i: int, b: int, j: int) -> TermList:
        prod = skew_mul(
            SkewPoly.monomial(algebra, algebra.basis_element(a), i),
            SkewPoly.monomial(algebra, algebra.basis_element(b), j),
            d,
        )
        return list(enumerate(prod.coeffs))

    def generator_polys(model: FreeModel) -> list[TermList]:
        out = []
        px = SkewPoly.from_scalar_poly(algebra, p)
        for b in range(algebra.dim):
            base = skew_mul(px, SkewPoly.constant(algebra, algebra.basis_element(b)), d)
            for k in range(model.d):
                shifted = skew_mul(base, SkewPoly.x(algebra, k), d) if k else base
                out.append(list(enumerate(shifted.coeffs)))
        return out

    def xd_times_basis(b: int) -> TermList:
        prod = skew_mul(
            SkewPoly.x(algebra, p.degree),
            SkewPoly.constant(algebra, algebra.basis_element(b)),
            d,
        )
        return list(enumerate(prod.coeffs))

    ext, embed, u, model, defect = assemble(
        algebra, p, "derivation", monomial_product, generator_polys, xd_times_basis,
        force_free_model=_skip_annihilator_check,
    )
    if not is_zero_vec(poly_of_element(ext, p, u)):
        raise SkewexError("p(u) != 0 in the constructed extension")
    for a in range(algebra.dim):
        img = embed.column(a)
        commutator = vec_sub(ext.multiply(u, img), ext.multiply(img, u))
        if commutator != embed.apply(d.matrix.apply(algebra.basis_element(a))):
            raise SkewexError("adjoined witness does not realize the derivation")
    powers = [ext.unit]
    for _ in range(p.degree - 1):
        powers.append(ext.multiply(powers[-1], u))
    left_ok, right_ok = module_generation(ext, embed, powers, algebra.dim)
    if not (left_ok and right_ok):
        raise SkewexError("extension is not generated by the witness powers")
    return ExtensionResult(
        "derivation", algebra, ext, embed, u, None, p,
        free_module=(defect == 0), defect_dim=defect,
    )


def extension_embedding_injective(result: ExtensionResult) -> bool:
    """The base-to-extension map has zero kernel."""
    return kernel(result.embed).dim == 0


@dataclass(frozen=True)
class ImageSpanReport:
    left_full: bool
    right_full: bool
    applicable: bool
    simple: str
    nonzero: bool


def simple_image_check(algebra: Algebra, d: Derivation) -> ImageSpanReport:
    """Whether span{x * D(y)} and span{D(y) * x} are the whole algebra.

    Both must hold when the algebra is simple and D is nonzero; the
    hypotheses are evaluated and reported alongside.
    """
    images = [d.matrix.apply(algebra.basis_element(j)) for j in range(algebra.dim)]
    left = span(
        [algebra.multiply(algebra.basis_element(i), w)
         for i in range(algebra.dim) for w in images],
        algebra.dim,
    )
    right = span(
        [algebra.multiply(w, algebra.basis_element(i))
         for i in range(algebra.dim) for w in images],
        algebra.dim,
    )
    verdict, _ = is_simple(algebra)
    nonzero = not d.matrix.is_zero()
    return ImageSpanReport(
        left_full=left.dim == algebra.dim,
        right_full=right.dim == algebra.dim,
        applicable=(verdict == SIMPLE and nonzero),
        simple=verdict,
        nonzero=nonzero,
    )

"""Skew Laurent polynomials twisted by an automorphism, and the invertible
inner-witness extension.

Multiplication moves powers of X past coefficients by X^k a = phi^k(a) X^k,
valid for every integer k because phi is invertible.  The quotient
construction adjoins an invertible u with p(u) = 0 whose conjugation action
restricts to phi on the embedded base algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._extension import (
    ExtensionResult,
    FreeModel,
    TermList,
    assemble,
    module_generation,
    poly_of_element,
)
from .algebra import Algebra
from .errors import (
    AnnihilatorFails,
    ConstantTermZero,
    DimensionMismatch,
    NotAutomorphism,
    NotMonic,
    SkewexError,
)
from .linalg import (
    Mat,
    Poly,
    Vec,
    inverse,
    is_zero_vec,
    kernel,
    minimal_polynomial,
    rat,
    span,
    vec_add,
    zero_vec,
)
from .maps import AlgebraEndo


@dataclass(frozen=True)
class LaurentSkewPoly:
    """Finite sum of a_i X^i over integer exponents, coefficients on the left."""

    algebra: Algebra
    terms: tuple[tuple[int, Vec], ...]  # ascending exponents, no zero coefficients

    @staticmethod
    def of(algebra: Algebra, terms) -> "LaurentSkewPoly":
        collected: dict[int, Vec] = {}
        for exp, coeff in terms:
            coeff = tuple(coeff)
            if len(coeff) != algebra.dim:
                raise DimensionMismatch("coefficient length differs from algebra dimension")
            if exp in collected:
                collected[exp] = vec_add(collected[exp], coeff)
            else:
                collected[exp] = coeff
        cleaned = tuple(
            (exp, collected[exp]) for exp in sorted(collected) if not is_zero_vec(collected[exp])
        )
        return LaurentSkewPoly(algebra, cleaned)

    @staticmethod
    def zero(algebra: Algebra) -> "LaurentSkewPoly":
        return LaurentSkewPoly(algebra, ())

    @staticmethod
    def constant(algebra: Algebra, a: Vec) -> "LaurentSkewPoly":
        return LaurentSkewPoly.of(algebra, [(0, a)])

    @staticmethod
    def monomial(algebra: Algebra, a: Vec, exp: int) -> "LaurentSkewPoly":
        return LaurentSkewPoly.of(algebra, [(exp, a)])

    @staticmethod
    def x(algebra: Algebra, exp: int = 1) -> "LaurentSkewPoly":
        return LaurentSkewPoly.of(algebra, [(exp, algebra.unit)])

    @staticmethod
    def from_scalar_terms(algebra: Algebra, terms: Sequence[tuple[int, Fraction]]
                          ) -> "LaurentSkewPoly":
        return LaurentSkewPoly.of(
            algebra, [(e, tuple(rat(c) * x for x in algebra.unit)) for e, c in terms]
        )

    def __add__(self, other: "LaurentSkewPoly") -> "LaurentSkewPoly":
        return LaurentSkewPoly.of(self.algebra, list(self.terms) + list(other.terms))

    def __sub__(self, other: "LaurentSkewPoly") -> "LaurentSkewPoly":
        negated = [(e, tuple(-x for x in c)) for e, c in other.terms]
        return LaurentSkewPoly.of(self.algebra, list(self.terms) + negated)

    def is_zero(self) -> bool:
        return not self.terms


class _TwistPowers:
    """Cached integer powers of the twisting automorphism."""

    def __init__(self, phi: AlgebraEndo):
        if not phi.is_invertible():
            raise NotAutomorphism("the twist must be invertible")
        self.forward = phi.matrix
        self.backward = inverse(phi.matrix)
        self.cache: dict[int, Mat] = {0: Mat.identity(phi.algebra.dim)}

    def power(self, k: int) -> Mat:
        if k not in self.cache:
            if k > 0:
                self.cache[k] = self.power(k - 1) * self.forward
            else:
                self.cache[k] = self.power(k + 1) * self.backward
        return self.cache[k]


def laurent_mul(f: LaurentSkewPoly, g: LaurentSkewPoly, phi: AlgebraEndo) -> LaurentSkewPoly:
    """Product in left-normal form: a X^i * b X^j = a phi^i(b) X^(i+j)."""
    algebra = f.algebra
    twist = _TwistPowers(phi)
    out: list[tuple[int, Vec]] = []
    for i, a in f.terms:
        mat = twist.power(i)
        for j, b in g.terms:
            out.append((i + j, algebra.multiply(a, mat.apply(b))))
    return LaurentSkewPoly.of(algebra, out)


def conjugate_by_x(a: Vec, k: int, phi: AlgebraEndo) -> Vec:
    """X^k a X^(-k) = phi^k(a), exposed as a convenience."""
    return _TwistPowers(phi).power(k).apply(a)


def eval_at_one(f: LaurentSkewPoly) -> Vec:
    """Sum of the left-normal coefficients.

    Only meaningful on the left-normal form, which the type maintains; a
    right-coefficient expression must be normalized first and may sum
    differently.
    """
    acc = zero_vec(f.algebra.dim)
    for _, c in f.terms:
        acc = vec_add(acc, c)
    return acc


@dataclass(frozen=True)
class CoefficientSumReport:
    value: Vec
    closed_form: Vec
    member: bool


def coefficient_sum_membership(
    scalar_terms: Sequence[tuple[int, Fraction]],
    b: Vec,
    c: Vec,
    j: int,
    k: int,
    phi: AlgebraEndo,
) -> CoefficientSumReport:
    """For h = b X^j f(X) c X^k with scalar f: the coefficient sum h[1] equals
    b * f(phi)(phi^j(c)) and lies in span{x * f(phi)(y)}."""
    algebra = phi.algebra
    f = LaurentSkewPoly.from_scalar_terms(algebra, scalar_terms)
    h = laurent_mul(LaurentSkewPoly.monomial(algebra, b, j), f, phi)
    h = laurent_mul(h, LaurentSkewPoly.monomial(algebra, c, k), phi)
    value = eval_at_one(h)
    twist = _TwistPowers(phi)
    f_of_phi = Mat.zeros(algebra.dim, algebra.dim)
    for exp, coeff in scalar_terms:
        f_of_phi = f_of_phi + twist.power(exp).scale(rat(coeff))
    closed = algebra.multiply(b, f_of_phi.apply(twist.power(j).apply(c)))
    if value != closed:
        raise SkewexError("coefficient-sum closed form failed")
    image_span = span(
        [algebra.multiply(algebra.basis_element(r), f_of_phi.apply(algebra.basis_element(s)))
         for r in range(algebra.dim) for s in range(algebra.dim)],
        algebra.dim,
    )
    member = image_span.contains(value) if image_span.dim else is_zero_vec(value)
    return CoefficientSumReport(value, closed, member)


def _check_annihilates(phi_matrix: Mat, p: Poly) -> None:
    min_poly = minimal_polynomial(phi_matrix)
    if not p.mod(min_poly).is_zero():
        image = p.eval_matrix(phi_matrix)
        witness = next(j for j in range(phi_matrix.cols) if not is_zero_vec(image.column(j)))
        raise AnnihilatorFails(witness, image.column(witness))


def laurent_quotient(
    algebra: Algebra,
    phi: AlgebraEndo,
    p: Optional[Poly] = None,
    _skip_annihilator_check: bool = False,
) -> ExtensionResult:
    """Adjoin an invertible u with p(u) = 0 conjugating by phi on the base.

    p defaults to the minimal polynomial of phi; it must be monic with
    nonzero constant term and p(phi) = 0.  Verified postconditions: the base
    embeds unitally, u has a two-sided inverse, p(u) = 0,
    u embed(a) u^(-1) = embed(phi(a)) on every basis vector, and powers
    u^i with |i| < deg p generate the extension as a module on both sides.
    """
    if not phi.is_invertible():
        raise NotAutomorphism("the twist must be an automorphism")
    if p is None:
        p = minimal_polynomial(phi.matrix)
    if not p.is_monic() or p.degree < 1:
        raise NotMonic("relation polynomial must be monic of degree >= 1")
    if p.coeff(0) == 0:
        raise ConstantTermZero("relation polynomial needs a nonzero constant term")
    if not _skip_annihilator_check:
        _check_annihilates(phi.matrix, p)
    twist = _TwistPowers(phi)

    def monomial_product(a: int, i: int, b: int, j: int) -> TermList:
        coeff = algebra.multiply(
            algebra.basis_element(a), twist.power(i).apply(algebra.basis_element(b))
        )
        return [(i + j, coeff)]

    def generator_polys(model: FreeModel) -> list[TermList]:
        out = []
        for b in range(algebra.dim):
            eb = algebra.basis_element(b)
            base = [(i, tuple(c * x for x in twist.power(i).apply(eb)))
                    for i, c in enumerate(p.coeffs) if c]
            for k in range(model.d):
                out.append([(i + k, coeff) for i, coeff in base])
        return out

    def xd_times_basis(b: int) -> TermList:
        return [(p.degree, twist.power(p.degree).apply(algebra.basis_element(b)))]

    ext, embed, u, model, defect = assemble(
        algebra, p, "automorphism", monomial_product, generator_polys, xd_times_basis,
        force_free_model=_skip_annihilator_check,
    )
    if not is_zero_vec(poly_of_element(ext, p, u)):
        raise SkewexError("p(u) != 0 in the constructed extension")
    # u^(-1) from the relation: multiply p(u) = 0 by u^(-d) and solve for it.
    alpha0 = p.coeff(0)
    acc = zero_vec(ext.dim)
    power = ext.unit
    for i in range(1, p.degree):
        acc = vec_add(acc, tuple(p.coeff(i) * x for x in power))
        power = ext.multiply(power, u)
    acc = vec_add(acc, power)  # + u^(d-1)
    u_inv = tuple(-x / alpha0 for x in acc)
    if ext.multiply(u, u_inv) != ext.unit or ext.multiply(u_inv, u) != ext.unit:
        raise SkewexError("witness inverse identity failed")
    for a in range(algebra.dim):
        img = embed.column(a)
        conj = ext.multiply(ext.multiply(u, img), u_inv)
        if conj != embed.apply(phi.matrix.apply(algebra.basis_element(a))):
            raise SkewexError("adjoined witness does not realize the automorphism")
    powers = [ext.unit]
    for _ in range(p.degree - 1):
        powers.append(ext.multiply(powers[-1], u))
    inv_power = ext.unit
    for _ in range(p.degree - 1):
        inv_power = ext.multiply(inv_power, u_inv)
        powers.append(inv_power)
    left_ok, right_ok = module_generation(ext, embed, powers, algebra.dim)
    if not (left_ok and right_ok):
        raise SkewexError("extension is not generated by the witness powers")
    return ExtensionResult(
        "automorphism", algebra, ext, embed, u, u_inv, p,
        free_module=(defect == 0), defect_dim=defect,
    )


def extension_embedding_injective(result: ExtensionResult) -> bool:
    """The base-to-extension map has zero kernel."""
    return kernel(result.embed).dim == 0

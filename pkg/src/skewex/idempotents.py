"""Idempotent enumeration, trace-rank checks, and the subspace oracles.

Enumeration is exact on commutative algebras: split the semisimple quotient
along rational eigenvalues of basis directions, lift primitives through the
radical by the cubic Newton step, and close under orthogonal sums.  When an
irreducible factor of degree >= 2 survives, the (still valid) partial set is
returned flagged inconclusive rather than silently treated as complete.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (
    Algebra,
    ideal_closure,
    quotient,
    quotient_section,
    radical,
)
from .errors import CapExceeded, NotCommutative, NotIdempotent, PhibarNotSurjective, SkewexError
from .linalg import (
    Mat,
    Subspace,
    Vec,
    ZERO,
    ONE,
    column_space,
    is_zero_vec,
    minimal_polynomial,
    rat,
    rref,
    span,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vec,
)
from .maps import AlgebraEndo, LinearEndo, induced_map, kernel_chain

DEFAULT_CAP = 2 ** 20
CAP_ENV_VAR = "SKEWEX_IDEMPOTENT_CAP"


def idempotent_cap() -> int:
    value = os.environ.get(CAP_ENV_VAR)
    return int(value) if value else DEFAULT_CAP


@dataclass(frozen=True)
class IdempotentSet:
    """Verified idempotents of an algebra; 0 and 1 are always present."""

    items: tuple[Vec, ...]
    complete: bool
    inconclusive_reason: Optional[str] = None
    provenance: tuple[str, ...] = ()

    def nonzero(self) -> list[Vec]:
        return [e for e in self.items if not is_zero_vec(e)]


def _restriction_matrix(algebra: Algebra, x: Vec, corner: Subspace) -> Mat:
    """Matrix of multiplication by x restricted to an invariant subspace."""
    pivots = corner.pivots()
    cols = []
    for b in corner.basis:
        image = algebra.multiply(x, b)
        if not corner.contains(image):
            raise SkewexError("multiplication does not preserve the corner")
        residual = image
        cols.append(tuple(residual[p] for p in pivots))
    # RREF bases make coordinates plain reads at the pivot positions.
    return Mat.from_columns(cols)


def _split_block(algebra: Algebra, block: Vec, direction: Vec) -> list[Vec]:
    """Split an idempotent block along the rational eigenvalues of a direction.

    Returns the finer orthogonal idempotents (possibly just [block]).
    """
    corner = column_space(algebra.left_regular(block))
    if corner.dim <= 1:
        return [block]
    x = algebra.multiply(block, direction)
    restricted = _restriction_matrix(algebra, x, corner)
    min_poly = minimal_polynomial(restricted).squarefree_part()
    roots = min_poly.rational_roots()
    if not roots or min_poly.degree == 1:
        return [block]
    pieces = []
    remainder = block
    for lam in roots:
        reduced, _ = min_poly.divmod(
            # divide out (t - lam)
            _linear_factor(lam)
        )
        scale = reduced.eval(lam)
        # q(t) = (m/(t-lam)) / m'(lam) selects the lam component
        projector = reduced.scale(ONE / scale)
        piece = _eval_poly_in_corner(algebra, projector, x, block)
        if is_zero_vec(piece):
            continue
        pieces.append(piece)
        remainder = vec_sub(remainder, piece)
    if not pieces:
        return [block]
    if not is_zero_vec(remainder):
        pieces.append(remainder)
    for piece in pieces:
        if algebra.multiply(piece, piece) != piece:
            raise SkewexError("eigen-projection failed to produce an idempotent")
    return pieces


def _linear_factor(lam: Fraction):
    from .linalg import Poly

    return Poly.of([-lam, ONE])


def _eval_poly_in_corner(algebra: Algebra, p, x: Vec, corner_unit: Vec) -> Vec:
    """p(x) inside the corner algebra whose unit is corner_unit."""
    acc = zero_vec(algebra.dim)
    power = corner_unit
    for c in p.coeffs:
        if c:
            acc = vec_add(acc, vec_scale(c, power))
        power = algebra.multiply(power, x)
    return acc


def enumerate_idempotents(algebra: Algebra, cap: Optional[int] = None) -> IdempotentSet:
    """All idempotents of a commutative algebra, or a flagged partial set.

    Pipeline: radical, semisimple quotient, rational eigen-splitting along
    every basis direction, cubic Newton lifting, closure under sums of
    orthogonal primitives.
    """
    if not algebra.is_commutative():
        raise NotCommutative("idempotent enumeration requires a commutative algebra")
    cap = idempotent_cap() if cap is None else cap
    rad = radical(algebra)
    if rad.dim == 0:
        semisimple, proj, section = algebra, Mat.identity(algebra.dim), Mat.identity(algebra.dim)
    else:
        semisimple, proj = quotient(algebra, rad)
        section = quotient_section(algebra, rad)

    blocks = [semisimple.unit]
    complete = True
    changed = True
    while changed:
        changed = False
        for direction in range(semisimple.dim):
            new_blocks = []
            for block in blocks:
                pieces = _split_block(
                    semisimple, block, semisimple.basis_element(direction)
                )
                if len(pieces) > 1:
                    changed = True
                new_blocks.extend(pieces)
            blocks = new_blocks
    for block in blocks:
        corner_dim = column_space(semisimple.left_regular(block)).dim
        if corner_dim > 1:
            complete = False

    primitives = []
    for block in blocks:
        lifted = _newton_lift(algebra, proj, section, block)
        primitives.append(lifted)
    for i, e in enumerate(primitives):
        for f in primitives[i + 1:]:
            if not is_zero_vec(algebra.multiply(e, f)):
                raise SkewexError("lifted primitives are not orthogonal")
    total = zero_vec(algebra.dim)
    for e in primitives:
        total = vec_add(total, e)
    if total != algebra.unit:
        raise SkewexError("lifted primitives do not sum to the unit")

    k = len(primitives)
    if 2 ** k > cap:
        raise CapExceeded(f"2^{k} idempotents exceed the cap {cap}")
    items: list[Vec] = []
    provenance: list[str] = []
    lifted_any = rad.dim > 0
    for mask in range(2 ** k):
        e = zero_vec(algebra.dim)
        size = 0
        for bit in range(k):
            if mask & (1 << bit):
                e = vec_add(e, primitives[bit])
                size += 1
        if algebra.multiply(e, e) != e:
            raise SkewexError("orthogonal sum failed to be idempotent")
        items.append(e)
        if size == 1:
            provenance.append("lifted" if lifted_any else "primitive")
        else:
            provenance.append("sum")
    reason = None if complete else "an irreducible factor of degree >= 2 survived splitting"
    return IdempotentSet(tuple(items), complete, reason, tuple(provenance))


def _newton_lift(algebra: Algebra, proj: Mat, section: Mat, block: Vec) -> Vec:
    """Lift an idempotent of the semisimple quotient through the radical.

    Iterates e <- 3e^2 - 2e^3; every iterate stays congruent to the block
    modulo the radical, and the loop must terminate within log2(nilpotency
    index) steps.
    """
    e = section.apply(block)
    for _ in range(algebra.dim + 2):
        square = algebra.multiply(e, e)
        if square == e:
            if proj.apply(e) != tuple(block):
                raise SkewexError("lift drifted away from its semisimple image")
            return e
        cube = algebra.multiply(square, e)
        e = vec_sub(vec_scale(rat(3), square), vec_scale(rat(2), cube))
    raise SkewexError("idempotent lifting did not converge")


@dataclass(frozen=True)
class TraceRank:
    trace: Fraction
    rank: int
    equal: bool


def trace_rank_idempotent(algebra: Algebra, e: Vec) -> TraceRank:
    """Exact trace and rank of left multiplication by an idempotent.

    They always agree, the trace is an integer between 0 and dim, and it is
    positive for nonzero idempotents.
    """
    if algebra.multiply(e, e) != tuple(e):
        raise NotIdempotent(f"{e} squared differs from itself")
    m = algebra.left_regular(e)
    _, _, rank = rref(m)
    trace = m.trace()
    return TraceRank(trace, rank, trace == rank)


IS_MS = "is_ms"
NOT_MS = "not_ms"
INCONCLUSIVE_IDEMPOTENTS = "inconclusive_idempotents"


@dataclass(frozen=True)
class MsVerdict:
    status: str
    witness: Optional[Vec]
    checked: tuple[tuple[Vec, bool], ...]


def ms_check(
    algebra: Algebra, v: Subspace, idems: IdempotentSet, side: str = "two"
) -> MsVerdict:
    """Idempotent criterion: every listed idempotent inside v must generate an
    ideal inside v.  The verdict is only definitive when the set is complete."""
    checked = []
    for e in idems.items:
        if not v.contains(e):
            continue
        ideal = ideal_closure(algebra, [e], side)
        inside = ideal.is_subspace_of(v)
        checked.append((e, inside))
        if not inside:
            return MsVerdict(NOT_MS, e, tuple(checked))
    status = IS_MS if idems.complete else INCONCLUSIVE_IDEMPOTENTS
    return MsVerdict(status, None, tuple(checked))


@dataclass(frozen=True)
class PowerSpan:
    powers: Subspace
    tail: Subspace
    stabilized_at: int


def power_span(algebra: Algebra, a: Vec) -> PowerSpan:
    """Span of the positive powers of a, and the eventual tail span.

    The tail W_N = span{a^N, ..., a^(N+n)} is decreasing in N and stabilizes
    by step n + 1; the stable value decides every "for all large m" question
    about powers of a exactly.
    """
    n = algebra.dim
    powers = []
    current = a
    for _ in range(n + 1):
        powers.append(current)
        current = algebra.multiply(current, a)
    p_span = span(powers, n)
    prev_window = powers
    prev = span(prev_window, n)
    stabilized = 1
    for step in range(1, n + 2):
        next_window = [algebra.multiply(w, a) for w in prev_window]
        nxt = span(next_window, n)
        if nxt == prev:
            stabilized = step
            break
        prev_window = next_window
        prev = nxt
        stabilized = step + 1
    return PowerSpan(p_span, prev, stabilized)


PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


def ms_witness_check(
    algebra: Algebra, v: Subspace, a: Vec, b: Vec, c: Vec, side: str = "two"
) -> str:
    """One instance of the defining membership test for a subspace.

    Not applicable unless every positive power of a lies in v; otherwise the
    side-appropriate eventual products must land in v, decided via the stable
    tail span rather than any finite sampling.
    """
    ps = power_span(algebra, a)
    if not ps.powers.is_subspace_of(v):
        return NOT_APPLICABLE
    tail = ps.tail.basis
    if side == "left":
        products = [algebra.multiply(b, t) for t in tail]
    elif side == "right":
        products = [algebra.multiply(t, c) for t in tail]
    elif side == "two":
        products = [algebra.multiply(algebra.multiply(b, t), c) for t in tail]
    else:
        raise ValueError(f"unknown side {side!r}")
    return PASS if all(v.contains(x) for x in products) else FAIL


def image_idempotent_audit(
    algebra: Algebra, delta: LinearEndo, idems: IdempotentSet
) -> list[Vec]:
    """Nonzero listed idempotents inside the image of the map."""
    image = column_space(delta.matrix)
    return [e for e in idems.nonzero() if image.contains(e)]


def image_trace_certificate(algebra: Algebra, m: Mat) -> bool:
    """True when the column span of m sits inside the trace-form kernel.

    Since an idempotent's regular trace equals its rank, a trace-zero image
    cannot contain a nonzero idempotent; this certifies emptiness without any
    enumeration.
    """
    for j in range(m.cols):
        if algebra.trace_of(m.column(j)) != 0:
            return False
    return True


@dataclass(frozen=True)
class ImageKernelReport:
    entries: tuple[tuple[Vec, bool, bool], ...]  # (idempotent, in image, in chain)
    consistent: bool
    ideal_contained: bool


def image_kernel_idempotent_report(
    algebra: Algebra, phi: AlgebraEndo, idems: IdempotentSet
) -> ImageKernelReport:
    """For each idempotent: membership in Im(I - phi) must match membership in
    the kernel chain of phi, and idempotents inside the image must drag their
    whole ideal along."""
    induced = induced_map(phi)
    if not induced.surjective:
        raise PhibarNotSurjective("induced map is not surjective")
    delta = Mat.identity(algebra.dim) - phi.matrix
    image = column_space(delta)
    chain, _ = kernel_chain(phi)
    entries = []
    consistent = True
    ideal_contained = True
    for e in idems.items:
        in_image = image.contains(e)
        in_chain = chain.contains(e)
        if in_image != in_chain:
            consistent = False
        if in_image and not is_zero_vec(e):
            ideal = ideal_closure(algebra, [e], "two")
            if not ideal.is_subspace_of(image):
                ideal_contained = False
        entries.append((e, in_image, in_chain))
    return ImageKernelReport(tuple(entries), consistent, ideal_contained)


def matrix_unit_trace_vector(size: int) -> Vec:
    """Coordinates of the standard matrix trace on the matrix-unit basis."""
    dim = size * size
    out = [ZERO] * dim
    for i in range(size):
        out[i * size + i] = ONE
    return tuple(out)


def rank_one_idempotent_grid(size: int, count: int = 100) -> list[Vec]:
    """Rational rank-one idempotents of a matrix algebra, as coordinate vectors.

    Built as v w^T / (w . v) over a deterministic grid of small rational
    parameters; `count` distinct idempotents are returned.
    """
    if size < 2:
        raise SkewexError("rank-one grid needs a matrix size of at least 2")
    values = [rat(x) for x in
              (0, 1, -1, 2, Fraction(1, 2), 3, Fraction(-1, 2), Fraction(2, 3), -2,
               Fraction(3, 2), Fraction(1, 3), 4)]
    out: list[Vec] = []
    seen: set[Vec] = set()
    for va in values:
        for vb in values:
            if len(out) >= count:
                return out
            v = [ONE, va] + [va * va] * (size - 2)
            w = [ONE, vb] + [vb] * (size - 2)
            dot = sum(x * y for x, y in zip(v, w))
            if dot == 0:
                continue
            e = [ZERO] * (size * size)
            for i in range(size):
                for j in range(size):
                    e[i * size + j] = v[i] * w[j] / dot
            key = tuple(e)
            if key not in seen:
                seen.add(key)
                out.append(key)
    if len(out) < count:
        raise SkewexError("grid exhausted before reaching the requested count")
    return out

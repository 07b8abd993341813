"""Seeded generators for test objects: elements, automorphisms, endomorphisms.

Everything is driven by a caller-supplied random.Random so runs are
reproducible from the seed alone.  Endomorphisms are built structurally:
polynomial substitution on one-generator blocks, slot maps on product
algebras, inner conjugation, exponentials of nilpotent derivations, and
compositions of these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product as iter_product
from typing import Sequence

from .algebra import Algebra, direct_product
from .errors import NotInvertible, SkewexError
from .linalg import Mat, Vec, ZERO, ONE, inverse, rat, zero_vec
from .maps import (
    AlgebraEndo,
    Derivation,
    derivation_space,
    exp_derivation,
    inner_automorphism,
    is_endomorphism,
    local_finiteness_report,
)


def random_element(algebra: Algebra, rng: random.Random, bound: int = 3) -> Vec:
    return tuple(rat(rng.randint(-bound, bound)) for _ in range(algebra.dim))


def random_invertible_element(algebra: Algebra, rng: random.Random,
                              tries: int = 200) -> Vec:
    for _ in range(tries):
        u = random_element(algebra, rng)
        if inverse(algebra.left_regular(u)) is not None:
            return u
    raise SkewexError("no invertible element found; the algebra may be degenerate")


def random_trace_zero_invertible(algebra: Algebra, rng: random.Random,
                                 tries: int = 500) -> Vec:
    """Invertible element whose regular trace vanishes."""
    for _ in range(tries):
        u = random_element(algebra, rng)
        if algebra.trace_of(u) != 0:
            continue
        if inverse(algebra.left_regular(u)) is not None:
            return u
    raise SkewexError("no trace-zero invertible element found")


def nilpotent_derivations(algebra: Algebra, rng: random.Random,
                          count: int, tries: int = 200) -> list[Derivation]:
    """Nilpotent members of the derivation space, by seeded combination."""
    basis = derivation_space(algebra)
    found: list[Derivation] = []
    seen = set()
    for d in basis:
        if local_finiteness_report(d).is_ln and not d.matrix.is_zero():
            if d.matrix.entries not in seen:
                seen.add(d.matrix.entries)
                found.append(d)
    attempts = 0
    while len(found) < count and attempts < tries and basis:
        attempts += 1
        coeffs = [rat(rng.randint(-2, 2)) for _ in basis]
        m = Mat.zeros(algebra.dim, algebra.dim)
        for c, d in zip(coeffs, basis):
            if c:
                m = m + d.matrix.scale(c)
        if m.is_zero():
            continue
        candidate = Derivation.certify(algebra, m)
        if local_finiteness_report(candidate).is_ln and m.entries not in seen:
            seen.add(m.entries)
            found.append(candidate)
    return found[:count]


def permutation_automorphisms(algebra: Algebra, limit: int = 24) -> list[AlgebraEndo]:
    """Basis permutations that happen to be algebra automorphisms.

    Searched exhaustively for small dimensions only.
    """
    n = algebra.dim
    if n > 6:
        return []
    out = []
    for perm in permutations(range(n)):
        m = Mat.from_columns([algebra.basis_element(perm[j]) for j in range(n)])
        ok, _ = is_endomorphism(algebra, m)
        if ok:
            out.append(AlgebraEndo.certify(algebra, m))
            if len(out) >= limit:
                break
    return out


def substitution_endos(algebra: Algebra, generator: int,
                       coeff_choices: Sequence = (-1, 0, 1, 2)) -> list[AlgebraEndo]:
    """Unital endomorphisms of a one-generator algebra by substituting for the
    generator.

    Assumes the basis is 1, t, ..., t^(dim-1) with t = basis_element(generator);
    candidate images are swept over a small coefficient grid and certified.
    """
    n = algebra.dim
    out = []
    seen = set()
    for coeffs in iter_product([rat(c) for c in coeff_choices], repeat=n - 1):
        g = (ZERO,) + coeffs  # no constant term keeps the sweep small
        cols = [algebra.unit]
        power = algebra.unit
        for _ in range(1, n):
            power = algebra.multiply(power, g)
            cols.append(power)
        m = Mat.from_columns(cols)
        ok, _ = is_endomorphism(algebra, m)
        if ok and m.entries not in seen:
            seen.add(m.entries)
            out.append(AlgebraEndo.certify(algebra, m))
    # constant-term images (projections onto scalars) matter for t^2 - t style blocks
    for c0 in (ZERO, ONE):
        g = (c0,) + zero_vec(n - 1)
        cols = [algebra.unit]
        power = algebra.unit
        for _ in range(1, n):
            power = algebra.multiply(power, g)
            cols.append(power)
        m = Mat.from_columns(cols)
        ok, _ = is_endomorphism(algebra, m)
        if ok and m.entries not in seen:
            seen.add(m.entries)
            out.append(AlgebraEndo.certify(algebra, m))
    return out


@dataclass
class ProductRecipe:
    """A direct product together with its block structure, so slot-wise
    endomorphisms can be assembled."""

    algebra: Algebra
    blocks: list[Algebra]
    offsets: list[int]

    @staticmethod
    def build(blocks: Sequence[Algebra]) -> "ProductRecipe":
        if not blocks:
            raise ValueError("at least one block required")
        algebra = blocks[0]
        for b in blocks[1:]:
            algebra = direct_product(algebra, b)
        offsets = []
        at = 0
        for b in blocks:
            offsets.append(at)
            at += b.dim
        return ProductRecipe(algebra, list(blocks), offsets)


def slot_endomorphism(recipe: ProductRecipe, sources: Sequence[int],
                      block_maps: Sequence[Mat]) -> AlgebraEndo:
    """phi(x)_j = psi_j(x_{sources[j]}), valid when source blocks equal target
    blocks structurally."""
    n = recipe.algebra.dim
    rows = [[ZERO] * n for _ in range(n)]
    for j, (src, psi) in enumerate(zip(sources, block_maps)):
        target = recipe.blocks[j]
        source = recipe.blocks[src]
        if target.sc != source.sc:
            raise SkewexError("slot map between structurally different blocks")
        for r in range(target.dim):
            for c in range(source.dim):
                rows[recipe.offsets[j] + r][recipe.offsets[src] + c] = psi.entries[r][c]
    return AlgebraEndo.certify(recipe.algebra, Mat.from_rows(rows))


def recipe_endomorphisms(recipe: ProductRecipe, rng: random.Random, count: int,
                         require_singular: bool = False) -> list[AlgebraEndo]:
    """Seeded slot-wise endomorphisms of a product, optionally only singular ones."""
    per_block: list[list[Mat]] = []
    for block in recipe.blocks:
        endos = [Mat.identity(block.dim)]
        if block.dim >= 2 and _looks_monogenic(block):
            endos = [e.matrix for e in substitution_endos(block, 1)]
        per_block.append(endos)
    compatible_sources = [
        [i for i, other in enumerate(recipe.blocks) if other.sc == blk.sc]
        for blk in recipe.blocks
    ]
    out: list[AlgebraEndo] = []
    seen = set()
    tries = 0
    while len(out) < count and tries < 60 * count:
        tries += 1
        sources = [rng.choice(opts) for opts in compatible_sources]
        block_maps = [rng.choice(per_block[src]) for src in sources]
        endo = slot_endomorphism(recipe, sources, block_maps)
        if require_singular and inverse(endo.matrix) is not None:
            continue
        if endo.matrix.entries not in seen:
            seen.add(endo.matrix.entries)
            out.append(endo)
    return out


def _looks_monogenic(block: Algebra) -> bool:
    """True for the power-basis presentation produced by poly_quotient."""
    if block.unit != tuple(ONE if i == 0 else ZERO for i in range(block.dim)):
        return False
    t = block.basis_element(1) if block.dim > 1 else block.unit
    power = block.unit
    for i in range(block.dim):
        if power != block.basis_element(i):
            return False
        power = block.multiply(power, t)
    return True


def sample_automorphisms(algebra: Algebra, rng: random.Random, count: int) -> list[AlgebraEndo]:
    """A deterministic pool: inner conjugations, exponentials of nilpotent
    derivations, basis permutations, substitution automorphisms, and pairwise
    compositions."""
    pool: list[AlgebraEndo] = []
    seen: set = set()

    def push(endo: AlgebraEndo) -> None:
        if endo.matrix.entries not in seen and inverse(endo.matrix) is not None:
            seen.add(endo.matrix.entries)
            pool.append(endo)

    push(AlgebraEndo.certify(algebra, Mat.identity(algebra.dim)))
    for auto in permutation_automorphisms(algebra):
        push(auto)
    if _looks_monogenic(algebra) and algebra.dim >= 2:
        for endo in substitution_endos(algebra, 1):
            push(endo)
    if not algebra.is_commutative():
        for _ in range(count):
            try:
                push(inner_automorphism(algebra, random_invertible_element(algebra, rng)))
            except NotInvertible:
                continue
    for d in nilpotent_derivations(algebra, rng, max(2, count // 2)):
        push(exp_derivation(d))
    attempts = 0
    while len(pool) < count and attempts < 80:
        attempts += 1
        if len(pool) < 2:
            break
        a = pool[rng.randrange(len(pool))]
        b = pool[rng.randrange(len(pool))]
        push(AlgebraEndo.certify(algebra, a.matrix * b.matrix))
    return pool[:count] if len(pool) > count else pool

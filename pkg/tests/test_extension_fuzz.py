"""Seeded fuzz over random small algebras: every extension construction must
deliver its full postcondition bundle, whatever the base looks like."""

import random

from skewex._extension import poly_of_element
from skewex.explorer import random_basis_change, random_recipe
from skewex.laurent import laurent_quotient
from skewex.linalg import is_zero_vec, kernel
from skewex.maps import derivation_space
from skewex.ore import ore_quotient
from skewex.sampling import sample_automorphisms


def check_derivation_extension(algebra, d):
    result = ore_quotient(algebra, d)
    ext = result.algebra
    assert kernel(result.embed).dim == 0
    assert is_zero_vec(poly_of_element(ext, result.p, result.u))
    for a in range(algebra.dim):
        img = result.embed.column(a)
        comm = tuple(x - y for x, y in zip(ext.multiply(result.u, img),
                                           ext.multiply(img, result.u)))
        assert comm == result.embed.apply(d.matrix.apply(algebra.basis_element(a)))
    assert ext.dim + result.defect_dim == result.p.degree * algebra.dim
    return result


def check_automorphism_extension(algebra, phi):
    result = laurent_quotient(algebra, phi)
    ext = result.algebra
    assert kernel(result.embed).dim == 0
    assert is_zero_vec(poly_of_element(ext, result.p, result.u))
    assert ext.multiply(result.u, result.u_inverse) == ext.unit
    assert ext.multiply(result.u_inverse, result.u) == ext.unit
    for a in range(algebra.dim):
        img = result.embed.column(a)
        conj = ext.multiply(ext.multiply(result.u, img), result.u_inverse)
        assert conj == result.embed.apply(phi.matrix.apply(algebra.basis_element(a)))
    return result


def test_extensions_on_random_algebras():
    rng = random.Random(424242)
    derivation_runs = 0
    automorphism_runs = 0
    for _ in range(25):
        recipe = random_recipe(rng, max_dim=5)
        algebra = recipe.algebra
        if rng.random() < 0.5:
            algebra = random_basis_change(algebra, rng)
        for d in derivation_space(algebra)[:2]:
            check_derivation_extension(algebra, d)
            derivation_runs += 1
        for phi in sample_automorphisms(algebra, rng, 2):
            check_automorphism_extension(algebra, phi)
            automorphism_runs += 1
    assert automorphism_runs >= 25
    # not every random base has derivations, but several must
    assert derivation_runs >= 10

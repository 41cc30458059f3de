"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the library's fast paths: monomial
membership is a plain double loop over exponent tuples, intersections are
compared point-by-point over a finite exponent box that decides membership,
and Frobenius roots are recomputed by exponent ceilings or by brute-force
enumeration of small polynomials.
"""

import itertools
import random

import pytest

from charp import Ideal


@pytest.fixture
def rng():
    return random.Random(20240811)


# -- random objects ---------------------------------------------------------


def rand_poly(ring, rng, max_terms=3, max_total_deg=4, allow_zero=False):
    """Random polynomial with bounded total degree per term."""
    n = rng.randint(0 if allow_zero else 1, max_terms)
    out = ring.zero()
    for _ in range(n):
        degs = []
        remaining = max_total_deg
        for _v in ring.vars:
            e = rng.randint(0, remaining)
            degs.append(e)
            remaining -= e
        rng.shuffle(degs)
        coeff = rng.randint(1, ring.p - 1)
        out = out + ring.monomial(dict(zip(ring.vars, degs)), coeff)
    return out


def rand_ideal(ring, rng, max_gens=3, max_total_deg=4):
    gens = []
    while not gens:
        gens = [rand_poly(ring, rng, 3, max_total_deg) for _ in range(rng.randint(1, max_gens))]
        gens = [g for g in gens if not g.is_zero()]
    return Ideal(ring, gens)


def rand_monomial_ideal(ring, rng, max_gens=4, max_exp=6):
    """Proper nonzero monomial ideal."""
    gens = []
    while not gens:
        for _ in range(rng.randint(1, max_gens)):
            vec = [rng.randint(0, max_exp) for _ in ring.vars]
            if sum(vec) == 0:
                vec[rng.randrange(len(vec))] = rng.randint(1, max_exp)
            gens.append(ring.monomial(dict(zip(ring.vars, vec))))
    return Ideal(ring, gens)


# -- independent oracles ------------------------------------------------------


def monomial_gen_exps(I):
    """Generator exponent tuples straight off the stored generators."""
    return [tuple(int(e) for e in g.exps[0]) for g in I.generators]


def oracle_mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def oracle_mono_member(gen_exps, vec):
    """vec's monomial lies in the monomial ideal given by gen_exps."""
    return any(oracle_mono_divides(g, vec) for g in gen_exps)


def oracle_poly_member_monomial(gen_exps, poly):
    """Every term of poly must be divisible by some generator."""
    if poly.is_zero():
        return True
    return all(oracle_mono_member(gen_exps, tuple(int(e) for e in vec))
               for vec, _c in poly.terms())


def membership_box(*ideals, pad=1):
    """An exponent box that decides membership for all the given monomial
    ideals: one past the componentwise maximum generator exponent."""
    nvars = len(ideals[0].ring.vars)
    tops = [0] * nvars
    for I in ideals:
        for g in monomial_gen_exps(I):
            tops = [max(t, e) for t, e in zip(tops, g)]
    return itertools.product(*(range(t + pad + 1) for t in tops))


def oracle_ceiling_root(gen_exps, p):
    """Frobenius root of a monomial ideal: componentwise ceilings."""
    return sorted({tuple(-(-e // p) for e in g) for g in gen_exps})


def all_polys_up_to_degree(ring, max_total_deg):
    """Every polynomial supported on monomials of total degree <= bound."""
    monos = [m for m in itertools.product(*(range(max_total_deg + 1) for _ in ring.vars))
             if sum(m) <= max_total_deg]
    for coeffs in itertools.product(range(ring.p), repeat=len(monos)):
        yield ring.from_terms([(m, c) for m, c in zip(monos, coeffs) if c])


def assert_same_ideal_on_box(I, J, pad=1):
    """Monomial ideals agree pointwise over a deciding box."""
    gi = monomial_gen_exps(I)
    gj = monomial_gen_exps(J)
    for vec in membership_box(I, J, pad=pad):
        assert oracle_mono_member(gi, vec) == oracle_mono_member(gj, vec), vec

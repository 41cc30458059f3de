"""Frobenius powers, roots, and F-closure, with their oracles."""

import pytest

from charp import DepthExceeded, Ideal, Ring
from charp.frobenius import f_closure, frob_power, frob_root, is_f_closed

from conftest import (all_polys_up_to_degree, monomial_gen_exps,
                      oracle_ceiling_root, rand_ideal, rand_monomial_ideal)


@pytest.fixture
def R2():
    return Ring(2, ["X", "Y"])


def cusp_ring():
    plain = Ring(2, ["U", "V"])
    return Ring(2, ["U", "V"], quotient=[plain.parse("V^2+U^3")], reduced=True)


# -- frob_power -----------------------------------------------------------------


def test_frob_power_examples(R2):
    assert frob_power(Ideal(R2, ["X", "Y"]), 1) == Ideal(R2, ["X^2", "Y^2"])
    assert frob_power(Ideal(R2, ["X^2", "X*Y"]), 2) == Ideal(R2, ["X^8", "X^4*Y^4"])
    I = Ideal(R2, ["X^2+Y"])
    assert frob_power(I, 0) is I


def test_frob_power_composes(R2, rng):
    for _ in range(10):
        I = rand_ideal(R2, rng, 2, 3)
        for e1 in range(3):
            for e2 in range(3 - e1):
                assert frob_power(I, e1 + e2) == frob_power(frob_power(I, e1), e2)


def test_frob_power_in_quotient_ring_carries_relations():
    R = cusp_ring()
    I = Ideal(R, ["U"])
    P = frob_power(I, 1)
    # the relation itself must stay inside the preimage of the power
    assert P.contains(R.parse("V^2+U^3"))
    assert P.contains(R.parse("U^2"))
    assert not P.contains(R.parse("U"))


# -- frob_root -----------------------------------------------------------------------


def test_frob_root_ceiling_examples(R2):
    assert frob_root(Ideal(R2, ["X^2", "Y^2"])) == Ideal(R2, ["X", "Y"])
    assert frob_root(Ideal(R2, ["X^3*Y"])) == Ideal(R2, ["X^2*Y"])
    assert frob_root(Ideal(R2, ["X"])) == Ideal(R2, ["X"])


def test_frob_root_brute_force_oracle():
    """r^2 in (X) iff X divides r, over every polynomial of degree <= 3."""
    R = Ring(2, ["X", "Y"])
    I = Ideal(R, ["X"])
    root = frob_root(I, method="elimination")
    for r in all_polys_up_to_degree(R, 3):
        expect = I.contains(r.frobenius(1))
        assert root.contains(r) == expect


def test_frob_root_monomial_vs_elimination(rng):
    for p in (2, 3):
        R = Ring(p, ["X", "Y"])
        for _ in range(10):
            I = rand_monomial_ideal(R, rng, max_gens=3, max_exp=6)
            fast = frob_root(I, method="monomial")
            slow = frob_root(I, method="elimination")
            assert fast == slow
            ceilings = oracle_ceiling_root(monomial_gen_exps(I), p)
            want = sorted(v for v in ceilings
                          if not any(w != v and all(a <= b for a, b in zip(w, v))
                                     for w in ceilings))
            got = sorted(tuple(int(e) for e in row) for row in fast.minimal_monomial_exps())
            assert got == want


def test_kunz_roundtrip_random(rng):
    """In a polynomial ring the Frobenius is flat: root(power(I)) = I."""
    for ring in (Ring(2, ["X", "Y"]), Ring(3, ["X", "Y", "Z"])):
        for _ in range(10):
            I = rand_ideal(ring, rng, 3, 4)
            assert frob_root(frob_power(I, 1)) == I


def test_root_of_power_contains_and_reverse(R2, rng):
    for _ in range(10):
        I = rand_ideal(R2, rng, 2, 3)
        back = frob_power(frob_root(I), 1)
        assert I.contains_ideal(back)


def test_frob_root_in_quotient_ring():
    R = cusp_ring()
    P = frob_power(Ideal(R, ["U"]), 1)
    root = frob_root(P)
    assert root == Ideal(R, ["U", "V"])


# -- F-closure ---------------------------------------------------------------------


def test_f_closure_identity_in_regular_rings(R2, rng):
    for _ in range(8):
        I = rand_ideal(R2, rng, 2, 3)
        res = f_closure(I)
        assert res.closure == I
        assert res.stabilized_at == 0
        assert res.certified is False


def test_f_closure_cusp_counterexample():
    R = cusp_ring()
    res = f_closure(Ideal(R, ["U"]))
    assert res.closure == Ideal(R, ["U", "V"])
    assert res.stabilized_at == 1
    elems = {str(w["element"]): w["exponent"] for w in res.witnesses}
    assert elems == {"V": 1}
    # replay the witness: V^2 lies in (U)^[2] + J
    assert frob_power(Ideal(R, ["U"]), 1).contains(R.parse("V^2"))


def test_f_closure_zero_ideal_reduced():
    R = cusp_ring()
    res = f_closure(Ideal(R, []))
    assert res.closure == Ideal(R, [])
    assert res.stabilized_at == 0


def test_is_f_closed_examples(R2):
    assert is_f_closed(Ideal(R2, ["X^2"]))
    assert not is_f_closed(Ideal(cusp_ring(), ["U"]))
    assert is_f_closed(Ideal(cusp_ring(), ["1"]))


def test_f_closure_chain_properties(R2, rng):
    R = cusp_ring()
    res = f_closure(Ideal(R, ["U"]))
    for a, b in zip(res.steps, res.steps[1:]):
        assert b.contains_ideal(a)
    base = Ideal(R, ["U"])
    assert res.closure.contains_ideal(base)
    for g in res.closure.groebner():
        assert base.in_radical(g)


def test_f_closure_idempotent_under_stopping_rule():
    R = cusp_ring()
    first = f_closure(Ideal(R, ["U"]))
    second = f_closure(first.closure)
    assert second.closure == first.closure
    assert second.stabilized_at == 0


def test_f_closure_depth_exceeded_payload():
    R = cusp_ring()
    with pytest.raises(DepthExceeded) as exc:
        f_closure(Ideal(R, ["U"]), max_e=1, confirm=2)
    assert len(exc.value.partial) >= 1


# -- the exponent-notation identity --------------------------------------------------


def test_power_then_frobenius_equals_frobenius_then_power(rng):
    """(q^h)^[p^n] and (q^[p^n])^h have the same generating set, so the
    growth-condition exponent needs no parenthesisation."""
    R = Ring(3, ["X", "Y"])
    for _ in range(6):
        q = rand_monomial_ideal(R, rng, 3, 3)
        for h in (1, 2, 3):
            for n in (0, 1, 2):
                a = frob_power(q.power(h), n)
                b = frob_power(q, n).power(h)
                assert a.contains_ideal(b) and b.contains_ideal(a)
                assert a == b

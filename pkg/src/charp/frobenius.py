"""Frobenius powers, Frobenius roots, and F-closure for ideals.

The Frobenius power I^[p^e] is generated by the p^e-th powers of the
generators.  The Frobenius root is the preimage {r : r^p in I}, computed by
p-power elimination: over F_p, r(X)^p = r(X_1^p, ..., X_d^p), so adjoining
fresh variables with relations fresh_i - X_i^p and eliminating the X_i
leaves exactly the root, in plain and quotient rings alike.  Monomial
ideals take the exponent-ceiling shortcut, cross-checked in the tests.

The F-closure of b is the union over n of the n-fold roots of b^[p^n]; the
chain of those ideals ascends, and we stop after a configurable number of
consecutive repeats.  No effective global stabilisation bound is known to
us, so results carry certified=False.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


from .errors import DepthExceeded, InputError, NotContainingQuotient
from .ideals import DEFAULT_BUDGET, GroebnerBudget, Ideal, _fresh_names, _map_poly, _project_poly
from .orders import elim
from .poly import Ring


def frob_power(I: Ideal, e: int, budget: GroebnerBudget = DEFAULT_BUDGET) -> Ideal:
    """I^[p^e]: generator-wise Frobenius (quotient generators re-enter implicitly)."""
    if e < 0:
        raise ValueError("Frobenius power wants e >= 0")
    if e == 0:
        return I
    return Ideal(I.ring, [g.frobenius(e) for g in I.generators])


def frob_root(I: Ideal, budget: GroebnerBudget = DEFAULT_BUDGET,
              method: str = "auto") -> Ideal:
    """f^{-1}(I) = {r : r^p in I}, by p-power elimination.

    Monomial ideals use the exponent-ceiling shortcut instead; ``method``
    ("monomial" / "elimination") pins a route for cross-checking.
    """
    ring = I.ring
    if ring.is_quotient():
        for g in ring.quotient:
            if not I.contains(g, budget):
                raise NotContainingQuotient(
                    "ideal does not contain the quotient generators")
    if method == "monomial" or (method == "auto" and I.is_monomial()):
        if not I.is_monomial():
            raise InputError("monomial root shortcut on a non-monomial ideal")
        return _frob_root_monomial(I)
    p = ring.p
    d = ring.nvars
    fresh = _fresh_names(set(ring.vars), d, "r_")
    ext = Ring(p, ring.vars + tuple(fresh), elim(d))
    gens = [_map_poly(g, ext, list(range(d))) for g in I.effective_generators()]
    for i in range(d):
        gens.append(ext.var(fresh[i]) - ext.var(ring.vars[i]).frobenius(1))
    from .ideals import groebner_basis
    basis = groebner_basis(gens, ext, budget)
    keep = [g for g in basis if not g.exps[:, :d].any()]
    mapped = [_project_poly(g, ring, range(d, 2 * d)) for g in keep]
    return Ideal(ring, mapped)


def _frob_root_monomial(I: Ideal) -> Ideal:
    """Ceiling shortcut: the root of (X^a) is generated by X^ceil(a/p)."""
    p = I.ring.p
    mins = I.minimal_monomial_exps()
    gens = [I.ring.monomial(-(-row // p)) for row in mins]
    return Ideal(I.ring, gens)


@dataclass
class FClosureResult:
    closure: Ideal
    stabilized_at: int
    certified: bool
    steps: list
    witnesses: list = field(default_factory=list)

    def __post_init__(self):
        for a, b in zip(self.steps, self.steps[1:]):
            assert b.contains_ideal(a), "F-closure chain must ascend"


def f_closure(b: Ideal, max_e: int = 10, confirm: int = 2,
              budget: GroebnerBudget = DEFAULT_BUDGET) -> FClosureResult:
    """Union over n of the n-fold Frobenius root of b^[p^n].

    Iterates I_n = root^n(b^[p^n]), an ascending chain, and stops once
    `confirm` consecutive equalities are seen.  The stop is heuristic
    (certified=False).  Raises DepthExceeded with the partial chain when the
    chain is still moving at max_e.
    """
    if max_e < 1 or confirm < 1:
        raise ValueError("f_closure wants max_e >= 1 and confirm >= 1")
    steps = [b]
    current = b
    equal_run = 0
    stabilized_at: Optional[int] = None
    for n in range(1, max_e + 1):
        nxt = frob_power(b, n, budget)
        for _ in range(n):
            nxt = frob_root(nxt, budget)
        if not nxt.contains_ideal(current, budget):
            raise AssertionError("F-closure chain failed to ascend")
        steps.append(nxt)
        if nxt == current:
            if equal_run == 0:
                stabilized_at = n - 1
            equal_run += 1
            if equal_run >= confirm:
                return FClosureResult(current, stabilized_at, False, steps,
                                      _closure_witnesses(b, current, stabilized_at, budget))
        else:
            equal_run = 0
            stabilized_at = None
            current = nxt
    raise DepthExceeded(
        f"F-closure chain still moving after {max_e} steps", partial=steps)


def _closure_witnesses(b: Ideal, closure: Ideal, depth: int,
                       budget: GroebnerBudget) -> list:
    """For each closure generator outside b, the least n with g^{p^n} in b^[p^n]."""
    out = []
    for g in closure.groebner(budget=budget):
        if b.contains(g, budget):
            continue
        for n in range(1, max(depth, 1) + 1):
            if frob_power(b, n, budget).contains(g.frobenius(n), budget):
                out.append({"element": g, "exponent": n})
                break
    return out


def is_f_closed(I: Ideal, max_e: int = 10, confirm: int = 2,
                budget: GroebnerBudget = DEFAULT_BUDGET) -> bool:
    """Whether f_closure(I) = I under the same heuristic stopping rule."""
    return f_closure(I, max_e, confirm, budget).closure == I

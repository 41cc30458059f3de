"""The perfect closure made computable.

Elements of the perfect closure of F_p[X] are written as pairs (n, r)
standing for the unique p^n-th root of the polynomial r; arithmetic lifts
both operands to a common depth with the Frobenius and renormalises to
minimal depth.  Ideals of the perfect closure are represented losslessly by
their f-sequences: descending chains (a_n) of ideals with
frob_root(a_{n+1}) = a_n, where a_n collects the bodies of the ideal's
members of depth n.  Sequence terms are produced lazily and memoised.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import CharpError, InputError, NonMonomial
from .frobenius import f_closure, frob_power, frob_root
from .ideals import DEFAULT_BUDGET, GroebnerBudget, Ideal
from .poly import Polynomial, Ring


class PerfectionElement:
    """(depth, body) = body^(1/p^depth), kept at minimal depth."""

    __slots__ = ("depth", "body")

    def __init__(self, depth: int, body: Polynomial):
        if depth < 0:
            raise InputError("element depth must be >= 0")
        if body.ring.is_quotient():
            raise InputError("perfect-closure element arithmetic needs a polynomial ring")
        while depth > 0:
            root = body.try_p_root()
            if root is None:
                break
            body = root
            depth -= 1
        if body.is_zero():
            depth = 0
        self.depth = depth
        self.body = body

    @property
    def ring(self) -> Ring:
        return self.body.ring

    def lift(self, depth: int) -> Polynomial:
        """The body seen at a (deeper) depth: body^(p^(depth - self.depth))."""
        if depth < self.depth:
            raise InputError("cannot lift to a shallower depth")
        return self.body.frobenius(depth - self.depth)

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        m = max(self.depth, other.depth)
        return PerfectionElement(m, self.lift(m) + other.lift(m))

    __radd__ = __add__

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        m = max(self.depth, other.depth)
        return PerfectionElement(m, self.lift(m) * other.lift(m))

    __rmul__ = __mul__

    def __neg__(self):
        return PerfectionElement(self.depth, -self.body)

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def power(self, m: int) -> "PerfectionElement":
        if m < 0:
            raise InputError("negative power")
        return PerfectionElement(self.depth, self.body.power(m))

    def _coerced(self, other):
        if isinstance(other, PerfectionElement):
            if other.ring != self.ring:
                raise InputError("mixed-ring element arithmetic")
            return other
        if isinstance(other, (int, Polynomial)):
            return PerfectionElement(0, self.body.ring.coerce(other))
        return None

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def __eq__(self, other):
        if not isinstance(other, PerfectionElement):
            return NotImplemented
        return self.depth == other.depth and self.body == other.body

    def __hash__(self):
        return hash((self.depth, self.body))

    def __str__(self):
        if self.depth == 0:
            return str(self.body)
        return f"({self.body})^(1/{self.ring.p ** self.depth})"

    def __repr__(self):
        return f"<{self}>"


@dataclass
class VerifyResult:
    ok: bool
    failed_at: Optional[int] = None
    reason: str = ""
    expected: Optional[Ideal] = None
    got: Optional[Ideal] = None

    def __bool__(self):
        return self.ok


class FSequence:
    """Lazily evaluated, memoised sequence n -> Ideal subject to the
    Frobenius-root law; the data of an ideal of the perfect closure."""

    def __init__(self, ring: Ring, kind: str, term_fn: Callable[[int], Ideal],
                 describe: str = ""):
        self.ring = ring
        self.kind = kind
        self.describe = describe or kind
        self.meta: dict = {}
        self._term_fn = term_fn
        self._memo: dict[int, Ideal] = {}
        self._lock = threading.Lock()

    def term(self, n: int) -> Ideal:
        if n < 0:
            raise InputError("sequence index must be >= 0")
        with self._lock:
            got = self._memo.get(n)
        if got is not None:
            return got
        value = self._term_fn(n)
        with self._lock:
            return self._memo.setdefault(n, value)

    def __getitem__(self, n: int) -> Ideal:
        return self.term(n)

    def __repr__(self):
        return f"FSequence[{self.describe}]"

    # -- constructors ---------------------------------------------------------

    @classmethod
    def frobenius_powers(cls, a: Ideal, budget: GroebnerBudget = DEFAULT_BUDGET) -> "FSequence":
        """n -> a^[p^n]; an f-sequence whenever those powers are F-closed
        (always in polynomial rings, where the Frobenius is flat)."""
        return cls(a.ring, "frobenius-powers", lambda n: frob_power(a, n, budget),
                   f"frobenius-powers of {a!r}")

    @classmethod
    def canonical(cls, b: Ideal, max_e: int = 10, confirm: int = 2,
                  budget: GroebnerBudget = DEFAULT_BUDGET) -> "FSequence":
        """n -> F-closure of b^[p^n] (the canonical sequence attached to b)."""
        def fn(n):
            return f_closure(frob_power(b, n, budget), max_e, confirm, budget).closure
        return cls(b.ring, "canonical", fn, f"canonical sequence of {b!r}")

    @classmethod
    def constant_prime(cls, p: Ideal) -> "FSequence":
        """The constant sequence of a prime ideal (primality is the caller's
        assertion; verify() will reject non-primes that break the root law)."""
        return cls(p.ring, "constant-prime", lambda n: p, f"constant prime {p!r}")

    @classmethod
    def finitely_generated(cls, gens: Ideal, k: int = 0, max_e: int = 10,
                           confirm: int = 2,
                           budget: GroebnerBudget = DEFAULT_BUDGET) -> "FSequence":
        """The sequence of the ideal generated by the depth-k roots of gens:
        term(k+n) is the F-closure of gens^[p^n], and terms below k are the
        unique downward extension by iterated Frobenius roots."""
        if k < 0:
            raise InputError("depth k must be >= 0")
        seq = cls(gens.ring, "fg-perfection", None,
                  f"perfection ideal of {gens!r} at depth {k}")
        seq.meta = {"gens": gens, "k": k}

        def fn(n):
            if n >= k:
                return f_closure(frob_power(gens, n - k, budget), max_e, confirm, budget).closure
            down = seq.term(k)
            for _ in range(k - n):
                down = frob_root(down, budget)
            return down

        seq._term_fn = fn
        return seq

    @classmethod
    def from_table(cls, terms: Sequence[Ideal],
                   extend: Optional[Callable[[int], Ideal]] = None) -> "FSequence":
        """Explicit leading terms, mainly for negative controls in tests."""
        if not terms:
            raise InputError("table sequence needs at least one term")
        ring = terms[0].ring
        table = list(terms)

        def fn(n):
            if n < len(table):
                return table[n]
            if extend is None:
                raise InputError(f"table sequence has no term {n}")
            return extend(n)

        return cls(ring, "table", fn, f"table of {len(table)} terms")

    @classmethod
    def intersection(cls, seqs: Sequence["FSequence"],
                     budget: GroebnerBudget = DEFAULT_BUDGET) -> "FSequence":
        seqs = list(seqs)
        if not seqs:
            raise InputError("intersection of no sequences")
        ring = seqs[0].ring

        def fn(n):
            acc = seqs[0].term(n)
            for s in seqs[1:]:
                acc = acc.intersect(s.term(n), budget)
            return acc

        return cls(ring, "intersection", fn,
                   "intersection of " + ", ".join(s.describe for s in seqs))

    @classmethod
    def mapped(cls, inner: "FSequence", fn: Callable[[Ideal], Ideal],
               kind: str, describe: str = "") -> "FSequence":
        """Term-wise image of another sequence (used for localise-contract)."""
        return cls(inner.ring, kind, lambda n: fn(inner.term(n)),
                   describe or f"{kind} of {inner.describe}")

    @classmethod
    def radical_of(cls, inner: "FSequence") -> "FSequence":
        """Term-wise monomial radical; an f-sequence of a radical ideal is
        constant, and that constancy is checked across the queried depths."""
        state = {}

        def fn(n):
            t = inner.term(n)
            if not t.is_monomial():
                raise NonMonomial("radical sequence needs monomial terms")
            rad = t.monomial_radical()
            ref = state.get("ref")
            if ref is None:
                state["ref"] = rad
            elif ref != rad:
                raise CharpError(
                    f"radical sequence is not constant: term {n} gives {rad!r}, "
                    f"earlier terms gave {ref!r}")
            return rad

        return cls(inner.ring, "radical", fn, f"radical of {inner.describe}")

    # -- verification -----------------------------------------------------------

    def verify(self, depth: int, budget: GroebnerBudget = DEFAULT_BUDGET) -> VerifyResult:
        """Check the f-sequence law to the given depth.

        For n = 0..depth-1: frob_root(term(n+1)) must equal term(n), the
        chain must descend, and term(n)^[p] must land in term(n+1).  Returns
        the first failing index with the mismatch as a witness.
        """
        if depth < 1:
            raise InputError("verification depth must be >= 1")
        for n in range(depth):
            t0 = self.term(n)
            t1 = self.term(n + 1)
            root = frob_root(t1, budget)
            if root != t0:
                return VerifyResult(False, n, "frobenius root mismatch",
                                    expected=t0, got=root)
            if not t0.contains_ideal(t1, budget):
                return VerifyResult(False, n, "sequence not descending",
                                    expected=t0, got=t1)
            if not t1.contains_ideal(frob_power(t0, 1, budget), budget):
                return VerifyResult(False, n, "term^[p] escapes the next term",
                                    expected=t1, got=frob_power(t0, 1, budget))
        return VerifyResult(True)


class PerfectionIdeal:
    """An ideal of the perfect closure, held as its f-sequence."""

    __slots__ = ("seq",)

    def __init__(self, seq: FSequence):
        self.seq = seq

    @classmethod
    def finitely_generated(cls, gens: Ideal, k: int = 0,
                           budget: GroebnerBudget = DEFAULT_BUDGET) -> "PerfectionIdeal":
        """The ideal generated by the p^k-th roots of the given generators."""
        return cls(FSequence.finitely_generated(gens, k, budget=budget))

    @property
    def ring(self) -> Ring:
        return self.seq.ring

    def term(self, n: int) -> Ideal:
        """The ideal of depth-n member bodies."""
        return self.seq.term(n)

    def member(self, e: PerfectionElement, budget: GroebnerBudget = DEFAULT_BUDGET) -> bool:
        """Membership of body^(1/p^depth): body must lie in term(depth).

        Element bodies always live in a polynomial ring; over a quotient
        the body is read as a preimage representative.
        """
        if e.ring != self.ring.cover() and e.ring != self.ring:
            raise InputError("element from a different ring")
        body = e.body if e.ring == self.ring else e.body._rebind(self.ring)
        return self.term(e.depth).contains(body, budget)

    def __repr__(self):
        return f"PerfectionIdeal[{self.seq.describe}]"

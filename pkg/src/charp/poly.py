"""Sparse multivariate polynomials over a prime field.

A Ring fixes the characteristic p, the ordered variable names, the active
monomial order and (optionally) quotient generators J, in which case the
ring denotes F_p[vars]/J and all ideal-level code works with full preimages.

Polynomials are immutable.  Term data lives in the parallel int64 arrays
described in _kernels.py, always sorted strictly descending under the
ring's order.  Exponents are checked against EXP_LIMIT so that Frobenius
powers fail loudly instead of wrapping around.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import _kernels as K
from .errors import ExponentOverflow, InputError, NotPPower
from .field import PrimeField
from .orders import GREVLEX, MonomialOrder

EXP_LIMIT = 2**56

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _check_exps(exps: np.ndarray) -> None:
    if exps.size and int(exps.max()) > EXP_LIMIT:
        raise ExponentOverflow(f"exponent exceeds {EXP_LIMIT}")


class Ring:
    """F_p[vars] with a fixed monomial order, optionally modulo quotient generators."""

    __slots__ = ("field", "vars", "order", "quotient", "reduced_assertion",
                 "_key_matrix", "_var_index", "_zero", "_one")

    def __init__(self, p: int, vars: Sequence[str], order: MonomialOrder = GREVLEX,
                 quotient: Sequence["Polynomial"] = (), reduced: Optional[bool] = None):
        self.field = PrimeField(p)
        vars = tuple(vars)
        if not vars:
            raise InputError("a ring needs at least one variable")
        if len(set(vars)) != len(vars):
            raise InputError(f"duplicate variable names in {vars}")
        for v in vars:
            if not _VAR_RE.fullmatch(v):
                raise InputError(f"bad variable name {v!r}")
        if len(vars) > 64:
            raise InputError("at most 64 variables are supported")
        self.vars = vars
        self.order = order
        self._key_matrix = order.key_matrix(len(vars))
        self._var_index = {v: i for i, v in enumerate(vars)}
        self.quotient: tuple = ()
        self.reduced_assertion = reduced
        self._zero = None
        self._one = None
        if quotient:
            gens = tuple(g._rebind(self) for g in quotient if not g.is_zero())
            self.quotient = gens

    # -- basic properties ---------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_quotient(self) -> bool:
        return bool(self.quotient)

    def cover(self) -> "Ring":
        """The covering polynomial ring (self if there is no quotient)."""
        if not self.quotient:
            return self
        return Ring(self.p, self.vars, self.order)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Ring):
            return NotImplemented
        return (self.p == other.p and self.vars == other.vars
                and self.order == other.order
                and _term_data(self.quotient) == _term_data(other.quotient))

    def __hash__(self):
        return hash((self.p, self.vars, self.order, _term_data(self.quotient)))

    def __repr__(self):
        base = f"F_{self.p}[{', '.join(self.vars)}]"
        if self.quotient:
            base += " / (" + ", ".join(str(g) for g in self.quotient) + ")"
        return base

    # -- construction -------------------------------------------------------

    def keys_of(self, exps: np.ndarray) -> np.ndarray:
        return exps @ self._key_matrix

    def zero(self) -> "Polynomial":
        if self._zero is None:
            d = self.nvars
            self._zero = Polynomial(self, np.empty((0, d), np.int64),
                                    np.empty(0, np.int64),
                                    np.empty((0, self._key_matrix.shape[1]), np.int64))
        return self._zero

    def constant(self, c: int) -> "Polynomial":
        c = self.field.reduce(c)
        if c == 0:
            return self.zero()
        exps = np.zeros((1, self.nvars), np.int64)
        return Polynomial(self, exps, np.array([c], np.int64), self.keys_of(exps))

    def one(self) -> "Polynomial":
        if self._one is None:
            self._one = self.constant(1)
        return self._one

    def var(self, name: str) -> "Polynomial":
        try:
            i = self._var_index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r} in {self!r}") from None
        return self._var_poly(i)

    def _var_poly(self, i: int) -> "Polynomial":
        exps = np.zeros((1, self.nvars), np.int64)
        exps[0, i] = 1
        return Polynomial(self, exps, np.array([1], np.int64), self.keys_of(exps))

    def gens(self) -> tuple:
        return tuple(self._var_poly(i) for i in range(self.nvars))

    def monomial(self, exps, coeff: int = 1) -> "Polynomial":
        """Single term; exps is a var->exponent mapping or an exponent vector."""
        vec = np.zeros(self.nvars, np.int64)
        if isinstance(exps, Mapping):
            for v, e in exps.items():
                if v not in self._var_index:
                    raise InputError(f"unknown variable {v!r}")
                if e < 0:
                    raise InputError("negative exponent")
                vec[self._var_index[v]] = e
        else:
            arr = np.asarray(exps, dtype=np.int64)
            if arr.shape != (self.nvars,):
                raise InputError(f"exponent vector must have length {self.nvars}")
            if arr.size and arr.min() < 0:
                raise InputError("negative exponent")
            vec[:] = arr
        c = self.field.reduce(coeff)
        if c == 0:
            return self.zero()
        _check_exps(vec)
        exps2 = vec.reshape(1, -1)
        return Polynomial(self, exps2, np.array([c], np.int64), self.keys_of(exps2))

    def from_terms(self, terms: Iterable[tuple]) -> "Polynomial":
        """Build from (exponent-vector, coefficient) pairs; merges duplicates."""
        rows = []
        coeffs = []
        for vec, c in terms:
            arr = np.asarray(vec, dtype=np.int64)
            if arr.shape != (self.nvars,):
                raise InputError(f"exponent vector must have length {self.nvars}")
            rows.append(arr)
            coeffs.append(self.field.reduce(c))
        if not rows:
            return self.zero()
        exps = np.stack(rows)
        if exps.min() < 0:
            raise InputError("negative exponent")
        _check_exps(exps)
        ke, ee, ce = K.combine(self.keys_of(exps), exps, np.array(coeffs, np.int64), self.p)
        return Polynomial(self, ee, ce, ke)

    def parse(self, text: str) -> "Polynomial":
        return _parse_poly(self, text)

    def coerce(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise InputError("polynomial belongs to a different ring")
            return x if x.ring is self else x._rebind(self)
        if isinstance(x, int):
            return self.constant(x)
        if isinstance(x, str):
            return self.parse(x)
        raise InputError(f"cannot coerce {x!r} into {self!r}")


def _term_data(polys) -> tuple:
    return tuple((p.exps.tobytes(), p.coeffs.tobytes()) for p in polys)


class Polynomial:
    """Immutable sparse polynomial; terms sorted descending under the ring order."""

    __slots__ = ("ring", "exps", "coeffs", "keys", "_hash")

    def __init__(self, ring: Ring, exps: np.ndarray, coeffs: np.ndarray, keys: np.ndarray):
        self.ring = ring
        self.exps = exps
        self.coeffs = coeffs
        self.keys = keys
        self._hash = None

    def _rebind(self, ring: Ring) -> "Polynomial":
        """Same term data viewed in a compatible ring (same p and variables)."""
        if ring.p != self.ring.p or ring.vars != self.ring.vars:
            raise InputError("cannot rebind polynomial across different variable sets")
        if ring.order == self.ring.order:
            return Polynomial(ring, self.exps, self.coeffs, self.keys)
        ke, ee, ce = K.combine(ring.keys_of(self.exps), self.exps, self.coeffs, ring.p)
        return Polynomial(ring, ee, ce, ke)

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def is_one(self) -> bool:
        return (self.coeffs.shape[0] == 1 and self.coeffs[0] == 1
                and not self.exps[0].any())

    def is_constant(self) -> bool:
        return self.coeffs.shape[0] == 0 or (self.coeffs.shape[0] == 1 and not self.exps[0].any())

    def is_monomial(self) -> bool:
        """Single-term polynomial (any coefficient)."""
        return self.coeffs.shape[0] == 1

    def nterms(self) -> int:
        return self.coeffs.shape[0]

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return int(self.exps.sum(axis=1).max())

    def lead_exp(self) -> np.ndarray:
        if self.is_zero():
            raise ValueError("zero polynomial has no lead term")
        return self.exps[0]

    def lead_coeff(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no lead term")
        return int(self.coeffs[0])

    def support_vars(self) -> tuple:
        """Names of variables that occur with positive exponent."""
        if self.is_zero():
            return ()
        used = self.exps.max(axis=0) > 0
        return tuple(v for v, u in zip(self.ring.vars, used) if u)

    def terms(self):
        """Iterate (exponent-vector, coefficient) pairs, descending."""
        for i in range(self.coeffs.shape[0]):
            yield self.exps[i], int(self.coeffs[i])

    # -- arithmetic ----------------------------------------------------------

    def _coerced(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError("mixed-ring arithmetic")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        ke, ee, ce = K.axpy(self.keys, self.exps, self.coeffs,
                            other.keys, other.exps, other.coeffs, 1, self.ring.p)
        return Polynomial(self.ring, ee, ce, ke)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        ke, ee, ce = K.axpy(self.keys, self.exps, self.coeffs,
                            other.keys, other.exps, other.coeffs,
                            self.ring.p - 1, self.ring.p)
        return Polynomial(self.ring, ee, ce, ke)

    def __rsub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return self.ring.zero() - self

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        ke, ee, ce = K.mul(self.keys, self.exps, self.coeffs,
                           other.keys, other.exps, other.coeffs, self.ring.p)
        _check_exps(ee)
        return Polynomial(self.ring, ee, ce, ke)

    __rmul__ = __mul__

    def __pow__(self, m: int):
        return self.power(m)

    def power(self, m: int) -> "Polynomial":
        """g**m by binary exponentiation; m >= 0."""
        if m < 0:
            raise InputError("negative polynomial power")
        result = self.ring.one()
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def frobenius(self, e: int) -> "Polynomial":
        """g**(p**e) by scaling every exponent; coefficients are fixed by Fermat."""
        if e < 0:
            raise InputError("negative Frobenius exponent")
        if e == 0 or self.is_zero():
            return self
        scale = self.ring.p ** e
        if self.exps.size and int(self.exps.max()) * scale > EXP_LIMIT:
            raise ExponentOverflow(f"Frobenius scaling by p^{e} exceeds {EXP_LIMIT}")
        return Polynomial(self.ring, self.exps * scale, self.coeffs, self.keys * scale)

    def try_p_root(self) -> Optional["Polynomial"]:
        """The unique p-th root, or None when some exponent is not divisible by p."""
        p = self.ring.p
        if self.is_zero():
            return self
        if (self.exps % p).any():
            return None
        return Polynomial(self.ring, self.exps // p, self.coeffs, self.keys // p)

    def p_root(self) -> "Polynomial":
        root = self.try_p_root()
        if root is None:
            raise NotPPower(f"{self} is not a p-th power (p={self.ring.p})")
        return root

    def substitute(self, assignments: Mapping[str, "Polynomial | int"]) -> "Polynomial":
        """Simultaneous substitution; variables not listed map to themselves."""
        ring = self.ring
        values = {}
        for v, val in assignments.items():
            if v not in ring._var_index:
                raise InputError(f"unknown variable {v!r}")
            values[ring._var_index[v]] = ring.coerce(val)
        out = ring.zero()
        for vec, c in self.terms():
            term = ring.constant(c)
            plain = np.array(vec)
            for i, val in values.items():
                e = int(vec[i])
                if e:
                    plain[i] = 0
                    term = term * val.power(e)
            if plain.any():
                term = term * ring.monomial(plain)
            out = out + term
        return out

    def divmod_by(self, g: "Polynomial") -> tuple:
        """(q, r) with self = q*g + r and no term of r divisible by lt(g)."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if g.ring != self.ring:
            raise InputError("mixed-ring division")
        ring = self.ring
        p = ring.p
        inv_lc = ring.field.inv(g.lead_coeff())
        glead = g.exps[0]
        keys, exps, coeffs = self.keys, self.exps, self.coeffs
        q_rows, q_coeffs = [], []
        r = 0
        while r < coeffs.shape[0]:
            if np.all(glead <= exps[r]):
                shift_e = exps[r] - glead
                shift_k = keys[r] - g.keys[0]
                qc = (int(coeffs[r]) * inv_lc) % p
                q_rows.append(shift_e.copy())
                q_coeffs.append(qc)
                tk, te, tc = K.axpy(keys[r:], exps[r:], coeffs[r:],
                                    g.keys + shift_k, g.exps + shift_e, g.coeffs,
                                    (p - qc) % p, p)
                keys = np.concatenate((keys[:r], tk))
                exps = np.concatenate((exps[:r], te))
                coeffs = np.concatenate((coeffs[:r], tc))
            else:
                r += 1
        rem = Polynomial(ring, exps, coeffs, keys)
        if q_rows:
            quot = ring.from_terms(zip(q_rows, q_coeffs))
        else:
            quot = ring.zero()
        return quot, rem

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, int):
                return self == self.ring.constant(other)
            return NotImplemented
        return (self.ring == other.ring
                and self.exps.shape == other.exps.shape
                and np.array_equal(self.exps, other.exps)
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.p, self.ring.vars,
                               self.exps.tobytes(), self.coeffs.tobytes()))
        return self._hash

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for vec, c in self.terms():
            factors = []
            for v, e in zip(self.ring.vars, vec):
                e = int(e)
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} over {self.ring!r}>"


# ---------------------------------------------------------------------------
# text grammar: terms joined by +/-, a term is coeff, coeff*mono, or mono,
# a mono is VAR, VAR^k, or products joined by *; coefficients reduced mod p.
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = len(text) - len(stripped) + 1
            raise InputError(f"unexpected character {stripped[0]!r}", f"col {col}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


def _parse_poly(ring: Ring, text: str) -> Polynomial:
    tokens = _tokenize(text)
    if not tokens:
        raise InputError("empty polynomial", "col 1")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text) + 1)

    def parse_factor():
        nonlocal pos
        kind, value, col = peek()
        if kind == "int":
            pos += 1
            return ring.constant(int(value))
        if kind == "var":
            pos += 1
            if value not in ring._var_index:
                raise InputError(f"unknown variable {value!r}", f"col {col}")
            exp = 1
            k, v, c = peek()
            if k == "op" and v == "^":
                pos += 1
                k, v, c = peek()
                if k != "int":
                    raise InputError("expected integer exponent after '^'", f"col {c}")
                pos += 1
                exp = int(v)
                if exp > EXP_LIMIT:
                    raise ExponentOverflow(f"exponent {exp} exceeds {EXP_LIMIT}")
            return ring.monomial({value: exp})
        if kind == "op" and value == "(":
            pos += 1
            inner = parse_sum()
            k, v, c = peek()
            if not (k == "op" and v == ")"):
                raise InputError("expected ')'", f"col {c}")
            pos += 1
            return inner
        raise InputError("expected a coefficient, variable or '('", f"col {col}")

    def parse_term():
        nonlocal pos
        acc = parse_factor()
        while True:
            k, v, _ = peek()
            if k == "op" and v == "*":
                pos += 1
                acc = acc * parse_factor()
            else:
                return acc

    def parse_sum():
        nonlocal pos
        k, v, _ = peek()
        negate = False
        if k == "op" and v in "+-":
            negate = v == "-"
            pos += 1
        acc = parse_term()
        if negate:
            acc = -acc
        while True:
            k, v, c = peek()
            if k == "op" and v in "+-":
                pos += 1
                term = parse_term()
                acc = acc - term if v == "-" else acc + term
            else:
                return acc

    result = parse_sum()
    k, v, c = peek()
    if k is not None:
        raise InputError(f"unexpected token {v!r}", f"col {c}")
    return result

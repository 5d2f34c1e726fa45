"""Exact arithmetic over prime fields: field elements, monomial orders and
sparse multivariate polynomials with positive integer variable weights.

A :class:`PolynomialRing` is the session context.  It carries the modulus,
the variable names and weights and the monomial order; every
:class:`Polynomial` points back to the ring it lives in, so there is no
global state.
"""

from dataclasses import dataclass, field
from functools import total_ordering
import re

__all__ = [
    "StructuralError", "InhomogeneousError", "PrimeFieldElement",
    "MonomialOrder", "Monomial", "PolynomialRing", "Polynomial",
    "poly_add", "poly_mul", "homogeneous_degree", "is_prime",
    "PolynomialSyntaxError",
]


class StructuralError(ValueError):
    """Operands do not live in the same ring (arity, modulus or order)."""


class InhomogeneousError(ValueError):
    """A graded operation received an inhomogeneous element."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, text="", column=0):
        super().__init__(f"{message} at column {column + 1}: {text!r}")
        self.column = column
        self.text = text


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@total_ordering
class PrimeFieldElement:
    """An element of F_p stored as its residue in [0, p)."""

    __slots__ = ("value", "modulus")

    def __init__(self, value, modulus):
        self.modulus = modulus
        self.value = value % modulus

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise StructuralError("modulus mismatch")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value + o, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.modulus)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value * o, self.modulus)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.modulus)
        return PrimeFieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElement(o, self.modulus).inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return PrimeFieldElement(pow(self.value, n, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __lt__(self, other):
        return self.value < self._coerce(other)

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


ORDER_KINDS = ("grevlex", "grlex")


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted graded order; ``grevlex`` or ``grlex`` break degree ties.

    Variables are ranked by position: the first variable is the largest.
    """

    kind: str
    weights: tuple

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if any(int(w) <= 0 for w in self.weights):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def degree(self, exps):
        return sum(e * w for e, w in zip(exps, self.weights))

    def key(self, exps):
        d = sum(e * w for e, w in zip(exps, self.weights))
        if self.kind == "grevlex":
            return (d, tuple(-e for e in reversed(exps)))
        return (d, exps)


@total_ordering
class Monomial:
    """Exponent vector with its cached weighted degree."""

    __slots__ = ("exponents", "degree", "_order")

    def __init__(self, exponents, order):
        self.exponents = tuple(exponents)
        self._order = order
        self.degree = order.degree(self.exponents)

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)), self._order)

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exponents == other.exponents

    def __lt__(self, other):
        return self._order.key(self.exponents) < self._order.key(other.exponents)

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"Monomial{self.exponents}"


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class PolynomialRing:
    """The ambient weighted polynomial ring ``F_p[x_1..x_n]``."""

    names: tuple
    weights: tuple = None
    modulus: int = 101
    order_kind: str = "grevlex"
    _keys: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"bad variable name {n!r}")
        weights = self.weights if self.weights is not None else (1,) * len(names)
        if len(weights) != len(names):
            raise ValueError("one weight per variable")
        if not is_prime(self.modulus) or self.modulus == 2 or self.modulus > 2**31:
            raise ValueError("modulus must be an odd prime <= 2^31")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))
        object.__setattr__(self, "order", MonomialOrder(self.order_kind, self.weights))

    @property
    def nvars(self):
        return len(self.names)

    def mono_key(self, exps):
        k = self._keys.get(exps)
        if k is None:
            k = self.order.key(exps)
            self._keys[exps] = k
        return k

    def degree(self, exps):
        w = self.weights
        return sum(e * w[i] for i, e in enumerate(exps))

    # constructors -------------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c %= self.modulus
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gens(self):
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(Polynomial(self, {tuple(e): 1}))
        return out

    def var(self, name):
        return self.gens()[self.names.index(name)]

    def monomial(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): coeff % self.modulus} if coeff % self.modulus else {})

    def from_dict(self, terms):
        p = self.modulus
        return Polynomial(self, {tuple(e): c % p for e, c in terms.items() if c % p})

    def parse(self, text):
        return _Parser(self, text).parse()

    def monomials_of_degree(self, d):
        """All exponent vectors of weighted degree ``d``, descending in the order."""
        key = ("mons", d)
        got = self._keys.get(key)
        if got is None:
            got = []
            w = self.weights
            n = self.nvars

            def rec(i, left, acc):
                if i == n - 1:
                    if left % w[i] == 0:
                        got.append(tuple(acc + [left // w[i]]))
                    return
                for e in range(left // w[i] + 1):
                    rec(i + 1, left - e * w[i], acc + [e])

            if d == 0:
                got.append((0,) * n)
            elif d > 0 and n > 0:
                rec(0, d, [])
            got.sort(key=self.mono_key, reverse=True)
            got = tuple(got)
            self._keys[key] = got
        return got

    def __repr__(self):
        ws = "" if all(w == 1 for w in self.weights) else f", weights={self.weights}"
        return f"F_{self.modulus}[{','.join(self.names)}]({self.order_kind}{ws})"


class Polynomial:
    """Sparse polynomial; terms are kept in a dict ``exponents -> residue``.

    Instances are treated as immutable.  ``terms`` gives the canonical
    strictly descending list of ``(coefficient, exponents)``.
    """

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self._d = terms
        self._hash = None

    @property
    def terms(self):
        key = self.ring.mono_key
        return [(self._d[e], e) for e in sorted(self._d, key=key, reverse=True)]

    def as_dict(self):
        return dict(self._d)

    def is_zero(self):
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def _check(self, other):
        if isinstance(other, int):
            return self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            r1, r2 = self.ring, other.ring
            if r1.nvars != r2.nvars:
                raise StructuralError(f"arity mismatch: {r1.nvars} vs {r2.nvars}")
            if r1.modulus != r2.modulus:
                raise StructuralError(f"modulus mismatch: {r1.modulus} vs {r2.modulus}")
            raise StructuralError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        d = dict(self._d)
        for e, c in other._d.items():
            v = (d.get(e, 0) + c) % p
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.modulus
        return Polynomial(self.ring, {e: p - c for e, c in self._d.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        d = {}
        for e1, c1 in self._d.items():
            for e2, c2 in other._d.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = (d.get(e, 0) + c1 * c2) % p
        return Polynomial(self.ring, {e: c for e, c in d.items() if c})

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        p = self.ring.modulus
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c % p for e, v in self._d.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def leading_term(self):
        if not self._d:
            raise StructuralError("zero polynomial has no leading term")
        e = max(self._d, key=self.ring.mono_key)
        return self._d[e], e

    def leading_monomial(self):
        return Monomial(self.leading_term()[1], self.ring.order)

    def homogeneous_degree(self):
        """Weighted degree if all terms agree, else the string ``"inhomogeneous"``."""
        if not self._d:
            raise StructuralError("the zero polynomial has no degree")
        degs = {self.ring.degree(e) for e in self._d}
        if len(degs) == 1:
            return degs.pop()
        return "inhomogeneous"

    def is_constant(self):
        return all(not any(e) for e in self._d)

    def constant_coefficient(self):
        return self._d.get((0,) * self.ring.nvars, 0)

    def is_canonical(self):
        """Validator: residues in range, no zeros, right arity."""
        p, n = self.ring.modulus, self.ring.nvars
        return all(0 < c < p and len(e) == n and min(e, default=0) >= 0
                   for e, c in self._d.items())

    def to_str(self, symmetric=True):
        return format_poly(self.ring, self._d, symmetric)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def poly_add(f, g):
    return f + g


def poly_mul(f, g):
    return f * g


def homogeneous_degree(f):
    return f.homogeneous_degree()


def format_poly(ring, terms, symmetric=True):
    if not terms:
        return "0"
    p = ring.modulus
    pieces = []
    for e in sorted(terms, key=ring.mono_key, reverse=True):
        c = terms[e]
        neg = symmetric and c > p // 2
        a = p - c if neg else c
        factors = []
        for name, k in zip(ring.names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if a != 1 or not factors:
            factors.insert(0, str(a))
        pieces.append(("-" if neg else "+", "*".join(factors)))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)")


class _Parser:
    """Recursive descent for ``expr := term (('+'|'-') term)*`` with
    ``term := factor ('*' factor)*`` and ``factor := atom ('^' int)?``
    where an atom is an integer, a variable or a parenthesised expression."""

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            self.toks.append((m.lastindex, m.group(), pos))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def _err(self, msg):
        raise PolynomialSyntaxError(msg, self.text, self._peek()[2])

    def parse(self):
        if not self.toks:
            self._err("empty polynomial")
        out = self._expr()
        if self.i != len(self.toks):
            self._err("unexpected token")
        return out

    def _expr(self):
        sign = 1
        kind, val, _ = self._peek()
        if kind == 3 and val in "+-":
            sign = -1 if val == "-" else 1
            self.i += 1
        acc = self._term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self._peek()
            if kind == 3 and val in "+-":
                self.i += 1
                t = self._term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def _term(self):
        acc = self._factor()
        while True:
            kind, val, _ = self._peek()
            if kind == 3 and val == "*":
                self.i += 1
                acc = acc * self._factor()
            else:
                return acc

    def _factor(self):
        kind, val, _ = self._peek()
        if kind == 1:
            self.i += 1
            base = self.ring.constant(int(val))
        elif kind == 2:
            if val not in self.ring.names:
                self._err(f"unknown variable {val!r}")
            self.i += 1
            base = self.ring.var(val)
        elif kind == 3 and val == "(":
            self.i += 1
            base = self._expr()
            kind, val, _ = self._peek()
            if not (kind == 3 and val == ")"):
                self._err("expected ')'")
            self.i += 1
        elif kind == 3 and val == "-":
            self.i += 1
            return -self._factor()
        else:
            self._err("expected a number, variable or '('")
        kind, val, _ = self._peek()
        if kind == 3 and val == "^":
            self.i += 1
            kind, val, _ = self._peek()
            if kind != 1:
                self._err("expected an exponent")
            self.i += 1
            base = base ** int(val)
        return base

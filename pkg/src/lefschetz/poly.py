"""Sparse multivariate polynomials over a FieldSpec, plus linear forms and
generators kept in factored form.

Monomials are exponent tuples.  Within a fixed degree the coordinate order
is graded-lex descending with x1 > x2 > ... > xn, which fixes the column
order of every degree-d matrix in the package.
"""

from functools import lru_cache
from math import comb

from .scalar import FieldSpec


@lru_cache(maxsize=None)
def monomials_of_degree(n, d):
    """All exponent tuples of total degree d in n variables, grlex descending."""
    if n < 1:
        raise ValueError("need at least one variable")
    if d < 0:
        raise ValueError("negative degree")

    def gen(k, rem):
        if k == 1:
            yield (rem,)
            return
        for e in range(rem, -1, -1):
            for rest in gen(k - 1, rem - e):
                yield (e,) + rest

    mons = tuple(gen(n, d))
    assert len(mons) == comb(n + d - 1, d)
    return mons


@lru_cache(maxsize=None)
def monomial_index(n, d):
    """Monomial -> position in monomials_of_degree(n, d)."""
    return {m: i for i, m in enumerate(monomials_of_degree(n, d))}


def _mono_str(mono):
    parts = []
    for i, e in enumerate(mono):
        if e == 0:
            continue
        parts.append("x%d" % (i + 1) if e == 1 else "x%d^%d" % (i + 1, e))
    return "*".join(parts) if parts else "1"


class Poly:
    """Sparse polynomial: {exponent tuple: nonzero coefficient}."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field, n, terms):
        self.field = field
        self.n = n
        clean = {}
        for mono, c in terms.items():
            if len(mono) != n:
                raise ValueError("monomial %r has wrong arity (n=%d)" % (mono, n))
            cv = field.scalar(c)
            if cv:
                clean[tuple(mono)] = cv
        self.terms = clean

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, {})

    @classmethod
    def constant(cls, field, n, c):
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def variable(cls, field, n, i):
        """The variable x_{i+1} (0-based index i)."""
        if not 0 <= i < n:
            raise ValueError("variable index %d out of range" % i)
        mono = tuple(1 if j == i else 0 for j in range(n))
        return cls(field, n, {mono: field.one})

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self):
        """{degree: homogeneous Poly}, zero polynomial giving {}."""
        buckets = {}
        for m, c in self.terms.items():
            buckets.setdefault(sum(m), {})[m] = c
        return {d: Poly(self.field, self.n, t) for d, t in sorted(buckets.items())}

    def _check_compatible(self, other):
        if self.n != other.n:
            raise ValueError("variable counts differ: %d vs %d" % (self.n, other.n))
        if self.field != other.field:
            raise ValueError("fields differ: %s vs %s" % (self.field, other.field))

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            nv = c if cur is None else cur + c
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
        p = Poly.zero(self.field, self.n)
        p.terms = out
        return p

    def __neg__(self):
        p = Poly.zero(self.field, self.n)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check_compatible(other)
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    c = c1 * c2
                    cur = out.get(m)
                    nv = c if cur is None else cur + c
                    if nv:
                        out[m] = nv
                    else:
                        out.pop(m, None)
            p = Poly.zero(self.field, self.n)
            p.terms = out
            return p
        # scalar multiple
        cv = self.field.scalar(other)
        if not cv:
            return Poly.zero(self.field, self.n)
        p = Poly.zero(self.field, self.n)
        p.terms = {m: c * cv for m, c in self.terms.items()}
        return p

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(self.field, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def shift_by(self, mono):
        """Multiply by a single monomial (exponent tuple)."""
        p = Poly.zero(self.field, self.n)
        p.terms = {
            tuple(a + b for a, b in zip(m, mono)): c for m, c in self.terms.items()
        }
        return p

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.n == other.n
            and self.field == other.field
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        one = self.field.one
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            c = self.terms[m]
            ms = _mono_str(m)
            if ms == "1":
                parts.append(str(c))
            elif c == one:
                parts.append(ms)
            elif c == -one:
                parts.append("-" + ms)
            else:
                parts.append("%s*%s" % (c, ms))
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return "Poly(%s)" % self


def coefficient_vector(f, d):
    """Coordinates of a homogeneous degree-d polynomial against
    monomials_of_degree(f.n, d)."""
    if not f.is_homogeneous():
        raise ValueError("polynomial is not homogeneous")
    if not f.is_zero() and f.degree() != d:
        raise ValueError("degree mismatch: %s vs %d" % (f.degree(), d))
    idx = monomial_index(f.n, d)
    vec = [f.field.zero] * len(idx)
    for m, c in f.terms.items():
        vec[idx[m]] = c
    return vec


def poly_from_vector(field, n, d, vec):
    """Inverse of coefficient_vector."""
    mons = monomials_of_degree(n, d)
    if len(vec) != len(mons):
        raise ValueError("vector length %d, expected %d" % (len(vec), len(mons)))
    return Poly(field, n, {m: c for m, c in zip(mons, vec) if c})


class LinearForm:
    """A nonzero linear form, stored as its coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = tuple(field.scalar(c) for c in coeffs)
        if not cs:
            raise ValueError("empty coefficient vector")
        if not any(cs):
            raise ValueError("the zero linear form is not allowed")
        self.field = field
        self.coeffs = cs

    @property
    def n(self):
        return len(self.coeffs)

    def to_poly(self):
        n = self.n
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                terms[tuple(1 if j == i else 0 for j in range(n))] = c
        return Poly(self.field, n, terms)

    def __eq__(self, other):
        return (
            isinstance(other, LinearForm)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self):
        return str(self.to_poly())

    def __repr__(self):
        return "LinearForm(%s)" % self


class FactoredGenerator:
    """A generator kept as a product of powers of linear forms."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        fs = []
        for form, mult in factors:
            if not isinstance(form, LinearForm):
                raise TypeError("factor base must be a LinearForm")
            if not isinstance(mult, int) or mult < 1:
                raise ValueError("multiplicity must be a positive integer")
            fs.append((form, mult))
        if not fs:
            raise ValueError("a generator needs at least one factor")
        n = fs[0][0].n
        fld = fs[0][0].field
        if any(f.n != n or f.field != fld for f, _ in fs):
            raise ValueError("factors live in different rings")
        self.factors = tuple(fs)

    @property
    def n(self):
        return self.factors[0][0].n

    @property
    def field(self):
        return self.factors[0][0].field

    def degree(self):
        return sum(m for _, m in self.factors)

    def expand(self):
        out = Poly.constant(self.field, self.n, 1)
        for form, mult in self.factors:
            out = out * form.to_poly() ** mult
        return out

    def __str__(self):
        return "*".join(
            "(%s)" % f if m == 1 else "(%s)^%d" % (f, m) for f, m in self.factors
        )

    def __repr__(self):
        return "FactoredGenerator(%s)" % self


# ---------------------------------------------------------------------------
# text grammar: variables x1..xN, integer literals, + - * ^, parentheses


class PolyParseError(ValueError):
    pass


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self):
        ch = self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise PolyParseError(
                "expected integer at position %d in %r" % (start, self.text)
            )
        return int(self.text[start : self.pos])


def parse_poly(text, n, field):
    """Parse the polynomial grammar, e.g. 'x1^2*(x1+2*x2)'."""
    toks = _Tokens(text)

    def atom():
        ch = toks.peek()
        if ch == "(":
            toks.pos += 1
            e = expr()
            if toks.peek() != ")":
                raise PolyParseError("missing ')' in %r" % text)
            toks.pos += 1
            return e
        if ch == "x":
            toks.pos += 1
            idx = toks.take_int()
            if not 1 <= idx <= n:
                raise PolyParseError("variable x%d out of range 1..%d" % (idx, n))
            return Poly.variable(field, n, idx - 1)
        if ch.isdigit():
            return Poly.constant(field, n, toks.take_int())
        raise PolyParseError(
            "unexpected %r at position %d in %r" % (ch, toks.pos, text)
        )

    def factor():
        base = atom()
        if toks.peek() == "^":
            toks.pos += 1
            return base ** toks.take_int()
        return base

    def term():
        out = factor()
        while toks.peek() == "*":
            toks.pos += 1
            out = out * factor()
        return out

    def expr():
        neg = False
        if toks.peek() in ("+", "-"):
            neg = toks.peek() == "-"
            toks.pos += 1
        out = -term() if neg else term()
        while toks.peek() in ("+", "-"):
            op = toks.peek()
            toks.pos += 1
            t = term()
            out = out - t if op == "-" else out + t
        return out

    result = expr()
    if toks.peek():
        raise PolyParseError(
            "trailing input at position %d in %r" % (toks.pos, text)
        )
    return result

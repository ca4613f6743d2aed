"""Exact scalar arithmetic (rationals and large prime fields) and the
row-reduction kernel used by every other module.

Rationals are gmpy2.mpq when available (much faster on large
numerators) and fall back to fractions.Fraction otherwise; both store
lowest terms with positive denominator.  Prime-field elements are
reduced residues in [0, p).
"""

from dataclasses import dataclass
from typing import NamedTuple

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as _rational

from fractions import Fraction

#: types accepted as an already-exact rational value
_RATIONAL_TYPES = (type(_rational(1)), Fraction)

#: smallest prime admitted without an explicit opt-in; large enough that
#: random residues behave generically
SMALL_PRIME_BOUND = 1 << 20

#: a convenient large default prime (Mersenne, 2^31 - 1)
DEFAULT_PRIME = 2147483647

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """Residue class modulo a prime; arithmetic never leaves the field."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed prime fields: p=%d vs p=%d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(o.v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0 and self.v == 0:
            raise ZeroDivisionError("inverting zero in F_%d" % self.p)
        return Fp(pow(self.v, k, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __str__(self):
        return str(self.v)

    def __repr__(self):
        return "Fp(%d mod %d)" % (self.v, self.p)


class FieldSpec:
    """The coefficient field: exact rationals (p=None) or F_p for a prime p.

    Primes at or below 2^20 are rejected unless allow_small=True; small
    fields make random "generic" draws unreliable.
    """

    __slots__ = ("p",)

    def __init__(self, p=None, allow_small=False):
        if p is not None:
            if not isinstance(p, int) or not is_probable_prime(p):
                raise ValueError("not a prime: %r" % (p,))
            if p <= SMALL_PRIME_BOUND and not allow_small:
                raise ValueError(
                    "prime %d <= 2^20; pass allow_small=True if you mean it" % p
                )
        self.p = p

    @property
    def is_prime_field(self):
        return self.p is not None

    def scalar(self, x):
        """Coerce x (int, str, rational, or same-field element) into this field."""
        if self.p is None:
            if isinstance(x, _RATIONAL_TYPES):
                return _rational(x)
            if isinstance(x, (int, str)):
                return _rational(x)
            raise TypeError("cannot coerce %r into the rationals" % (x,))
        if isinstance(x, Fp):
            if x.p != self.p:
                raise TypeError("element of F_%d used in F_%d" % (x.p, self.p))
            return x
        if isinstance(x, int):
            return Fp(x, self.p)
        if isinstance(x, str):
            return Fp(int(x), self.p)
        if isinstance(x, _RATIONAL_TYPES):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p=%d" % self.p)
            return Fp(num * pow(den, -1, self.p), self.p)
        raise TypeError("cannot coerce %r into F_%d" % (x, self.p))

    def owns(self, x):
        if self.p is None:
            return isinstance(x, _RATIONAL_TYPES)
        return isinstance(x, Fp) and x.p == self.p

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    @classmethod
    def parse(cls, text, allow_small=True):
        """Parse a field tag: 'q' / 'Q' or 'fp:<prime>'."""
        t = text.strip().lower()
        if t == "q":
            return cls()
        if t.startswith("fp:"):
            return cls(int(t[3:]), allow_small=allow_small)
        raise ValueError("unknown field %r (expected 'q' or 'fp:<prime>')" % text)

    def tag(self):
        return "Q" if self.p is None else "fp:%d" % self.p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.p == other.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return "FieldSpec(%s)" % ("Q" if self.p is None else "F_%d" % self.p)


RATIONALS = FieldSpec()


class Matrix:
    """Dense matrix over a single FieldSpec.  Entries are validated and
    coerced at construction; mixing fields is a usage error."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols=%d does not match row width %d" % (ncols, width))
            ncols = width
        elif ncols is None:
            ncols = 0
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = [[field.scalar(e) for e in r] for r in rows]

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field, columns, nrows):
        if any(len(c) != nrows for c in columns):
            raise ValueError("column length mismatch")
        rows = [[c[i] for c in columns] for i in range(nrows)]
        return cls(field, rows, ncols=len(columns))

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        return Matrix.from_columns(self.field, [list(r) for r in self.rows], self.ncols)

    def matvec(self, v):
        if len(v) != self.ncols:
            raise ValueError("vector length %d, expected %d" % (len(v), self.ncols))
        z = self.field.zero
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.ncols != other.nrows:
            raise ValueError("incompatible matrix product")
        cols = [self.matvec(other.column(j)) for j in range(other.ncols)]
        return Matrix.from_columns(self.field, cols, self.nrows)

    def submatrix(self, row_idx, col_idx):
        return Matrix(
            self.field,
            [[self.rows[i][j] for j in col_idx] for i in row_idx],
            ncols=len(col_idx),
        )

    def is_zero(self):
        return all(not e for r in self.rows for e in r)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return "Matrix(%dx%d over %s)" % (self.nrows, self.ncols, self.field.tag())


class RrefResult(NamedTuple):
    rank: int
    pivot_columns: tuple
    reduced: "Matrix"


def rref(m):
    """Unique reduced row echelon form; pivots scan columns left to right."""
    if not isinstance(m, Matrix):
        raise TypeError("rref expects a Matrix")
    rows = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots = []
    pr = 0
    for c in range(nc):
        if pr == nr:
            break
        pv = None
        for i in range(pr, nr):
            if rows[i][c]:
                pv = i
                break
        if pv is None:
            continue
        rows[pr], rows[pv] = rows[pv], rows[pr]
        piv = rows[pr][c]
        if piv != m.field.one:
            rows[pr] = [e / piv for e in rows[pr]]
        for i in range(nr):
            if i != pr and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(c)
        pr += 1
    return RrefResult(len(pivots), tuple(pivots), Matrix(m.field, rows, ncols=nc))


def integer_rows(m):
    """(rows, p) with the matrix rescaled to integer entries: residue lists
    plus p over a prime field, numerator rows times the denominator lcm
    (rank- and product-chain-safe since the scale is a positive constant)
    over the rationals."""
    if m.field.is_prime_field:
        return [[e.v for e in row] for row in m.rows], m.field.p
    import math

    scale = 1
    for row in m.rows:
        for e in row:
            d = e.denominator
            if d != 1:
                scale = math.lcm(scale, int(d))
    return (
        [[e.numerator * (scale // e.denominator) for e in row] for row in m.rows],
        None,
    )


def int_matrix_mul(a, b, bcols, p=None):
    """Product of integer row-lists (a is r x k, b is k x bcols)."""
    out = []
    for ra in a:
        row = [0] * bcols
        for k, av in enumerate(ra):
            if not av:
                continue
            rb = b[k]
            for j in range(bcols):
                bv = rb[j]
                if bv:
                    row[j] += av * bv
        if p is not None:
            row = [v % p for v in row]
        out.append(row)
    return out


def int_matrix_rank(rows, ncols, p=None):
    """Rank of an integer row-list: fraction-free Bareiss elimination over
    the integers, plain modular elimination over a prime field."""
    work = [list(r) for r in rows if any(r)]
    if not work or ncols == 0:
        return 0
    nr = len(work)
    rk = 0
    if p is not None:
        for c in range(ncols):
            if rk == nr:
                break
            pv = None
            for i in range(rk, nr):
                if work[i][c] % p:
                    pv = i
                    break
            if pv is None:
                continue
            work[rk], work[pv] = work[pv], work[rk]
            inv = pow(work[rk][c], -1, p)
            prow = [v * inv % p for v in work[rk]]
            work[rk] = prow
            for i in range(rk + 1, nr):
                f = work[i][c] % p
                if f:
                    work[i] = [(a - f * b) % p for a, b in zip(work[i], prow)]
            rk += 1
        return rk
    prev = 1
    for c in range(ncols):
        if rk == nr:
            break
        pv = None
        for i in range(rk, nr):
            if work[i][c]:
                pv = i
                break
        if pv is None:
            continue
        work[rk], work[pv] = work[pv], work[rk]
        prow = work[rk]
        piv = prow[c]
        # one-step Bareiss: entries stay minors, the division is exact
        for i in range(rk + 1, nr):
            ri = work[i]
            f = ri[c]
            work[i] = [(piv * a - f * b) // prev for a, b in zip(ri, prow)]
        prev = piv
        rk += 1
    return rk


def rank(m):
    """Exact rank; integer elimination after clearing denominators."""
    if min(m.nrows, m.ncols) == 0:
        return 0
    rows, p = integer_rows(m)
    return int_matrix_rank(rows, m.ncols, p)


def kernel_basis(m):
    """Basis of the right kernel {v : m v = 0}, one vector per free column."""
    res = rref(m)
    red = res.reduced
    in_pivots = set(res.pivot_columns)
    z, o = m.field.zero, m.field.one
    basis = []
    for f in range(m.ncols):
        if f in in_pivots:
            continue
        v = [z] * m.ncols
        v[f] = o
        for i, pc in enumerate(res.pivot_columns):
            e = red.rows[i][f]
            if e:
                v[pc] = -e
        basis.append(v)
    return basis


def det(m):
    """Exact determinant by fraction-producing elimination with row swaps."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return m.field.one
    rows = [list(r) for r in m.rows]
    sign = 1
    acc = m.field.one
    for c in range(n):
        pv = None
        for i in range(c, n):
            if rows[i][c]:
                pv = i
                break
        if pv is None:
            return m.field.zero
        if pv != c:
            rows[c], rows[pv] = rows[pv], rows[c]
            sign = -sign
        piv = rows[c][c]
        acc = acc * piv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return acc if sign == 1 else -acc


class EchelonBasis:
    """Incrementally maintained reduced-echelon span over a fixed column range.

    Rows are keyed by pivot column; each stored row is e_pivot plus a tail
    supported only on non-pivot columns, so reducing a vector needs a single
    pass over its pivot coordinates.  Pivot order is the ambient column
    order, which keeps normal forms deterministic.
    """

    __slots__ = ("ncols", "field", "rows")

    def __init__(self, ncols, field):
        self.ncols = ncols
        self.field = field
        self.rows = {}

    @property
    def rank(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vec):
        """Residue of a sparse vector {col: coeff} modulo the span."""
        work = dict(vec)
        hits = sorted(k for k in work if k in self.rows)
        for c in hits:
            coef = work.pop(c, None)
            if coef is None or not coef:
                continue
            for j, rv in self.rows[c].items():
                cur = work.get(j)
                nv = (cur - coef * rv) if cur is not None else -(coef * rv)
                if nv:
                    work[j] = nv
                else:
                    work.pop(j, None)
        return work

    def reduce_track(self, vec):
        """Like reduce, also returning {pivot: coefficient} used per row."""
        work = dict(vec)
        used = {}
        hits = sorted(k for k in work if k in self.rows)
        for c in hits:
            coef = work.pop(c, None)
            if coef is None or not coef:
                continue
            used[c] = coef
            for j, rv in self.rows[c].items():
                cur = work.get(j)
                nv = (cur - coef * rv) if cur is not None else -(coef * rv)
                if nv:
                    work[j] = nv
                else:
                    work.pop(j, None)
        return work, used

    def insert(self, vec):
        """Add a sparse vector to the span; returns the new pivot column or
        None if the vector was already in the span."""
        res = self.reduce(vec)
        if not res:
            return None
        lead = min(res)
        piv = res.pop(lead)
        if piv != self.field.one:
            inv = self.field.one / piv
            tail = {j: v * inv for j, v in res.items()}
        else:
            tail = res
        # restore the reduced-form invariant: no other row may touch `lead`
        for t in self.rows.values():
            coef = t.pop(lead, None)
            if coef is None:
                continue
            for j, v in tail.items():
                cur = t.get(j)
                nv = (cur - coef * v) if cur is not None else -(coef * v)
                if nv:
                    t[j] = nv
                else:
                    t.pop(j, None)
        self.rows[lead] = tail
        return lead

    def extend(self, vecs):
        for v in vecs:
            self.insert(v)

    def contains_vector(self, vec):
        return not self.reduce(vec)

    def contains(self, other):
        if other.ncols != self.ncols:
            raise ValueError("ambient width mismatch")
        one = self.field.one
        for p, t in other.rows.items():
            row = dict(t)
            row[p] = one
            if not self.contains_vector(row):
                return False
        return True

    def row_vector(self, pivot):
        """The stored row for a pivot, pivot entry included."""
        row = dict(self.rows[pivot])
        row[pivot] = self.field.one
        return row

    def copy(self):
        eb = EchelonBasis(self.ncols, self.field)
        eb.rows = {p: dict(t) for p, t in self.rows.items()}
        return eb

    def dense_rows(self):
        """Rows as dense lists, ordered by pivot column."""
        z = self.field.zero
        out = []
        for p in self.pivots():
            row = [z] * self.ncols
            row[p] = self.field.one
            for j, v in self.rows[p].items():
                row[j] = v
            out.append(row)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, EchelonBasis)
            and self.ncols == other.ncols
            and self.field == other.field
            and self.rows == other.rows
        )

    def __repr__(self):
        return "EchelonBasis(rank %d of %d cols)" % (self.rank, self.ncols)


def sparse(vec):
    """Dense list -> {index: coeff} with zeros dropped."""
    return {i: v for i, v in enumerate(vec) if v}


def dense(vec, ncols, field):
    """{index: coeff} -> dense list of length ncols."""
    out = [field.zero] * ncols
    for i, v in vec.items():
        out[i] = v
    return out

"""Jordan types of nilpotent multiplication maps, partition combinatorics
(dual partition and the part-count-first total order), and the weak/strong
Lefschetz deciders with random element search.
"""

import enum
from dataclasses import dataclass
from typing import Optional

from .scalar import int_matrix_mul, int_matrix_rank, integer_rows
from .poly import LinearForm, Poly
from .rand import derive_rng


class Partition:
    """An integer partition, parts sorted descending."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        ps = sorted((int(p) for p in parts), reverse=True)
        if any(p < 1 for p in ps):
            raise ValueError("parts must be positive")
        self.parts = tuple(ps)

    @property
    def weight(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __str__(self):
        return "+".join(str(p) for p in self.parts) if self.parts else "()"

    def __repr__(self):
        return "Partition(%s)" % (list(self.parts),)


def dual_partition(p):
    """Coefficients of sum_i (1 + t + ... + t^(part_i - 1)): the entry for
    t^j counts parts exceeding j.  An involution; the empty partition is
    its own dual."""
    if not p.parts:
        return Partition(())
    top = p.parts[0]
    return Partition(sum(1 for q in p.parts if q > j) for j in range(top))


class Order(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare_partitions(p, q):
    """Total order on partitions of one weight: fewer parts wins, ties break
    lexicographically on the sorted parts."""
    if p.weight != q.weight:
        raise ValueError("partitions of different weights: %d vs %d" % (p.weight, q.weight))
    if len(p) != len(q):
        return Order.GREATER if len(p) < len(q) else Order.LESS
    for a, b in zip(p.parts, q.parts):
        if a != b:
            return Order.GREATER if a > b else Order.LESS
    return Order.EQUAL


def is_unimodal(h):
    """True iff the sequence rises weakly then falls weakly."""
    if not h:
        raise ValueError("empty sequence")
    if any(x < 0 for x in h):
        raise ValueError("negative entries")
    i = 0
    while i + 1 < len(h) and h[i] <= h[i + 1]:
        i += 1
    while i + 1 < len(h) and h[i] >= h[i + 1]:
        i += 1
    return i == len(h) - 1


def hilbert_partition(algebra):
    """The Hilbert function values as a partition (sorted descending)."""
    return Partition(v for v in algebra.hilbert_function() if v)


@dataclass(frozen=True)
class RankRecord:
    power: int
    source: int
    rank: int
    source_dim: int
    target_dim: int
    full: bool

    def to_dict(self):
        return {
            "d": self.power,
            "i": self.source,
            "rank": self.rank,
            "dims": [self.source_dim, self.target_dim],
            "full": self.full,
        }


class Verdict(enum.Enum):
    SLP_CERTIFIED = "SLP_certified"
    SLP_HOLDS_FOR_ELEMENT = "SLP_holds_for_element"
    WLP_ONLY = "WLP_only"
    FAILS = "Fails"


@dataclass
class LefschetzReport:
    element: Optional[Poly]
    pairs: tuple
    verdict: Verdict
    jordan_type: Optional[Partition] = None
    dual_of_hilbert: Optional[Partition] = None
    unimodal: Optional[bool] = None
    note: str = ""

    @property
    def passed(self):
        return self.verdict in (Verdict.SLP_CERTIFIED, Verdict.SLP_HOLDS_FOR_ELEMENT)

    def failing_pairs(self):
        return tuple(r for r in self.pairs if not r.full)

    def to_dict(self):
        return {
            "element": None if self.element is None else str(self.element),
            "verdict": self.verdict.value,
            "pairs": [r.to_dict() for r in self.pairs],
            "jordan_type": None if self.jordan_type is None else list(self.jordan_type),
            "dual_of_hilbert": (
                None if self.dual_of_hilbert is None else list(self.dual_of_hilbert)
            ),
            "unimodal": self.unimodal,
            "note": self.note,
        }


def _as_poly(element):
    if isinstance(element, LinearForm):
        return element.to_poly()
    return element


def _integer_steps(space, y):
    """Integer-rescaled matrices of xy : V_i -> V_{i+deg y} for every i in
    the effective range.  Powers of xy are composites of these, and the
    per-matrix positive scale factors change no rank."""
    a, b = space.effective_range()
    k = y.degree()
    steps = {}
    p = None
    for i in range(a, b - k + 1):
        m = space.mult_map(y, i)
        rows, p = integer_rows(m)
        steps[i] = rows
    return steps, p


def jordan_type(space, y):
    """Jordan type of multiplication by a homogeneous y of positive degree,
    from the rank sequence of its powers: the number of parts of size k is
    r_{k-1} - 2 r_k + r_{k+1} with r_0 = dim."""
    y = _as_poly(y)
    if y.is_zero() or not y.is_homogeneous() or y.degree() < 1:
        raise ValueError("need a nonzero homogeneous element of positive degree")
    total = space.total_dim()
    if total == 0:
        return Partition(())
    a, b = space.effective_range()
    k_deg = y.degree()
    steps, p = _integer_steps(space, y)
    # current[i]: integer rows of xy^k : V_i -> V_{i + k*k_deg}
    current = {i: rows for i, rows in steps.items()}
    ranks = [total]
    k = 1
    while current:
        r = sum(
            int_matrix_rank(rows, space.dim(i), p) for i, rows in current.items()
        )
        ranks.append(r)
        if r == 0:
            break
        nxt = {}
        for i, rows in current.items():
            step = steps.get(i + k * k_deg)
            if step is not None:
                nxt[i] = int_matrix_mul(
                    step, rows, space.dim(i), p
                )
        current = nxt
        k += 1
    ranks.append(0)
    ranks.append(0)
    parts = []
    for size in range(1, len(ranks) - 1):
        mult = ranks[size - 1] - 2 * ranks[size] + ranks[size + 1]
        parts.extend([size] * mult)
    part = Partition(parts)
    assert part.weight == total, "rank sequence inconsistent"
    return part


def full_rank_profile(space, z):
    """Rank-check every power map xz^d between graded pieces of the space;
    ranks are recorded for all (d, i) pairs even after a failure."""
    zp = z.to_poly() if isinstance(z, LinearForm) else z
    if zp.is_zero() or not zp.is_homogeneous() or zp.degree() != 1:
        raise ValueError("need a nonzero linear form")
    rng_pair = space.effective_range()
    if rng_pair is None:
        return LefschetzReport(zp, (), Verdict.SLP_HOLDS_FOR_ELEMENT,
                               note="zero module: vacuous")
    a, b = rng_pair
    steps, p = _integer_steps(space, zp)
    current = {i: rows for i, rows in steps.items()}
    pairs = []
    all_full = True
    wlp_full = True
    for d in range(1, b - a + 1):
        for i in range(a, b - d + 1):
            rows_n, cols_n = space.dim(i + d), space.dim(i)
            rows = current.get(i)
            r = 0 if rows is None else int_matrix_rank(rows, cols_n, p)
            full = r == min(rows_n, cols_n)
            pairs.append(RankRecord(d, i, r, cols_n, rows_n, full))
            if not full:
                all_full = False
                if d == 1:
                    wlp_full = False
        nxt = {}
        for i, rows in current.items():
            step = steps.get(i + d)
            if step is not None:
                nxt[i] = int_matrix_mul(step, rows, space.dim(i), p)
        current = nxt
    if all_full:
        verdict = Verdict.SLP_HOLDS_FOR_ELEMENT
    elif wlp_full:
        verdict = Verdict.WLP_ONLY
    else:
        verdict = Verdict.FAILS
    return LefschetzReport(zp, tuple(pairs), verdict)


def certify_sl_element(algebra, z):
    """Decide whether z is a strong Lefschetz element of the algebra by the
    Jordan-type test (type equals the dual of the Hilbert partition and the
    Hilbert function is unimodal), cross-checked against the rank profile.

    The two criteria are computed independently; disagreement would
    contradict the dual-partition characterization and raises."""
    zp = z.to_poly() if isinstance(z, LinearForm) else z
    h = algebra.hilbert_function()
    uni = is_unimodal(h)
    jt = jordan_type(algebra, zp)
    dual = dual_partition(hilbert_partition(algebra))
    profile = full_rank_profile(algebra, z)
    certified = uni and jt == dual
    if certified != (profile.verdict == Verdict.SLP_HOLDS_FOR_ELEMENT):
        raise RuntimeError(
            "Jordan-type test and rank profile disagree for %s on %r "
            "(jordan=%s dual=%s unimodal=%s profile=%s)"
            % (zp, algebra, jt, dual, uni, profile.verdict.value)
        )
    return LefschetzReport(
        zp,
        profile.pairs,
        Verdict.SLP_CERTIFIED if certified else profile.verdict,
        jordan_type=jt,
        dual_of_hilbert=dual,
        unimodal=uni,
    )


def default_coeff_range(field):
    """Search range for random linear forms: [1, 10^6] over Q, all nonzero
    residues over a prime field."""
    if field.is_prime_field:
        return (1, field.p - 1)
    return (1, 10 ** 6)


def random_linear_form(rng, n, field, coeff_range=None):
    lo, hi = coeff_range or default_coeff_range(field)
    for _ in range(64):
        coeffs = [rng.randint(lo, hi) for _ in range(n)]
        if any(c % field.p if field.is_prime_field else c for c in coeffs):
            return LinearForm(field, coeffs)
    raise ValueError("could not draw a nonzero linear form in range %r" % ((lo, hi),))


def find_sl_element(space, trials=3, seed=0, coeff_range=None):
    """Sample random linear forms and return (form, report) for the first
    one whose power maps all have full rank; None if all trials fail.

    Absence is not a disproof: the report of a failed search would only say
    that no sampled element worked.  For a full algebra the report carries
    the Jordan-type certification; modules get the rank profile only."""
    from .graded import ArtinianAlgebra  # local import to avoid a cycle

    n = space.n
    field = space.field
    if space.total_dim() == 0:
        z = random_linear_form(derive_rng(seed, "sl", 0), n, field, coeff_range)
        return z, LefschetzReport(z.to_poly(), (), Verdict.SLP_HOLDS_FOR_ELEMENT,
                                  note="zero module: vacuous")
    for t in range(trials):
        z = random_linear_form(derive_rng(seed, "sl", t), n, field, coeff_range)
        if isinstance(space, ArtinianAlgebra):
            report = certify_sl_element(space, z)
        else:
            report = full_rank_profile(space, z)
        if report.passed:
            return z, report
    return None

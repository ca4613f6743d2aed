"""The two generator families under test, their complete-intersection
certificates, and per-instance verification.

Family "triangular": generators x_i^{d_i} * l_i where l_i involves only
x_1..x_{i+1} (the last row is unrestricted).  Family "generic-products":
each generator is a product of powers of random linear forms.
"""

import itertools
import time
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .scalar import FieldSpec, Matrix, RATIONALS, det
from .poly import FactoredGenerator, LinearForm, Poly
from .graded import NotArtinianError, build_algebra
from .jordan import Verdict, full_rank_profile
from .csm import all_csm_have_slp, last_csm_check
from .rand import derive_rng, derive_seed


class RetriesExhaustedError(Exception):
    """Random coefficient draws kept failing the CI certificate."""


@dataclass(frozen=True)
class TriangularInstance:
    """Data of one triangular-family ideal: exponents d_i and the n x n
    coefficient matrix of the linear factors."""

    n: int
    degrees: tuple
    matrix: tuple  # n rows of n field scalars
    field: FieldSpec

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        if len(self.degrees) != self.n or any(d < 1 for d in self.degrees):
            raise ValueError("degrees must be %d positive integers" % self.n)
        if len(self.matrix) != self.n or any(len(r) != self.n for r in self.matrix):
            raise ValueError("matrix must be %d x %d" % (self.n, self.n))
        for i in range(self.n - 1):
            for j in range(i + 2, self.n):
                if self.matrix[i][j]:
                    raise ValueError(
                        "shape violation: entry (%d,%d) must be zero" % (i + 1, j + 1)
                    )

    @classmethod
    def from_rows(cls, degrees, rows, field=RATIONALS):
        n = len(degrees)
        matrix = tuple(tuple(field.scalar(c) for c in r) for r in rows)
        return cls(n=n, degrees=tuple(degrees), matrix=matrix, field=field)

    def coefficient_matrix(self):
        return Matrix(self.field, [list(r) for r in self.matrix])

    def to_dict(self):
        return {
            "family": "triangular",
            "n": self.n,
            "degrees": list(self.degrees),
            "matrix": [[str(c) for c in row] for row in self.matrix],
            "field": self.field.tag(),
        }


@dataclass(frozen=True)
class GenericProductsInstance:
    """Data of one generic-products ideal: generator i is the product over j
    of the linear form with coefficient vector coefficients[i][j], raised to
    multiplicities[i][j]."""

    n: int
    factor_counts: tuple
    multiplicities: tuple  # tuple of tuples of positive ints
    coefficients: tuple    # per generator, per factor, length-n scalar tuples
    field: FieldSpec
    seed: Optional[int] = None
    retries: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        if len(self.factor_counts) != self.n:
            raise ValueError("need %d factor counts" % self.n)
        for i, m in enumerate(self.factor_counts):
            if m < 1:
                raise ValueError("factor count %d must be positive" % m)
            if len(self.multiplicities[i]) != m or len(self.coefficients[i]) != m:
                raise ValueError("generator %d: factor data length mismatch" % (i + 1))
            if any(d < 1 for d in self.multiplicities[i]):
                raise ValueError("multiplicities must be positive")

    def generators(self):
        out = []
        for i in range(self.n):
            factors = [
                (LinearForm(self.field, self.coefficients[i][j]), self.multiplicities[i][j])
                for j in range(self.factor_counts[i])
            ]
            out.append(FactoredGenerator(factors))
        return out

    def generator_degrees(self):
        return tuple(sum(ds) for ds in self.multiplicities)

    def first_factor(self):
        """The linear form whose image the family's generic-element check uses."""
        return LinearForm(self.field, self.coefficients[0][0])

    def to_dict(self):
        return {
            "family": "generic-products",
            "n": self.n,
            "factor_counts": list(self.factor_counts),
            "multiplicities": [list(d) for d in self.multiplicities],
            "coefficients": [
                [[str(c) for c in vec] for vec in gen] for gen in self.coefficients
            ],
            "field": self.field.tag(),
            "seed": self.seed,
            "retries": self.retries,
        }


def ci_minors_check(matrix, mode="all"):
    """True iff the designated principal minors of the square coefficient
    matrix are all nonzero.  mode="all" checks every principal submatrix
    (the reading under which the gate is exactly the complete-intersection
    condition); mode="leading" restricts to the n leading ones."""
    if matrix.nrows != matrix.ncols:
        raise ValueError("principal minors need a square matrix")
    n = matrix.nrows
    if mode == "leading":
        subsets = [tuple(range(k + 1)) for k in range(n)]
    elif mode == "all":
        subsets = [
            s for size in range(1, n + 1) for s in itertools.combinations(range(n), size)
        ]
    else:
        raise ValueError("mode must be 'all' or 'leading'")
    return all(bool(det(matrix.submatrix(s, s))) for s in subsets)


def koszul_hilbert(degrees):
    """Coefficients of prod (1 - t^e) / (1 - t)^n: the Hilbert function a
    complete intersection with those generator degrees must have."""
    h = [1]
    for e in degrees:
        if e < 1:
            raise ValueError("degrees must be positive")
        out = [0] * (len(h) + e - 1)
        for i, c in enumerate(h):
            for j in range(e):
                out[i + j] += c
        h = out
    return tuple(h)


def ci_hilbert_certificate(algebra, degrees):
    """True iff the algebra's Hilbert function matches the Koszul series for
    the given generator degrees (for an Artinian algebra with exactly n
    generators this says the generators form a regular sequence)."""
    if len(algebra.generators) != len(degrees):
        raise ValueError(
            "generator-count mismatch: %d generators, %d degrees"
            % (len(algebra.generators), len(degrees))
        )
    return tuple(algebra.hilbert_function()) == koszul_hilbert(degrees)


def build_triangular(inst):
    """The expanded generator polynomials x_i^{d_i} l_i (degree d_i + 1 each);
    a single variable collapses to the pure power x_1^{d_1 + 1}."""
    field, n = inst.field, inst.n
    if n == 1:
        return [Poly.variable(field, 1, 0) ** (inst.degrees[0] + 1)]
    gens = []
    for i in range(n):
        l_i = LinearForm(field, inst.matrix[i])
        gens.append(Poly.variable(field, n, i) ** inst.degrees[i] * l_i.to_poly())
    return gens


def _draw_coeff_vector(rng, n, field, coeff_range):
    """A random nonzero coefficient vector: integers in [-coeff_range,
    coeff_range] over Q, uniform in [1, p-1] over a prime field."""
    for _ in range(64):
        if field.is_prime_field:
            coeffs = [rng.randint(1, field.p - 1) for _ in range(n)]
        else:
            coeffs = [rng.randint(-coeff_range, coeff_range) for _ in range(n)]
        if any(coeffs):
            return tuple(field.scalar(c) for c in coeffs)
    raise RuntimeError("could not draw a nonzero coefficient vector")


def build_generic_products(
    n,
    factor_counts,
    multiplicities,
    seed,
    coeff_range=1000,
    field=RATIONALS,
    max_retries=3,
):
    """Draw seeded random coefficients for a generic-products instance and
    redraw (up to max_retries) until the quotient passes the CI
    certificate.  Returns (instance, algebra); the instance records how
    many redraws were needed."""
    factor_counts = tuple(factor_counts)
    multiplicities = tuple(tuple(d) for d in multiplicities)
    degrees = tuple(sum(d) for d in multiplicities)
    for attempt in range(max_retries + 1):
        rng = derive_rng(seed, "generic-products", attempt)
        coeffs = tuple(
            tuple(_draw_coeff_vector(rng, n, field, coeff_range) for _ in range(m))
            for m in factor_counts
        )
        inst = GenericProductsInstance(
            n=n,
            factor_counts=factor_counts,
            multiplicities=multiplicities,
            coefficients=coeffs,
            field=field,
            seed=seed,
            retries=attempt,
        )
        try:
            algebra = build_algebra(n, field, inst.generators())
        except NotArtinianError:
            continue
        if ci_hilbert_certificate(algebra, degrees):
            return inst, algebra
    raise RetriesExhaustedError(
        "no CI instance within %d retries (coeff_range=%d too small?)"
        % (max_retries, coeff_range)
    )


@dataclass
class FamilyVerdict:
    """Per-instance verification record, JSON-able via to_dict."""

    family: str
    instance: dict
    seed: int
    trials: int
    rejected: bool = False
    reject_reason: str = ""
    hilbert: Optional[tuple] = None
    ci_ok: Optional[bool] = None
    slp_verdict: Optional[str] = None
    sl_element: Optional[str] = None
    jordan: Optional[tuple] = None
    dual: Optional[tuple] = None
    csm_z: Optional[str] = None
    csm_ok: Optional[bool] = None
    csm_module_dims: Optional[tuple] = None
    csm_structure_ok: Optional[bool] = None
    l11_full_rank: Optional[bool] = None
    counterexample: bool = False
    notes: tuple = ()
    minors_gate: Optional[str] = None
    elapsed_ms: Optional[float] = None

    @property
    def certified(self):
        return self.slp_verdict == Verdict.SLP_CERTIFIED.value

    @property
    def passed(self):
        if self.rejected or self.counterexample:
            return False
        if not self.certified:
            return False
        if self.csm_ok is False:
            return False
        return True

    def to_dict(self):
        return {
            "family": self.family,
            "instance": self.instance,
            "seed": self.seed,
            "trials": self.trials,
            "rejected": self.rejected,
            "reject_reason": self.reject_reason,
            "hilbert": None if self.hilbert is None else list(self.hilbert),
            "ci_ok": self.ci_ok,
            "slp_verdict": self.slp_verdict,
            "sl_element": self.sl_element,
            "jordan": None if self.jordan is None else list(self.jordan),
            "dual": None if self.dual is None else list(self.dual),
            "csm_z": self.csm_z,
            "csm_ok": self.csm_ok,
            "csm_module_dims": (
                None
                if self.csm_module_dims is None
                else [list(d) for d in self.csm_module_dims]
            ),
            "csm_structure_ok": self.csm_structure_ok,
            "l11_full_rank": self.l11_full_rank,
            "counterexample": self.counterexample,
            "notes": list(self.notes),
            "minors_gate": self.minors_gate,
            "elapsed_ms": self.elapsed_ms,
        }


def _run_slp_search(verdict, algebra, trials, seed):
    from .jordan import find_sl_element

    res = find_sl_element(algebra, trials=trials, seed=seed)
    if res is None:
        verdict.slp_verdict = "not_found"
        verdict.notes += (
            "no SL element within %d trials (probabilistic, not a disproof)" % trials,
        )
        return
    z, report = res
    verdict.slp_verdict = report.verdict.value
    verdict.sl_element = str(z)
    verdict.jordan = tuple(report.jordan_type) if report.jordan_type else None
    verdict.dual = tuple(report.dual_of_hilbert) if report.dual_of_hilbert else None


def verify_triangular(inst, trials=3, seed=0, minors="all"):
    """Gate a triangular instance on the principal-minor criterion, then
    certify the strong Lefschetz property and check that every central
    simple module of (A, x_1) admits a Lefschetz element."""
    t0 = time.perf_counter()
    v = FamilyVerdict(
        family="triangular",
        instance=inst.to_dict(),
        seed=seed,
        trials=trials,
        minors_gate=minors,
    )
    if not ci_minors_check(inst.coefficient_matrix(), mode=minors):
        v.rejected = True
        v.reject_reason = "a principal minor vanishes: not a complete intersection"
        v.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
        return v
    try:
        algebra = build_algebra(inst.n, inst.field, build_triangular(inst))
    except NotArtinianError as e:
        v.counterexample = True
        v.notes += ("passed the minors gate but is not Artinian: %s" % e,)
        v.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
        return v
    v.hilbert = algebra.hilbert_function()
    v.ci_ok = ci_hilbert_certificate(algebra, [d + 1 for d in inst.degrees])
    if not v.ci_ok:
        v.counterexample = True
        v.notes += ("Hilbert function does not match the Koszul series",)
        v.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
        return v
    _run_slp_search(v, algebra, trials, derive_seed(seed, "slp"))
    x1 = LinearForm(inst.field, [1] + [0] * (inst.n - 1))
    ok, _reports, chain = all_csm_have_slp(
        algebra, x1, trials=trials, seed=derive_seed(seed, "csm")
    )
    v.csm_z = str(x1)
    v.csm_ok = ok
    v.csm_module_dims = chain.module_dims()
    v.csm_structure_ok = last_csm_check(chain)
    if not v.csm_structure_ok:
        v.counterexample = True
        v.notes += ("last central simple module failed its structural re-derivation",)
    if not ok:
        v.notes += (
            "a central simple module had no SL element within %d trials" % trials,
        )
    v.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
    return v


def verify_generic_products(inst, algebra=None, trials=3, seed=0):
    """Certify the CI property and the strong Lefschetz property of a
    generic-products instance; also record whether the first linear factor
    itself passes the full-rank profile (the generic-element behaviour)."""
    t0 = time.perf_counter()
    v = FamilyVerdict(
        family="generic-products",
        instance=inst.to_dict(),
        seed=seed,
        trials=trials,
    )
    if algebra is None:
        try:
            algebra = build_algebra(inst.n, inst.field, inst.generators())
        except NotArtinianError:
            v.rejected = True
            v.reject_reason = "degenerate coefficients: quotient is not Artinian"
            v.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
            return v
    v.hilbert = algebra.hilbert_function()
    v.ci_ok = ci_hilbert_certificate(algebra, inst.generator_degrees())
    if not v.ci_ok:
        # an Artinian quotient by n forms in n variables is always a CI,
        # so a mismatch here contradicts the Koszul computation
        v.counterexample = True
        v.notes += ("Artinian build contradicts the Koszul Hilbert series",)
        v.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
        return v
    _run_slp_search(v, algebra, trials, derive_seed(seed, "slp"))
    first = inst.first_factor()
    profile = full_rank_profile(algebra, first)
    v.l11_full_rank = profile.verdict == Verdict.SLP_HOLDS_FOR_ELEMENT
    if not v.l11_full_rank:
        v.notes += ("first linear factor is not itself a Lefschetz element",)
    v.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
    return v

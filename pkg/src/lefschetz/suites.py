"""Randomized verification suites: batches of seeded instances for the two
families, the Lefschetz/central-simple-module cross-check, and the
dual-partition upper bound on Jordan types.

Every suite is reproducible from (config, seed); reports carry the PRNG
header and are deterministic apart from the timing fields.
"""

import time
from dataclasses import dataclass, field as dc_field

from .scalar import RATIONALS
from .poly import LinearForm, Poly, monomials_of_degree
from .graded import build_algebra
from .jordan import (
    Order,
    compare_partitions,
    dual_partition,
    hilbert_partition,
    is_unimodal,
    jordan_type,
)
from .csm import slp_csm_crosscheck
from .families import (
    TriangularInstance,
    build_generic_products,
    build_triangular,
    ci_minors_check,
    verify_generic_products,
    verify_triangular,
)
from .rand import derive_rng, derive_seed, prng_header

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_WARN = 3


@dataclass
class SuiteResult:
    name: str
    config: dict
    header: dict
    rows: list
    passed: int
    warned: int
    failed: int
    counterexamples: list
    elapsed_ms: float
    extra: dict = dc_field(default_factory=dict)

    @property
    def exit_code(self):
        if self.failed:
            return EXIT_COUNTEREXAMPLE
        if self.warned:
            return EXIT_WARN
        return EXIT_OK

    def to_dict(self):
        return {
            "suite": self.name,
            "config": self.config,
            "header": self.header,
            "counts": {
                "total": len(self.rows),
                "passed": self.passed,
                "warned": self.warned,
                "failed": self.failed,
            },
            "extra": self.extra,
            "counterexamples": self.counterexamples,
            "rows": self.rows,
            "elapsed_ms": self.elapsed_ms,
        }


# ---------------------------------------------------------------------------
# triangular family


@dataclass(frozen=True)
class TriangularSuiteConfig:
    count: int = 100
    seed: int = 0
    n_choices: tuple = (2, 3, 4)
    d_choices: tuple = (1, 2, 3)
    coeff_lo: int = -50
    coeff_hi: int = 50
    trials: int = 3
    minors: str = "all"
    field: object = RATIONALS

    def to_dict(self):
        return {
            "count": self.count,
            "seed": self.seed,
            "n_choices": list(self.n_choices),
            "d_choices": list(self.d_choices),
            "coeff_range": [self.coeff_lo, self.coeff_hi],
            "trials": self.trials,
            "minors": self.minors,
            "field": self.field.tag(),
        }


def sample_triangular(rng, n, d_choices, lo, hi, field, minors="all", max_draws=500):
    """Draw a triangular instance whose coefficient matrix passes the minors
    gate; returns (instance, draws)."""
    degrees = tuple(rng.choice(d_choices) for _ in range(n))
    for draw in range(1, max_draws + 1):
        rows = []
        for i in range(n):
            width = n if i == n - 1 else i + 2
            row = [rng.randint(lo, hi) for _ in range(width)] + [0] * (n - width)
            rows.append(row)
        inst = TriangularInstance.from_rows(degrees, rows, field)
        if ci_minors_check(inst.coefficient_matrix(), mode=minors):
            return inst, draw
    raise RuntimeError("no gate-passing coefficient matrix in %d draws" % max_draws)


def run_triangular_suite(cfg):
    t0 = time.perf_counter()
    rows, counterexamples = [], []
    passed = warned = failed = 0
    for idx in range(cfg.count):
        rng = derive_rng(cfg.seed, "triangular-suite", idx)
        n = rng.choice(cfg.n_choices)
        inst, draws = sample_triangular(
            rng, n, cfg.d_choices, cfg.coeff_lo, cfg.coeff_hi, cfg.field, cfg.minors
        )
        verdict = verify_triangular(
            inst,
            trials=cfg.trials,
            seed=derive_seed(cfg.seed, "triangular-verify", idx),
            minors=cfg.minors,
        )
        row = verdict.to_dict()
        row["index"] = idx
        row["gate_draws"] = draws
        rows.append(row)
        if verdict.counterexample:
            failed += 1
            counterexamples.append(row)
        elif verdict.passed:
            passed += 1
        else:
            warned += 1
    return SuiteResult(
        name="triangular",
        config=cfg.to_dict(),
        header=prng_header(cfg.seed),
        rows=rows,
        passed=passed,
        warned=warned,
        failed=failed,
        counterexamples=counterexamples,
        elapsed_ms=round((time.perf_counter() - t0) * 1000, 1),
    )


# ---------------------------------------------------------------------------
# generic products family


@dataclass(frozen=True)
class GenericSuiteConfig:
    count: int = 50
    seed: int = 0
    n_choices: tuple = (2, 3)
    max_factor_count: int = 3
    max_gen_degree: int = 7
    coeff_range: int = 1000
    trials: int = 3
    max_retries: int = 5
    field: object = RATIONALS

    def to_dict(self):
        return {
            "count": self.count,
            "seed": self.seed,
            "n_choices": list(self.n_choices),
            "max_factor_count": self.max_factor_count,
            "max_gen_degree": self.max_gen_degree,
            "coeff_range": self.coeff_range,
            "trials": self.trials,
            "max_retries": self.max_retries,
            "field": self.field.tag(),
        }


def sample_generic_shape(rng, n, max_factor_count, max_gen_degree):
    """Factor counts and multiplicities with each generator degree in
    [factor count, max_gen_degree]."""
    factor_counts = []
    multiplicities = []
    for _ in range(n):
        m = rng.randint(1, max_factor_count)
        total = rng.randint(m, max_gen_degree)
        parts = [1] * m
        for _ in range(total - m):
            parts[rng.randrange(m)] += 1
        factor_counts.append(m)
        multiplicities.append(tuple(parts))
    return tuple(factor_counts), tuple(multiplicities)


def run_generic_suite(cfg):
    t0 = time.perf_counter()
    rows, counterexamples = [], []
    passed = warned = failed = 0
    l11_passes = 0
    for idx in range(cfg.count):
        rng = derive_rng(cfg.seed, "generic-suite", idx)
        n = rng.choice(cfg.n_choices)
        factor_counts, multiplicities = sample_generic_shape(
            rng, n, cfg.max_factor_count, cfg.max_gen_degree
        )
        inst, algebra = build_generic_products(
            n,
            factor_counts,
            multiplicities,
            seed=derive_seed(cfg.seed, "generic-build", idx),
            coeff_range=cfg.coeff_range,
            field=cfg.field,
            max_retries=cfg.max_retries,
        )
        verdict = verify_generic_products(
            inst,
            algebra=algebra,
            trials=cfg.trials,
            seed=derive_seed(cfg.seed, "generic-verify", idx),
        )
        row = verdict.to_dict()
        row["index"] = idx
        rows.append(row)
        if verdict.l11_full_rank:
            l11_passes += 1
        if verdict.counterexample:
            failed += 1
            counterexamples.append(row)
        elif verdict.rejected or not verdict.certified or not verdict.ci_ok:
            warned += 1
        else:
            passed += 1
    return SuiteResult(
        name="generic-products",
        config=cfg.to_dict(),
        header=prng_header(cfg.seed),
        rows=rows,
        passed=passed,
        warned=warned,
        failed=failed,
        counterexamples=counterexamples,
        elapsed_ms=round((time.perf_counter() - t0) * 1000, 1),
        extra={"l11_full_rank_count": l11_passes},
    )


# ---------------------------------------------------------------------------
# mixed CI sampling shared by the cross-check and bound suites


def sample_monomial_ci(rng, n_choices, dim_cap, max_degree=5):
    """Exponents for a monomial complete intersection with product of
    degrees at most dim_cap."""
    for _ in range(200):
        n = rng.choice(n_choices)
        exps = [rng.randint(2, max_degree) for _ in range(n)]
        dim = 1
        for e in exps:
            dim *= e
        if dim <= dim_cap:
            return n, tuple(exps)
    return 2, (2, 2)


def monomial_ci_algebra(field, exponents):
    n = len(exponents)
    gens = [Poly.variable(field, n, i) ** e for i, e in enumerate(exponents)]
    return build_algebra(n, field, gens)


def _mixed_instance(rng, field, dim_cap, seed, kind):
    """One CI algebra of the given kind ('monomial', 'triangular',
    'generic'), dimension-capped.  Returns (tag dict, algebra, extra_z)."""
    if kind == "monomial":
        n, exps = sample_monomial_ci(rng, (1, 2, 3), dim_cap)
        algebra = monomial_ci_algebra(field, exps)
        return {"kind": "monomial", "exponents": list(exps)}, algebra, None
    if kind == "triangular":
        for _ in range(200):
            n = rng.choice((2, 3))
            inst, _ = sample_triangular(rng, n, (1, 2), -50, 50, field)
            dim = 1
            for d in inst.degrees:
                dim *= d + 1
            if dim <= dim_cap:
                break
        algebra = build_algebra(inst.n, field, build_triangular(inst))
        return {"kind": "triangular", "instance": inst.to_dict()}, algebra, None
    # generic products
    for _ in range(200):
        n = rng.choice((2, 3))
        factor_counts, multiplicities = sample_generic_shape(rng, n, 2, 4)
        dim = 1
        for ds in multiplicities:
            dim *= sum(ds)
        if dim <= dim_cap:
            break
    inst, algebra = build_generic_products(
        n, factor_counts, multiplicities, seed=seed, field=field
    )
    return (
        {"kind": "generic-products", "instance": inst.to_dict()},
        algebra,
        inst.first_factor(),
    )


# ---------------------------------------------------------------------------
# cross-check suite


@dataclass(frozen=True)
class CrosscheckSuiteConfig:
    count: int = 25
    seed: int = 0
    dim_cap: int = 60
    trials: int = 3
    candidates: int = 5
    field: object = RATIONALS

    def to_dict(self):
        return {
            "count": self.count,
            "seed": self.seed,
            "dim_cap": self.dim_cap,
            "trials": self.trials,
            "candidates": self.candidates,
            "field": self.field.tag(),
        }


def run_crosscheck_suite(cfg):
    t0 = time.perf_counter()
    rows, counterexamples = [], []
    passed = warned = failed = 0
    kinds = ("monomial", "triangular", "generic")
    for idx in range(cfg.count):
        rng = derive_rng(cfg.seed, "crosscheck-suite", idx)
        tag, algebra, extra_z = _mixed_instance(
            rng,
            cfg.field,
            cfg.dim_cap,
            derive_seed(cfg.seed, "crosscheck-inst", idx),
            kinds[idx % 3],
        )
        verdict = slp_csm_crosscheck(
            algebra,
            trials=cfg.trials,
            seed=derive_seed(cfg.seed, "crosscheck-run", idx),
            candidates=cfg.candidates,
            extra_candidates=(extra_z,) if extra_z else (),
        )
        row = {
            "index": idx,
            "instance": tag,
            "hilbert": list(algebra.hilbert_function()),
            **verdict.to_dict(),
        }
        rows.append(row)
        if not verdict.agree:
            if verdict.probabilistic_negative:
                warned += 1
                row["note"] = "disagreement involves a probabilistic negative"
            else:
                failed += 1
                counterexamples.append(row)
        else:
            passed += 1
    return SuiteResult(
        name="crosscheck",
        config=cfg.to_dict(),
        header=prng_header(cfg.seed),
        rows=rows,
        passed=passed,
        warned=warned,
        failed=failed,
        counterexamples=counterexamples,
        elapsed_ms=round((time.perf_counter() - t0) * 1000, 1),
    )


# ---------------------------------------------------------------------------
# dual-partition bound suite


@dataclass(frozen=True)
class BoundSuiteConfig:
    count: int = 200
    seed: int = 0
    dim_cap: int = 32
    field: object = RATIONALS

    def to_dict(self):
        return {
            "count": self.count,
            "seed": self.seed,
            "dim_cap": self.dim_cap,
            "field": self.field.tag(),
        }


def _bound_element(rng, algebra, which):
    """A homogeneous test element of degree 1 or 2, including the degenerate
    choice x_1."""
    field, n = algebra.field, algebra.n
    if which == 0:
        return Poly.variable(field, n, 0)
    if which == 1:
        coeffs = [rng.randint(-9, 9) for _ in range(n)]
        if not any(coeffs):
            coeffs[0] = 1
        return LinearForm(field, coeffs).to_poly()
    if which == 2:
        terms = {}
        for m in monomials_of_degree(n, 2):
            c = rng.randint(-9, 9)
            if c:
                terms[m] = c
        if not terms:
            terms[monomials_of_degree(n, 2)[0]] = 1
        return Poly(field, n, terms)
    coeffs = [rng.randint(-9, 9) for _ in range(n)]
    if not any(coeffs):
        coeffs[0] = 1
    return LinearForm(field, coeffs).to_poly() ** 2


def run_bound_suite(cfg):
    """dual(Hilbert partition) must dominate the Jordan type of every
    homogeneous element, in the part-count-first total order, whenever the
    Hilbert function is unimodal.  A violation is a hard counterexample."""
    t0 = time.perf_counter()
    rows, counterexamples = [], []
    passed = failed = 0
    kinds = ("monomial", "triangular", "generic")
    for idx in range(cfg.count):
        rng = derive_rng(cfg.seed, "bound-suite", idx)
        tag, algebra, _ = _mixed_instance(
            rng,
            cfg.field,
            cfg.dim_cap,
            derive_seed(cfg.seed, "bound-inst", idx),
            kinds[idx % 3],
        )
        h = algebra.hilbert_function()
        assert is_unimodal(h), "complete intersections have unimodal h"
        y = _bound_element(rng, algebra, idx % 4)
        jt = jordan_type(algebra, y)
        dual = dual_partition(hilbert_partition(algebra))
        cmp = compare_partitions(dual, jt)
        ok = cmp in (Order.GREATER, Order.EQUAL)
        row = {
            "index": idx,
            "instance": tag,
            "hilbert": list(h),
            "element": str(y),
            "jordan": list(jt),
            "dual_of_hilbert": list(dual),
            "bound_holds": ok,
        }
        rows.append(row)
        if ok:
            passed += 1
        else:
            failed += 1
            counterexamples.append(row)
    return SuiteResult(
        name="bound",
        config=cfg.to_dict(),
        header=prng_header(cfg.seed),
        rows=rows,
        passed=passed,
        warned=0,
        failed=failed,
        counterexamples=counterexamples,
        elapsed_ms=round((time.perf_counter() - t0) * 1000, 1),
    )

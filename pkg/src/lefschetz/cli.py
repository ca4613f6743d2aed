"""Command-line interface.

Subcommands: hilbert, jordan, slp, csm, colon, verify-thm31, verify-thm41,
suite.  Exit codes: 0 all pass, 1 hard invariant failure (potential
counterexample, instance dumped for replay), 2 usage error, 3 probabilistic
non-certification only.
"""

import argparse
import csv as csv_module
import io
import json
import sys

from .scalar import FieldSpec, RATIONALS
from .poly import FactoredGenerator, LinearForm, PolyParseError, parse_poly
from .graded import NotArtinianError, build_algebra, ideal_colon
from .jordan import Verdict, find_sl_element, jordan_type
from .csm import csm_chain, last_csm_check
from .families import (
    GenericProductsInstance,
    TriangularInstance,
    build_generic_products,
    verify_generic_products,
    verify_triangular,
)
from .rand import prng_header
from .suites import (
    BoundSuiteConfig,
    CrosscheckSuiteConfig,
    GenericSuiteConfig,
    TriangularSuiteConfig,
    run_bound_suite,
    run_crosscheck_suite,
    run_generic_suite,
    run_triangular_suite,
)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_WARN = 3


class UsageError(Exception):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e))
    except json.JSONDecodeError as e:
        raise UsageError("bad JSON in %s: %s" % (path, e))


def _field_from(data, override):
    if override is not None:
        return FieldSpec.parse(override)
    tag = data.get("field", "Q")
    return FieldSpec.parse(tag)


def load_instance(path, field_override=None, vars_override=None):
    """Read an instance file and return (n, field, generators).

    Accepted shapes: {"n", "field", "generators": [{"factors": [{"coeffs",
    "power"}, ...]}]} with generators as factored linear forms, or
    {"n", "field", "polys": ["x1^2*(x1+2*x2)", ...]} in the text grammar."""
    data = _load_json(path)
    field = _field_from(data, field_override)
    n = vars_override or data.get("n")
    if "generators" in data:
        gens = []
        for g in data["generators"]:
            factors = []
            for f in g["factors"]:
                coeffs = f["coeffs"]
                if n is None:
                    n = len(coeffs)
                factors.append((LinearForm(field, coeffs), int(f.get("power", 1))))
            gens.append(FactoredGenerator(factors))
        if not gens:
            raise UsageError("no generators in %s" % path)
        return n, field, gens
    if "polys" in data:
        if n is None:
            raise UsageError("instance %s needs 'n' (or pass --vars)" % path)
        try:
            gens = [parse_poly(text, n, field) for text in data["polys"]]
        except PolyParseError as e:
            raise UsageError(str(e))
        if not gens:
            raise UsageError("no polynomials in %s" % path)
        return n, field, gens
    raise UsageError("instance %s has neither 'generators' nor 'polys'" % path)


def _build(args):
    n, field, gens = load_instance(args.instance, args.field, args.vars)
    try:
        algebra = build_algebra(n, field, gens)
    except NotArtinianError as e:
        raise UsageError("not Artinian: %s" % e)
    return algebra


def _parse_element(text, n, field):
    try:
        return parse_poly(text, n, field)
    except PolyParseError as e:
        raise UsageError(str(e))


def _parse_linear_form(text, n, field):
    p = _parse_element(text, n, field)
    if p.is_zero() or not p.is_homogeneous() or p.degree() != 1:
        raise UsageError("%r is not a nonzero linear form" % text)
    coeffs = [field.zero] * n
    for mono, c in p.terms.items():
        coeffs[mono.index(1)] = c
    return LinearForm(field, coeffs)


def _emit(args, payload, text_lines):
    if getattr(args, "json", False):
        out = json.dumps(payload, sort_keys=True, indent=2)
    else:
        out = "\n".join(text_lines)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def cmd_hilbert(args):
    algebra = _build(args)
    h = list(algebra.hilbert_function())
    payload = {
        "hilbert": h,
        "socle_degree": algebra.socle_degree,
        "dimension": algebra.total_dim(),
        "field": algebra.field.tag(),
    }
    _emit(args, payload, [
        "hilbert function: %s" % h,
        "socle degree: %d, total dimension: %d" % (algebra.socle_degree, algebra.total_dim()),
    ])
    return EXIT_OK


def cmd_jordan(args):
    algebra = _build(args)
    y = _parse_element(args.element, algebra.n, algebra.field)
    try:
        jt = jordan_type(algebra, y)
    except ValueError as e:
        raise UsageError(str(e))
    payload = {
        "element": str(y),
        "jordan_type": list(jt),
        "hilbert": list(algebra.hilbert_function()),
    }
    _emit(args, payload, ["jordan type of (%s): %s" % (y, jt)])
    return EXIT_OK


def cmd_slp(args):
    algebra = _build(args)
    res = find_sl_element(algebra, trials=args.trials, seed=args.seed)
    header = prng_header(args.seed)
    if res is None:
        payload = {
            "verdict": "not_found",
            "note": "no SL element within %d trials; not a disproof" % args.trials,
            "hilbert": list(algebra.hilbert_function()),
            **header,
        }
        _emit(args, payload, [
            "WARN: no SL element found in %d trials (probabilistic, not a disproof)"
            % args.trials,
        ])
        return EXIT_WARN
    z, report = res
    payload = {"hilbert": list(algebra.hilbert_function()), **report.to_dict(), **header}
    _emit(args, payload, [
        "verdict: %s" % report.verdict.value,
        "element: %s" % z,
        "jordan type: %s   dual of hilbert: %s" % (report.jordan_type, report.dual_of_hilbert),
    ])
    return EXIT_OK if report.verdict == Verdict.SLP_CERTIFIED else EXIT_WARN


def cmd_csm(args):
    algebra = _build(args)
    z = _parse_linear_form(args.z, algebra.n, algebra.field)
    chain = csm_chain(algebra, z)
    structure_ok = last_csm_check(chain)
    payload = {
        "z": str(z),
        "p": chain.p,
        "q": chain.q,
        "s": chain.s,
        "module_dims": [list(d) for d in chain.module_dims()],
        "chain_dims": [list(c.dims()) for c in chain.chain],
        "structure_ok": structure_ok,
    }
    lines = [
        "z = %s: p = %d, q = %d, %d central simple module(s)" % (z, chain.p, chain.q, chain.s),
    ]
    for i, dims in enumerate(chain.module_dims()):
        lines.append("  U_%d dims: %s" % (i + 1, list(dims)))
    lines.append("structural re-derivation of U_s: %s" % ("ok" if structure_ok else "FAILED"))
    _emit(args, payload, lines)
    return EXIT_OK if structure_ok else EXIT_COUNTEREXAMPLE


def cmd_colon(args):
    algebra = _build(args)
    f = _parse_element(args.f, algebra.n, algebra.field)
    try:
        sub = ideal_colon(algebra, f)
    except ValueError as e:
        raise UsageError(str(e))
    bases = {
        d: [str(algebra.lift(d, v)) for v in sub.basis_vectors(d)]
        for d in range(algebra.socle_degree + 1)
        if sub.dim(d)
    }
    payload = {"f": str(f), "dims": list(sub.dims()), "bases": bases}
    lines = ["(0 : %s) dims: %s" % (f, list(sub.dims()))]
    for d, vecs in bases.items():
        lines.append("  degree %d: %s" % (d, ", ".join(vecs)))
    _emit(args, payload, lines)
    return EXIT_OK


def _verdict_exit(verdict):
    if verdict.counterexample:
        return EXIT_COUNTEREXAMPLE
    if verdict.rejected:
        return EXIT_OK
    if not verdict.passed:
        return EXIT_WARN
    return EXIT_OK


def _emit_verdict(args, verdict):
    payload = {**verdict.to_dict(), **prng_header(args.seed)}
    lines = ["family: %s" % verdict.family]
    if verdict.rejected:
        lines.append("REJECTED: %s" % verdict.reject_reason)
    else:
        lines.append("hilbert: %s" % (list(verdict.hilbert or ()),))
        lines.append("slp verdict: %s (element %s)" % (verdict.slp_verdict, verdict.sl_element))
        if verdict.jordan:
            lines.append("jordan: %s  dual: %s" % (list(verdict.jordan), list(verdict.dual)))
        if verdict.csm_ok is not None:
            lines.append("all central simple modules Lefschetz: %s" % verdict.csm_ok)
        if verdict.l11_full_rank is not None:
            lines.append("first linear factor full-rank: %s" % verdict.l11_full_rank)
    for note in verdict.notes:
        lines.append("note: %s" % note)
    if verdict.counterexample:
        lines.append("COUNTEREXAMPLE CANDIDATE - instance dumped to stderr")
        print(json.dumps(verdict.to_dict(), sort_keys=True), file=sys.stderr)
    _emit(args, payload, lines)
    return _verdict_exit(verdict)


def cmd_verify_thm31(args):
    data = _load_json(args.instance)
    field = _field_from(data, args.field)
    try:
        inst = TriangularInstance.from_rows(data["degrees"], data["matrix"], field)
    except (KeyError, ValueError) as e:
        raise UsageError("bad triangular instance: %s" % e)
    verdict = verify_triangular(inst, trials=args.trials, seed=args.seed, minors=args.minors)
    return _emit_verdict(args, verdict)


def cmd_verify_thm41(args):
    data = _load_json(args.instance)
    field = _field_from(data, args.field)
    try:
        n = data["n"]
        counts = tuple(data["factor_counts"])
        mults = tuple(tuple(d) for d in data["multiplicities"])
        if "coefficients" in data:
            coeffs = tuple(
                tuple(tuple(field.scalar(c) for c in vec) for vec in gen)
                for gen in data["coefficients"]
            )
            inst = GenericProductsInstance(
                n=n,
                factor_counts=counts,
                multiplicities=mults,
                coefficients=coeffs,
                field=field,
                seed=data.get("seed"),
            )
            algebra = None
        else:
            inst, algebra = build_generic_products(
                n,
                counts,
                mults,
                seed=data.get("seed", args.seed),
                coeff_range=data.get("coeff_range", 1000),
                field=field,
            )
    except (KeyError, ValueError) as e:
        raise UsageError("bad generic-products instance: %s" % e)
    verdict = verify_generic_products(
        inst, algebra=algebra, trials=args.trials, seed=args.seed
    )
    return _emit_verdict(args, verdict)


_CSV_COLUMNS = [
    "suite", "index", "family", "kind", "hilbert", "rejected", "ci_ok",
    "slp_verdict", "sl_element", "jordan", "csm_ok", "l11_full_rank",
    "agree", "bound_holds", "counterexample", "elapsed_ms",
]


def _suite_csv(results):
    buf = io.StringIO()
    writer = csv_module.DictWriter(buf, fieldnames=_CSV_COLUMNS, extrasaction="ignore")
    writer.writeheader()
    for res in results:
        for row in res.rows:
            flat = dict(row)
            flat["suite"] = res.name
            inst = row.get("instance") or {}
            flat.setdefault("family", inst.get("family") or inst.get("kind"))
            flat.setdefault("kind", inst.get("kind"))
            for key in ("hilbert", "jordan"):
                if isinstance(flat.get(key), list):
                    flat[key] = " ".join(str(x) for x in flat[key])
            writer.writerow(flat)
    return buf.getvalue()


def cmd_suite(args):
    field = FieldSpec.parse(args.field) if args.field else RATIONALS
    chosen = args.suite
    results = []
    if chosen in ("thm31", "all"):
        cfg = TriangularSuiteConfig(
            count=args.count or 100, seed=args.seed, trials=args.trials,
            minors=args.minors, field=field,
        )
        results.append(run_triangular_suite(cfg))
    if chosen in ("thm41", "all"):
        cfg = GenericSuiteConfig(
            count=args.count or 50, seed=args.seed, trials=args.trials, field=field,
        )
        results.append(run_generic_suite(cfg))
    if chosen in ("crosscheck", "all"):
        cfg = CrosscheckSuiteConfig(
            count=args.count or 25, seed=args.seed, trials=args.trials, field=field,
        )
        results.append(run_crosscheck_suite(cfg))
    if chosen in ("bound", "all"):
        cfg = BoundSuiteConfig(count=args.count or 200, seed=args.seed, field=field)
        results.append(run_bound_suite(cfg))
    if not results:
        raise UsageError("unknown suite %r" % chosen)

    if args.csv:
        out = _suite_csv(results)
    elif args.json:
        out = json.dumps([r.to_dict() for r in results], sort_keys=True, indent=2)
    else:
        lines = []
        for r in results:
            lines.append(
                "%s: %d passed, %d warned, %d failed (%.0f ms)"
                % (r.name, r.passed, r.warned, r.failed, r.elapsed_ms)
            )
            for extra, val in r.extra.items():
                lines.append("  %s: %s" % (extra, val))
        out = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out if out.endswith("\n") else out + "\n")
    else:
        print(out, end="" if out.endswith("\n") else "\n")

    for r in results:
        for ce in r.counterexamples:
            print(json.dumps(ce, sort_keys=True), file=sys.stderr)
    code = max(r.exit_code for r in results)
    return code


def _add_common(sub, instance=True):
    if instance:
        sub.add_argument("instance", help="instance JSON file")
    sub.add_argument("--field", help="q or fp:<prime> (overrides the file)")
    sub.add_argument("--seed", type=int, default=0, help="64-bit PRNG seed")
    sub.add_argument("--trials", type=int, default=3, help="random element trials")
    sub.add_argument("--vars", type=int, help="variable count for 'polys' files")
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--out", help="write the report to a file instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lefschetz",
        description="Exact verification of Lefschetz properties for Artinian "
        "algebras cut out by products of linear forms.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("hilbert", help="Hilbert function of an instance")
    _add_common(p)
    p.set_defaults(func=cmd_hilbert)

    p = subs.add_parser("jordan", help="Jordan type of a multiplication map")
    _add_common(p)
    p.add_argument("--element", required=True, help="homogeneous element, e.g. 'x1+x2'")
    p.set_defaults(func=cmd_jordan)

    p = subs.add_parser("slp", help="search and certify a strong Lefschetz element")
    _add_common(p)
    p.set_defaults(func=cmd_slp)

    p = subs.add_parser("csm", help="central simple modules of (A, z)")
    _add_common(p)
    p.add_argument("--z", default="x1", help="linear form (default x1)")
    p.set_defaults(func=cmd_csm)

    p = subs.add_parser("colon", help="annihilator (0 : f)")
    _add_common(p)
    p.add_argument("--f", required=True, help="homogeneous polynomial")
    p.set_defaults(func=cmd_colon)

    p = subs.add_parser("verify-thm31", help="verify one triangular-family instance")
    _add_common(p)
    p.add_argument(
        "--minors",
        choices=("all", "leading"),
        default="all",
        help="principal-minor gate: every principal minor (default) or leading only",
    )
    p.set_defaults(func=cmd_verify_thm31)

    p = subs.add_parser("verify-thm41", help="verify one generic-products instance")
    _add_common(p)
    p.set_defaults(func=cmd_verify_thm41)

    p = subs.add_parser("suite", help="run a randomized verification suite")
    _add_common(p, instance=False)
    p.add_argument(
        "--suite",
        choices=("thm31", "thm41", "crosscheck", "bound", "all"),
        default="all",
    )
    p.add_argument("--count", type=int, help="instances per suite")
    p.add_argument("--csv", action="store_true", help="CSV, one row per instance")
    p.add_argument(
        "--minors",
        choices=("all", "leading"),
        default="all",
        help="principal-minor gate for the triangular suite",
    )
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


def run():  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    run()

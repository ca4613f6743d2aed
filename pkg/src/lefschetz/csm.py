"""The annihilator chain of a linear form, its central simple modules, and
the Gorenstein cross-check that the algebra has the strong Lefschetz
property exactly when some linear form makes all of them Lefschetz.
"""

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .poly import LinearForm, Poly
from .graded import (
    GradedModule,
    GradedSubspace,
    ideal_colon,
    principal_ideal,
    quotient_module,
)
from .jordan import LefschetzReport, find_sl_element
from .rand import derive_rng, derive_seed


class NotGorensteinError(Exception):
    """The socle/symmetry certificate for Gorenstein-ness failed."""


@dataclass
class CsmChain:
    """The descending chain (0:z^(p-i)) + (z) from A down to (z), with the
    nonzero successive quotients renamed U_1..U_s in chain order."""

    algebra: object
    z: LinearForm
    p: int
    q: int
    chain: tuple          # GradedSubspace values, length p + 1
    modules: tuple        # nonzero quotients, top first
    module_positions: tuple  # index i of each module's quotient C_i / C_{i+1}

    @property
    def s(self):
        return len(self.modules)

    def module_dims(self):
        return tuple(m.dims() for m in self.modules)


def _colon_powers(algebra, z):
    """Yields (k, (0 : z^k)) for k = 1, 2, ... until the colon is all of A."""
    zp = z.to_poly()
    full_dims = algebra.hilbert_function()
    power = zp
    k = 1
    while True:
        colon = ideal_colon(algebra, power)
        yield k, colon
        if colon.dims() == full_dims:
            return
        if k > algebra.socle_degree + 1:
            raise RuntimeError("colon chain failed to exhaust the algebra")
        power = power * zp
        k += 1


def csm_chain(algebra, z):
    """Build the central simple modules of (A, z) for a linear form z."""
    if not isinstance(z, LinearForm):
        raise TypeError("z must be a LinearForm")
    colons = {}
    for k, colon in _colon_powers(algebra, z):
        colons[k] = colon
    p = max(colons)
    zprincipal = principal_ideal(algebra, z.to_poly())
    chain = []
    for i in range(p):
        chain.append(colons[p - i].sum(zprincipal))
    chain.append(zprincipal)
    assert chain[0].dims() == algebra.hilbert_function(), "chain must start at A"

    q = None
    for k in range(1, p + 1):
        if colons[k].sum(zprincipal) != zprincipal:
            q = k
            break
    assert q is not None, "chain never leaves (z)"

    modules = []
    positions = []
    for i in range(p):
        u = quotient_module(chain[i], chain[i + 1])
        if not u.is_zero():
            modules.append(u)
            positions.append(i)
    return CsmChain(
        algebra=algebra,
        z=z,
        p=p,
        q=q,
        chain=tuple(chain),
        modules=tuple(modules),
        module_positions=tuple(positions),
    )


def last_csm_check(chain):
    """Re-derive the bottom module as ((0:z^q) + (z)) / (z) and compare it,
    as graded subquotient data, with the stored U_s."""
    if not chain.modules:
        return True
    algebra = chain.algebra
    zp = chain.z.to_poly()
    colon_q = ideal_colon(algebra, zp ** chain.q)
    zprincipal = principal_ideal(algebra, zp)
    expected = quotient_module(colon_q.sum(zprincipal), zprincipal)
    return chain.modules[-1] == expected


def all_csm_have_slp(algebra, z, trials=3, seed=0):
    """Search for a Lefschetz element on every central simple module of
    (A, z); returns (all_found, per-module reports, chain).  Reports are
    None for modules where no sampled element passed (not a disproof)."""
    chain = csm_chain(algebra, z)
    reports = []
    ok = True
    for idx, module in enumerate(chain.modules):
        res = find_sl_element(module, trials=trials, seed=derive_seed(seed, "csm", idx))
        if res is None:
            ok = False
            reports.append(None)
        else:
            reports.append(res[1])
    return ok, reports, chain


def gorenstein_certificate(algebra):
    """Necessary conditions used as a gate: one-dimensional top piece and a
    symmetric Hilbert function.  Sufficient for the complete intersections
    this package feeds in; raises NotGorensteinError otherwise."""
    h = algebra.hilbert_function()
    if h[-1] != 1 or list(h) != list(reversed(h)):
        raise NotGorensteinError(
            "Hilbert function %s fails the Gorenstein certificate" % (list(h),)
        )
    return True


@dataclass
class CrosscheckVerdict:
    """Outcome of comparing the two equivalent Lefschetz criteria."""

    slp_holds: bool
    slp_element: Optional[LinearForm]
    slp_report: Optional[LefschetzReport]
    csm_holds: bool
    csm_z: Optional[LinearForm]
    csm_reports: tuple
    agree: bool
    probabilistic_negative: bool
    candidates_tried: tuple = dc_field(default_factory=tuple)

    def to_dict(self):
        return {
            "slp_holds": self.slp_holds,
            "slp_element": None if self.slp_element is None else str(self.slp_element),
            "csm_holds": self.csm_holds,
            "csm_z": None if self.csm_z is None else str(self.csm_z),
            "agree": self.agree,
            "probabilistic_negative": self.probabilistic_negative,
            "candidates_tried": [str(c) for c in self.candidates_tried],
        }


def slp_csm_crosscheck(algebra, trials=3, seed=0, candidates=5, extra_candidates=()):
    """Independently evaluate (i) the algebra has a strong Lefschetz element
    and (ii) some linear form z makes every central simple module of (A, z)
    Lefschetz, then report agreement.  Negatives are probabilistic: they
    mean no sampled element or candidate worked within the budget.

    Candidate z list for (ii): the element found by (i) if any, then
    caller-supplied structured candidates (e.g. a generator's linear
    factor), then the variables, then random forms up to `candidates`."""
    gorenstein_certificate(algebra)
    field = algebra.field
    n = algebra.n

    res = find_sl_element(algebra, trials=trials, seed=derive_seed(seed, "slp"))
    slp_holds = res is not None
    slp_element, slp_report = res if res else (None, None)

    cand = []
    if slp_element is not None:
        cand.append(slp_element)
    cand.extend(extra_candidates)
    for i in range(n):
        coeffs = [0] * n
        coeffs[i] = 1
        cand.append(LinearForm(field, coeffs))
    rng = derive_rng(seed, "crosscheck-z")
    from .jordan import random_linear_form

    while len(cand) < candidates:
        cand.append(random_linear_form(rng, n, field))
    seen = set()
    cand = [z for z in cand if not (z in seen or seen.add(z))]

    csm_holds = False
    csm_z = None
    csm_reports = ()
    for j, z in enumerate(cand):
        ok, reports, _ = all_csm_have_slp(
            algebra, z, trials=trials, seed=derive_seed(seed, "crosscheck", j)
        )
        if ok:
            csm_holds = True
            csm_z = z
            csm_reports = tuple(reports)
            break
    agree = slp_holds == csm_holds
    return CrosscheckVerdict(
        slp_holds=slp_holds,
        slp_element=slp_element,
        slp_report=slp_report,
        csm_holds=csm_holds,
        csm_z=csm_z,
        csm_reports=csm_reports,
        agree=agree,
        probabilistic_negative=not (slp_holds and csm_holds),
        candidates_tried=tuple(cand),
    )

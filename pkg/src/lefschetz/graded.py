"""Artinian quotients A = R/I realized degree by degree: ideal spans,
standard-monomial bases, normal forms, Hilbert functions, colon ideals,
graded subspaces and subquotient modules.

No Groebner bases anywhere: each graded piece is handled by exact linear
algebra against the fixed monomial order from poly.monomials_of_degree.
"""

from math import comb

from .scalar import EchelonBasis, Matrix, kernel_basis, sparse
from .poly import (
    FactoredGenerator,
    Poly,
    monomial_index,
    monomials_of_degree,
    poly_from_vector,
)


class NotArtinianError(Exception):
    """The ideal's Hilbert function never reached zero below the degree cap."""


class ContainmentError(Exception):
    """Quotient requested of subspaces without the required containment."""


class ArtinianAlgebra:
    """A standard graded Artinian quotient, built by build_algebra.

    Per degree d = 0..socle_degree the object stores the reduced echelon
    span of the ideal, the standard monomials (non-pivot columns), and the
    Hilbert value.  Instances are immutable once built.
    """

    def __init__(self, n, field, generators, factored, socle_degree, hilbert, spans, standard):
        self.n = n
        self.field = field
        self.generators = tuple(generators)
        self.factored = tuple(factored)
        self.socle_degree = socle_degree
        self.hilbert = tuple(hilbert)
        self._spans = spans
        self._standard = standard
        self._std_index = [{m: i for i, m in enumerate(s)} for s in standard]

    # -- basic queries ------------------------------------------------

    def hilbert_function(self):
        return self.hilbert

    def dim(self, d):
        if 0 <= d <= self.socle_degree:
            return self.hilbert[d]
        return 0

    def total_dim(self):
        return sum(self.hilbert)

    def effective_range(self):
        return (0, self.socle_degree)

    def standard_monomials(self, d):
        if 0 <= d <= self.socle_degree:
            return self._standard[d]
        return ()

    def ideal_span(self, d):
        if 0 <= d <= self.socle_degree:
            return self._spans[d]
        raise ValueError("degree %d outside 0..%d" % (d, self.socle_degree))

    # -- normal forms ---------------------------------------------------

    def _nf_component(self, f_terms, d):
        """Standard-monomial coordinates of a degree-d term dict."""
        if d > self.socle_degree or not f_terms:
            return [self.field.zero] * self.dim(d)
        idx = monomial_index(self.n, d)
        residue = self._spans[d].reduce({idx[m]: c for m, c in f_terms.items()})
        sidx = self._std_index[d]
        mons = monomials_of_degree(self.n, d)
        out = [self.field.zero] * self.hilbert[d]
        for col, c in residue.items():
            out[sidx[mons[col]]] = c
        return out

    def normal_form(self, f):
        """Image of f in A as {degree: coordinates over standard monomials};
        degrees with zero image are omitted, so f in I gives {}."""
        if f.n != self.n or f.field != self.field:
            raise ValueError("polynomial does not live in this ring")
        out = {}
        for d, comp in f.homogeneous_components().items():
            coords = self._nf_component(comp.terms, d)
            if any(coords):
                out[d] = coords
        return out

    def contains_in_ideal(self, f):
        return not self.normal_form(f)

    def lift(self, d, coords):
        """Standard-monomial coordinates at degree d -> a representative Poly."""
        std = self.standard_monomials(d)
        if len(coords) != len(std):
            raise ValueError("coordinate length mismatch at degree %d" % d)
        return Poly(self.field, self.n, {m: c for m, c in zip(std, coords) if c})

    # -- multiplication ------------------------------------------------

    def multiplication_matrix(self, f, i):
        """Matrix of xf : A_i -> A_{i+deg f} in standard-monomial bases."""
        if f.is_zero() or not f.is_homogeneous():
            raise ValueError("need a nonzero homogeneous multiplier")
        k = f.degree()
        cols_n = self.dim(i)
        rows_n = self.dim(i + k)
        if cols_n == 0 or rows_n == 0:
            return Matrix.zeros(self.field, rows_n, cols_n)
        columns = [
            self._nf_component(f.shift_by(m).terms, i + k)
            for m in self.standard_monomials(i)
        ]
        return Matrix.from_columns(self.field, columns, rows_n)

    # protocol shared with GradedModule
    mult_map = multiplication_matrix

    def __repr__(self):
        return "ArtinianAlgebra(n=%d, %s, h=%s)" % (
            self.n,
            self.field.tag(),
            list(self.hilbert),
        )


def _normalize_generators(generators):
    gens, factored = [], []
    for g in generators:
        if isinstance(g, FactoredGenerator):
            factored.append(g)
            gens.append(g.expand())
        elif isinstance(g, Poly):
            factored.append(None)
            gens.append(g)
        else:
            raise TypeError("generator must be Poly or FactoredGenerator")
    return gens, factored


def build_algebra(n, field, generators, degree_cap=None):
    """Build R/(generators) degree by degree, stopping at the socle.

    Generators must be homogeneous of positive degree.  Raises
    NotArtinianError if the Hilbert function stays positive through
    degree_cap (default: 1 + sum of (deg g - 1), the complete-intersection
    socle bound plus one).
    """
    gens, factored = _normalize_generators(generators)
    if not gens:
        raise ValueError("need at least one generator")
    degs = []
    for g in gens:
        if g.n != n or g.field != field:
            raise ValueError("generator %s does not live in the given ring" % g)
        if g.is_zero():
            raise ValueError("zero generator")
        if not g.is_homogeneous():
            raise ValueError("non-homogeneous generator: %s" % g)
        d = g.degree()
        if d < 1:
            raise ValueError("generator of degree 0")
        degs.append(d)
    default_cap = 1 + sum(d - 1 for d in degs)
    cap = default_cap if degree_cap is None else degree_cap
    if cap < max(degs):
        raise ValueError("degree_cap %d below max generator degree %d" % (cap, max(degs)))

    by_degree = {}
    for g, d in zip(gens, degs):
        by_degree.setdefault(d, []).append(g)

    spans = [EchelonBasis(1, field)]
    standard = [((0,) * n,)]
    hilbert = [1]
    for d in range(1, cap + 1):
        mons = monomials_of_degree(n, d)
        idx = monomial_index(n, d)
        eb = EchelonBasis(len(mons), field)
        for g in by_degree.get(d, ()):
            eb.insert({idx[m]: c for m, c in g.terms.items()})
        prev = spans[d - 1]
        prev_mons = monomials_of_degree(n, d - 1)
        one = field.one
        for pivot, tail in sorted(prev.rows.items()):
            entries = [(prev_mons[pivot], one)]
            entries.extend((prev_mons[j], c) for j, c in tail.items())
            for k in range(n):
                vec = {}
                for m, c in entries:
                    shifted = m[:k] + (m[k] + 1,) + m[k + 1 :]
                    vec[idx[shifted]] = c
                eb.insert(vec)
        h = len(mons) - eb.rank
        if h == 0:
            socle = d - 1
            return ArtinianAlgebra(
                n, field, gens, factored, socle, hilbert, spans, standard
            )
        spans.append(eb)
        pivots = set(eb.rows)
        standard.append(tuple(m for i, m in enumerate(mons) if i not in pivots))
        hilbert.append(h)
    raise NotArtinianError(
        "Hilbert function still positive at degree %d (h=%s); "
        "not Artinian or degree_cap too small" % (cap, hilbert)
    )


def hilbert_function(algebra):
    return algebra.hilbert_function()


def normal_form(algebra, f):
    return algebra.normal_form(f)


def multiplication_matrix(algebra, f, i):
    return algebra.multiplication_matrix(f, i)


class GradedSubspace:
    """A graded subspace of an ArtinianAlgebra: one reduced-echelon basis per
    degree, in standard-monomial coordinates.  Equality is data equality."""

    __slots__ = ("ambient", "pieces")

    def __init__(self, ambient, pieces):
        self.ambient = ambient
        self.pieces = pieces  # list[EchelonBasis], length socle_degree + 1

    @classmethod
    def zero(cls, ambient):
        return cls(
            ambient,
            [
                EchelonBasis(ambient.dim(d), ambient.field)
                for d in range(ambient.socle_degree + 1)
            ],
        )

    @classmethod
    def full(cls, ambient):
        sub = cls.zero(ambient)
        one = ambient.field.one
        for d, eb in enumerate(sub.pieces):
            for i in range(ambient.dim(d)):
                eb.insert({i: one})
        return sub

    @classmethod
    def from_vectors(cls, ambient, vectors_by_degree):
        sub = cls.zero(ambient)
        for d, vecs in vectors_by_degree.items():
            if not 0 <= d <= ambient.socle_degree:
                raise ValueError("degree %d outside the ambient range" % d)
            for v in vecs:
                sub.pieces[d].insert(v if isinstance(v, dict) else sparse(v))
        return sub

    def dim(self, d):
        if 0 <= d <= self.ambient.socle_degree:
            return self.pieces[d].rank
        return 0

    def dims(self):
        return tuple(eb.rank for eb in self.pieces)

    def total_dim(self):
        return sum(eb.rank for eb in self.pieces)

    def is_zero(self):
        return all(eb.rank == 0 for eb in self.pieces)

    def piece(self, d):
        return self.pieces[d]

    def basis_vectors(self, d):
        return self.pieces[d].dense_rows()

    def _check_ambient(self, other):
        if self.ambient is not other.ambient:
            raise ValueError("subspaces of different ambient algebras")

    def sum(self, other):
        self._check_ambient(other)
        out = GradedSubspace(self.ambient, [eb.copy() for eb in self.pieces])
        for d, eb in enumerate(other.pieces):
            for pivot in eb.pivots():
                out.pieces[d].insert(eb.row_vector(pivot))
        return out

    def contains(self, other):
        self._check_ambient(other)
        return all(a.contains(b) for a, b in zip(self.pieces, other.pieces))

    def __eq__(self, other):
        return (
            isinstance(other, GradedSubspace)
            and self.ambient is other.ambient
            and self.pieces == other.pieces
        )

    def __repr__(self):
        return "GradedSubspace(dims=%s)" % (list(self.dims()),)


def subspace_sum(u, w):
    return u.sum(w)


def ideal_colon(algebra, f):
    """The annihilator (0 : f) as a graded subspace, computed per degree as
    the kernel of multiplication by f."""
    if f.is_zero() or not f.is_homogeneous() or f.degree() < 1:
        raise ValueError("need a homogeneous multiplier of positive degree")
    vectors = {}
    for d in range(algebra.socle_degree + 1):
        mat = algebra.multiplication_matrix(f, d)
        if mat.nrows == 0:
            vectors[d] = [
                {i: algebra.field.one} for i in range(algebra.dim(d))
            ]
        else:
            vectors[d] = [sparse(v) for v in kernel_basis(mat)]
    return GradedSubspace.from_vectors(algebra, vectors)


def principal_ideal(algebra, f):
    """The ideal f*A as a graded subspace (degree-d piece = image of
    multiplication from degree d - deg f)."""
    if f.is_zero() or not f.is_homogeneous() or f.degree() < 1:
        raise ValueError("need a homogeneous generator of positive degree")
    k = f.degree()
    vectors = {}
    for d in range(k, algebra.socle_degree + 1):
        mat = algebra.multiplication_matrix(f, d - k)
        vectors[d] = [sparse(mat.column(j)) for j in range(mat.ncols)]
    return GradedSubspace.from_vectors(algebra, vectors)


class GradedModule:
    """A graded subquotient V/W of the ambient algebra, with the induced
    multiplication action.

    Coordinates of the piece U_d come from the echelon rows of V_d whose
    pivots are not pivots of W_d (one basis class per such row).  The zero
    module is a first-class value with effective_range() None.
    """

    __slots__ = ("ambient", "vspace", "wspace", "_free", "_range")

    def __init__(self, vspace, wspace):
        ambient = vspace.ambient
        vspace._check_ambient(wspace)
        for d in range(ambient.socle_degree + 1):
            if not vspace.pieces[d].contains(wspace.pieces[d]):
                raise ContainmentError(
                    "W is not contained in V at degree %d" % d
                )
        self.ambient = ambient
        self.vspace = vspace
        self.wspace = wspace
        self._free = []
        for d in range(ambient.socle_degree + 1):
            wp = set(wspace.pieces[d].rows)
            self._free.append(
                tuple(p for p in vspace.pieces[d].pivots() if p not in wp)
            )
        nz = [d for d, f in enumerate(self._free) if f]
        self._range = (nz[0], nz[-1]) if nz else None

    @property
    def field(self):
        return self.ambient.field

    @property
    def n(self):
        return self.ambient.n

    def effective_range(self):
        return self._range

    def is_zero(self):
        return self._range is None

    def dim(self, d):
        if 0 <= d <= self.ambient.socle_degree:
            return len(self._free[d])
        return 0

    def dims(self):
        return tuple(len(f) for f in self._free)

    def total_dim(self):
        return sum(len(f) for f in self._free)

    def representatives(self, d):
        """Ambient-coordinate representatives of the degree-d basis classes."""
        veb = self.vspace.pieces[d]
        return [veb.row_vector(p) for p in self._free[d]]

    def to_coords(self, d, vec):
        """Class of an ambient vector (sparse dict) in U_d coordinates."""
        reduced = self.wspace.pieces[d].reduce(vec)
        residue, used = self.vspace.pieces[d].reduce_track(reduced)
        if residue:
            raise ContainmentError("vector not in V at degree %d" % d)
        z = self.field.zero
        return [used.get(p, z) for p in self._free[d]]

    def mult_map(self, f, d):
        """Matrix of the induced map xf : U_d -> U_{d+deg f}.

        Raises ContainmentError when f does not map V into V or W into W,
        i.e. when the action is not well defined on the quotient."""
        if f.is_zero() or not f.is_homogeneous():
            raise ValueError("need a nonzero homogeneous multiplier")
        k = f.degree()
        target = d + k
        cols_n = self.dim(d)
        rows_n = self.dim(target)
        A = self.ambient
        if cols_n == 0 or rows_n == 0:
            # still validate well-definedness on W when there is a source
            if cols_n and 0 <= target <= A.socle_degree:
                self._check_w_stability(f, d, target)
            return Matrix.zeros(self.field, rows_n, cols_n)
        self._check_w_stability(f, d, target)
        columns = []
        for rep in self.representatives(d):
            img = A._nf_component(
                (f * A.lift(d, self._densify(d, rep))).terms, target
            )
            columns.append(self.to_coords(target, sparse(img)))
        return Matrix.from_columns(self.field, columns, rows_n)

    def _densify(self, d, vec):
        out = [self.field.zero] * self.ambient.dim(d)
        for i, v in vec.items():
            out[i] = v
        return out

    def _check_w_stability(self, f, d, target):
        A = self.ambient
        web = self.wspace.pieces[d]
        wtarget = self.wspace.pieces[target] if target <= A.socle_degree else None
        for pivot in web.pivots():
            w = web.row_vector(pivot)
            img = A._nf_component((f * A.lift(d, self._densify(d, w))).terms, target)
            if not any(img):
                continue
            if wtarget is None or not wtarget.contains_vector(sparse(img)):
                raise ContainmentError(
                    "multiplication does not preserve W at degree %d" % d
                )

    def piece_data(self, d):
        """(V_d echelon, W_d echelon) for structural comparisons."""
        return (self.vspace.pieces[d], self.wspace.pieces[d])

    def __eq__(self, other):
        return (
            isinstance(other, GradedModule)
            and self.ambient is other.ambient
            and self.vspace == other.vspace
            and self.wspace == other.wspace
        )

    def __repr__(self):
        return "GradedModule(dims=%s, range=%s)" % (list(self.dims()), self._range)


def quotient_module(vspace, wspace):
    """The graded module V/W; raises ContainmentError unless W is contained
    in V degree by degree."""
    return GradedModule(vspace, wspace)


def algebra_as_module(algebra):
    """A itself as the module A / 0."""
    return GradedModule(GradedSubspace.full(algebra), GradedSubspace.zero(algebra))


def quotient_algebra(algebra, subspace):
    """Rebuild A/J as a standalone algebra, where J is a graded ideal of A
    given as a subspace.  The new algebra is presented by the original
    generators plus lifts of a basis of each degree piece of J."""
    gens = list(algebra.generators)
    for d in range(1, algebra.socle_degree + 1):
        for vec in subspace.basis_vectors(d):
            gens.append(algebra.lift(d, vec))
    if subspace.dim(0):
        raise ValueError("subspace contains degree 0; quotient would be zero")
    return build_algebra(
        algebra.n,
        algebra.field,
        gens,
        degree_cap=algebra.socle_degree + 1,
    )

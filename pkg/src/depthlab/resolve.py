"""Graded free modules, finitely presented modules and minimal free resolutions.

A :class:`PresentedModule` is ``coker(F1 -> F0)`` over ``R = S/I``: it stores
the twists of ``F0`` and the relation columns as sparse vectors.  Every
computation is modulo ``I·F0`` implicitly.
"""

from dataclasses import dataclass, field

from .algebra import Polynomial, StructuralError
from .groebner import (
    GradedRing, ModuleVector, apply_matrix, groebner_dicts, submodule_gb, syzygies_dicts,
    vec_axpy, vec_components, vec_degree, vec_offset, vec_scale,
)

__all__ = [
    "FreeModule", "ModuleMap", "PresentedModule", "ModuleHom", "Resolution", "BettiTable",
    "minimal_presentation", "minimal_free_resolution", "syzygy_module", "pd_certificate",
    "minimal_generators",
]


@dataclass(frozen=True)
class FreeModule:
    """``⊕ R(-t)`` for ``t`` in ``twists``; generator ``i`` has degree ``twists[i]``."""

    ring: GradedRing
    twists: tuple

    @property
    def rank(self):
        return len(self.twists)

    def basis_vector(self, i):
        return {(i, (0,) * self.ring.nvars): 1}


@dataclass
class ModuleMap:
    """Degree-0 map of free modules; ``columns[j]`` is the image of the j-th basis vector."""

    source: FreeModule
    target: FreeModule
    columns: list

    def __post_init__(self):
        if len(self.columns) != self.source.rank:
            raise StructuralError("one column per source generator")
        for j, col in enumerate(self.columns):
            d = vec_degree(col, self.target.twists, self.ring)
            if d is not None and d != self.source.twists[j]:
                raise StructuralError(f"column {j} has degree {d}, expected {self.source.twists[j]}")

    @property
    def ring(self):
        return self.source.ring

    def __call__(self, vec):
        return self.ring.reduce_vec(apply_matrix(self.columns, vec, self.ring.p))

    def compose(self, other):
        """``self ∘ other``."""
        if other.target.twists != self.source.twists:
            raise StructuralError("maps are not composable")
        return ModuleMap(other.source, self.target, [self(c) for c in other.columns])

    def is_zero(self):
        return all(not self.ring.reduce_vec(c) for c in self.columns)

    def entry(self, i, j):
        return Polynomial(self.ring.ambient, vec_components(self.columns[j]).get(i, {}))

    def matrix(self):
        """Entries as Polynomials, row-major (rows index the target)."""
        comps = [vec_components(c) for c in self.columns]
        amb = self.ring.ambient
        return [[Polynomial(amb, comps[j].get(i, {})) for j in range(self.source.rank)]
                for i in range(self.target.rank)]

    def to_strings(self):
        return [[str(f) for f in row] for row in self.matrix()]


class PresentedModule:
    """``M = F0 / (relations + I·F0)`` with ``F0 = ⊕ R(-twists)``."""

    def __init__(self, ring, twists, relations=(), name=None):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)
        rels = []
        for j, r in enumerate(relations):
            if isinstance(r, ModuleVector):
                r = r.to_dict()
            elif isinstance(r, Polynomial):
                r = {(0, e): c for e, c in r._d.items()}
            d = vec_degree(r, self.twists, ring)
            if d == "inhomogeneous":
                from .algebra import InhomogeneousError
                raise InhomogeneousError(f"relation {j} is not homogeneous", j)
            if any(pos >= len(self.twists) for pos, _ in r):
                raise StructuralError(f"relation {j} has a component outside the free module")
            rels.append(dict(r))
        self.relations = rels
        self.name = name
        self._gb = None

    # construction -----------------------------------------------------------

    @classmethod
    def free(cls, ring, twists):
        return cls(ring, twists, ())

    @classmethod
    def cyclic(cls, ring, ideal_gens, twist=0, name=None):
        """``R/J`` (shifted so that the generator sits in degree ``twist``)."""
        rels = []
        for g in ideal_gens:
            if isinstance(g, str):
                g = ring.ambient.parse(g)
            rels.append({(0, e): c for e, c in g._d.items()})
        return cls(ring, (twist,), rels, name)

    @classmethod
    def ideal(cls, ring, gens, name=None):
        """The ideal ``(gens)`` as a module, presented by its syzygies."""
        vecs = []
        for g in gens:
            if isinstance(g, str):
                g = ring.ambient.parse(g)
            g = ring.reduce(g)
            if g.is_zero():
                continue
            vecs.append({(0, e): c for e, c in g._d.items()})
        twists = tuple(vec_degree(v, (0,), ring) for v in vecs)
        rels = kernel_minimal_generators(ring, (0,), twists, vecs) if vecs else []
        return cls(ring, twists, rels, name)

    @classmethod
    def residue_field(cls, ring):
        return cls.cyclic(ring, ring.ambient.gens(), name="k")

    def with_relations(self, rels):
        return PresentedModule(self.ring, self.twists, self.relations + list(rels))

    def shift(self, s):
        """``M(s)``: generators move to degree ``t - s``."""
        return PresentedModule(self.ring, [t - s for t in self.twists], self.relations)

    def direct_sum(self, other):
        if other.ring != self.ring:
            raise StructuralError("direct sum over different rings")
        n = len(self.twists)
        rels = self.relations + [vec_offset(r, n) for r in other.relations]
        return PresentedModule(self.ring, self.twists + other.twists, rels)

    def power(self, k):
        out = PresentedModule(self.ring, (), ())
        for _ in range(k):
            out = out.direct_sum(self)
        return out

    def over_ambient(self):
        """The same module viewed over ``S``: relations plus ``I·F0``."""
        amb = GradedRing(self.ring.ambient)
        rels = [dict(r) for r in self.relations]
        for i in range(len(self.twists)):
            for g in self.ring.ideal_gb:
                rels.append({(i, e): c for e, c in g._d.items()})
        return PresentedModule(amb, self.twists, rels, self.name)

    def over_ring(self, ring):
        if ring.ambient != self.ring.ambient:
            raise StructuralError("different ambient rings")
        return PresentedModule(ring, self.twists, self.relations, self.name)

    # queries --------------------------------------------------------------------

    @property
    def rank(self):
        return len(self.twists)

    @property
    def gb(self):
        if self._gb is None:
            self._gb = submodule_gb(self.ring, self.twists, self.relations)
        return self._gb

    def reduce(self, vec):
        return self.gb.normal_form_dict(vec)

    def is_zero_element(self, vec):
        return not self.reduce(vec)

    def is_zero(self):
        return all(self.is_zero_element({(i, (0,) * self.ring.nvars): 1}) for i in range(self.rank))

    def hilbert_function(self, d):
        return self.gb.hilbert_function(d)

    def annihilates(self, f):
        """Whether the polynomial ``f`` kills every generator."""
        fd = f._d if isinstance(f, Polynomial) else f
        z = (0,) * self.ring.nvars
        for i in range(self.rank):
            v = {(i, e): c for e, c in fd.items()}
            if not self.is_zero_element(v):
                return False
        return True

    def __repr__(self):
        return f"PresentedModule(twists={self.twists}, relations={len(self.relations)})"

    def relation_matrix(self):
        amb = self.ring.ambient
        comps = [vec_components(r) for r in self.relations]
        return [[str(Polynomial(amb, c.get(i, {}))) for c in comps] for i in range(self.rank)]


def _unit_entry(rel, nv):
    """Position with a non-zero constant entry, if any (largest index first)."""
    z = (0,) * nv
    best = None
    for (pos, e), c in rel.items():
        if e == z and (best is None or pos > best):
            best = pos
    return best


@dataclass
class MinimalPresentation:
    module: PresentedModule
    to_min: list      # image of each original generator, in the minimal generators
    from_min: list    # each minimal generator as a vector in the original generators


def minimal_presentation(M):
    """Minimal presentation of ``M`` together with the comparison isomorphism.

    Generators killed by a relation with a unit entry are eliminated by
    substitution; the surviving relations are then thinned to a minimal
    generating set by degree-ordered Groebner selection.
    """
    ring = M.ring
    p = ring.p
    nv = ring.nvars
    z = (0,) * nv
    n = M.rank
    # image of original generator i in the current generators (still indexed by original ids)
    image = [{(i, z): 1} for i in range(n)]
    alive = set(range(n))
    rels = [ring.reduce_vec(r) for r in M.relations]
    rels = [r for r in rels if r]
    while True:
        hit = None
        for k, r in enumerate(rels):
            pos = _unit_entry(r, nv)
            if pos is not None:
                hit = (k, pos)
                break
        if hit is None:
            break
        k, i = hit
        r = rels.pop(k)
        c = r[(i, z)]
        # e_i = -(1/c) * (r - c e_i)
        sub = dict(r)
        del sub[(i, z)]
        sub = vec_scale(sub, (p - pow(c, -1, p)) % p, p)
        alive.discard(i)

        def substitute(v):
            comps = vec_components(v)
            coeff = comps.pop(i, None)
            if coeff is None:
                return v
            out = {(q, e): a for q, poly in comps.items() for e, a in poly.items()}
            for e, a in coeff.items():
                vec_axpy(out, sub, a, e, p)
            return ring.reduce_vec(out)

        rels = [substitute(v) for v in rels]
        rels = [v for v in rels if v]
        image = [substitute(v) for v in image]
    keep = sorted(alive)
    index = {old: new for new, old in enumerate(keep)}
    twists = [M.twists[i] for i in keep]

    def renumber(v):
        return {(index[q], e): c for (q, e), c in v.items()}

    rels = [renumber(v) for v in rels]
    rels = minimal_generators(ring, twists, rels)
    module = PresentedModule(ring, twists, rels, M.name)
    to_min = [renumber(v) for v in image]
    from_min = [{(i, z): 1} for i in keep]
    return MinimalPresentation(module, to_min, from_min)


def kernel_minimal_generators(ring, target_twists, source_twists, columns, extra=()):
    """Minimal generators of ``{c : Σ c_j columns_j ∈ <extra> + I·F}``.

    The syzygies are first replaced by the reduced Groebner basis of the
    module they generate, so the chosen generators do not depend on the
    order in which pairs happened to be processed.
    """
    syz, _ = syzygies_dicts(ring, target_twists, columns, extra)
    syz = [s for s in (ring.reduce_vec(s) for s in syz) if s]
    if not syz:
        return []
    basis = [g.vec for g in groebner_dicts(ring, source_twists, syz).reduced()]
    basis.sort(key=lambda v: _canonical_key(v, source_twists, ring))
    return minimal_generators(ring, source_twists, basis)


def _canonical_key(vec, twists, ring):
    deg = vec_degree(vec, twists, ring)
    return (deg, len(vec), sorted(((pos, tuple(-a for a in e)) for pos, e in vec)))


def minimal_generators(ring, twists, vectors, ambient_vectors=()):
    """A minimal generating subset of ``<vectors>`` modulo ``<ambient_vectors> + I·F``."""
    extra = list(ambient_vectors)
    vecs = extra + list(vectors)
    classes = [0] * len(extra) + [1] * len(vectors)
    res = groebner_dicts(ring, twists, vecs, classes=classes)
    out = []
    for j, v in enumerate(vectors):
        if res.kept[len(extra) + j]:
            out.append(v)
    return out


# -- Betti tables ---------------------------------------------------------------------

class BettiTable:
    """Graded Betti numbers ``beta[i][j]`` = number of ``R(-j)`` summands in ``F_i``."""

    def __init__(self, twists_by_step, complete=False):
        self.twists = [tuple(sorted(t)) for t in twists_by_step]
        self.complete = complete

    def __getitem__(self, key):
        i, j = key
        if i >= len(self.twists):
            return 0
        return self.twists[i].count(j)

    def total(self, i):
        return len(self.twists[i]) if i < len(self.twists) else 0

    def totals(self):
        return [len(t) for t in self.twists]

    @property
    def length(self):
        return len(self.twists) - 1

    def graded(self):
        out = {}
        for i, tw in enumerate(self.twists):
            for t in tw:
                out[(i, t)] = out.get((i, t), 0) + 1
        return out

    def to_json(self):
        return {
            "totals": self.totals(),
            "graded": {str(i): [[t, tw.count(t)] for t in sorted(set(tw))] for i, tw in enumerate(self.twists)},
            "complete": self.complete,
        }

    def __str__(self):
        g = self.graded()
        if not g:
            return "zero module"
        rows = sorted({j - i for (i, j) in g})
        cols = range(len(self.twists))
        width = max(3, max(len(str(b)) for b in g.values()) + 1)
        head = "      " + "".join(f"{i:>{width}}" for i in cols)
        lines = [head, "total:" + "".join(f"{len(self.twists[i]):>{width}}" for i in cols)]
        for r in range(rows[0], rows[-1] + 1):
            cells = []
            for i in cols:
                b = g.get((i, i + r), 0)
                cells.append(f"{b if b else '.':>{width}}")
            lines.append(f"{r:>5}:" + "".join(cells))
        return "\n".join(lines)


# -- resolutions -------------------------------------------------------------------------

@dataclass
class Resolution:
    """``... -> F_2 -> F_1 -> F_0 -> M -> 0`` with ``maps[i-1] = ∂_i: F_i -> F_{i-1}``.

    ``complete`` means the resolution was seen to terminate (finite length);
    otherwise it is truncated at ``bound``.
    """

    module: PresentedModule
    frees: list
    maps: list
    bound: int
    complete: bool
    presentation: MinimalPresentation = field(default=None, repr=False)

    @property
    def ring(self):
        return self.module.ring

    @property
    def length(self):
        return len(self.frees) - 1

    def betti(self):
        return BettiTable([f.twists for f in self.frees], self.complete)

    def differential(self, i):
        return self.maps[i - 1]

    def pd(self):
        """Projective dimension when the resolution terminated, else None."""
        if not self.complete:
            return None
        return self.length

    def to_json(self):
        return {
            "betti": self.betti().to_json(),
            "bound": self.bound,
            "complete": self.complete,
            "differentials": [m.to_strings() for m in self.maps],
            "twists": [list(f.twists) for f in self.frees],
        }


def minimal_free_resolution(M, bound, over="quotient"):
    """Minimal graded free resolution of ``M``, computed through ``F_bound``.

    ``over="ambient"`` resolves ``M`` as a module over the polynomial ring,
    where the resolution is finite.  The zero module has the empty resolution.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if over == "ambient":
        M = M.over_ambient()
    elif over != "quotient":
        raise ValueError(f"unknown ring mode {over!r}")
    ring = M.ring
    pres = minimal_presentation(M)
    mm = pres.module
    if mm.rank == 0:
        return Resolution(M, [], [], bound, True, pres)
    frees = [FreeModule(ring, mm.twists)]
    maps = []
    cols = [dict(r) for r in mm.relations]
    complete = False
    for i in range(1, bound + 1):
        if not cols:
            complete = True
            break
        src = tuple(vec_degree(c, frees[-1].twists, ring) for c in cols)
        F = FreeModule(ring, src)
        maps.append(ModuleMap(F, frees[-1], cols))
        frees.append(F)
        cols = kernel_minimal_generators(ring, frees[-2].twists, F.twists, cols)
    else:
        if not cols:
            complete = True
    return Resolution(M, frees, maps, bound, complete, pres)


def k_polynomial(M):
    """Numerator ``Σ (-1)^i β^S_ij t^j`` of the Hilbert series over the ambient ring.

    Returned as ``{j: coefficient}`` without zero entries.
    """
    res = minimal_free_resolution(M, M.ring.nvars + 2, over="ambient")
    out = {}
    for i, F in enumerate(res.frees):
        sign = -1 if i % 2 else 1
        for t in F.twists:
            out[t] = out.get(t, 0) + sign
    return {j: c for j, c in out.items() if c}


def laurent_divides(num, den):
    """Whether ``den`` divides ``num`` among Laurent polynomials with integer coefficients.

    ``den`` must have constant term 1 and no negative powers (true for the
    K-polynomial of a quotient ring).
    """
    if den.get(0) != 1 or any(j < 0 for j in den):
        raise ValueError("divisor must start with 1")
    rem = dict(num)
    top = max(den)
    while rem:
        d = min(rem)
        if d > max(rem) - top:
            return False
        c = rem[d]
        for j, v in den.items():
            w = rem.get(d + j, 0) - c * v
            if w:
                rem[d + j] = w
            else:
                rem.pop(d + j, None)
    return True


def syzygy_module(M, n, resolution=None):
    """``Ω^n M`` as ``coker(∂_{n+1})`` on the generators of ``F_n``."""
    res = resolution
    if res is None or (res.length < n + 1 and not res.complete):
        res = minimal_free_resolution(M, n + 1)
    if n == 0:
        return res.presentation.module
    if n > res.length:
        return PresentedModule(M.ring, (), ())
    rels = res.maps[n].columns if n < len(res.maps) else []
    return PresentedModule(M.ring, res.frees[n].twists, rels)


def pd_certificate(M, bound, over="quotient"):
    """``(pd, resolution)``; ``pd`` is None unless the resolution terminated within ``bound``."""
    res = minimal_free_resolution(M, bound, over)
    return res.pd(), res


# -- homomorphisms between presented modules -------------------------------------------------

class ModuleHom:
    """Degree-0 map ``A -> B`` given by the images of ``A``'s generators in ``B``'s ``F0``."""

    def __init__(self, source, target, images):
        if len(images) != source.rank:
            raise StructuralError("one image per source generator")
        self.source = source
        self.target = target
        ring = source.ring
        self.images = [ring.reduce_vec(v.to_dict() if isinstance(v, ModuleVector) else v) for v in images]
        for j, v in enumerate(self.images):
            d = vec_degree(v, target.twists, ring)
            if d is not None and d != source.twists[j]:
                raise StructuralError(f"image {j} has degree {d}, expected {source.twists[j]}")

    @property
    def ring(self):
        return self.source.ring

    def apply(self, vec):
        return self.ring.reduce_vec(apply_matrix(self.images, vec, self.ring.p))

    def compose(self, other):
        """``self ∘ other``."""
        return ModuleHom(other.source, self.target, [self.apply(v) for v in other.images])

    def is_well_defined(self):
        return all(self.target.is_zero_element(self.apply(r)) for r in self.source.relations)

    def is_zero(self):
        return all(self.target.is_zero_element(v) for v in self.images)

    def kernel_generators(self):
        """Generators (in ``A``'s ``F0``) of ``ker`` as a submodule of ``A``."""
        syz, _ = syzygies_dicts(self.ring, self.target.twists, self.images, extra=self.target.relations)
        return [self.ring.reduce_vec(s) for s in syz]

    def is_injective(self):
        return all(self.source.is_zero_element(v) for v in self.kernel_generators())

    def is_surjective(self):
        z = (0,) * self.ring.nvars
        sub = submodule_gb(self.ring, self.target.twists, self.target.relations + self.images)
        return all(not sub.normal_form_dict({(i, z): 1}) for i in range(self.target.rank))

    def image_contains(self, vecs):
        sub = submodule_gb(self.ring, self.target.twists, self.target.relations + self.images)
        return all(not sub.normal_form_dict(v) for v in vecs)

    def to_strings(self):
        amb = self.ring.ambient
        comps = [vec_components(v) for v in self.images]
        return [[str(Polynomial(amb, c.get(i, {}))) for c in comps] for i in range(self.target.rank)]

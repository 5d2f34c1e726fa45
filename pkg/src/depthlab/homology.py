"""Bounded complexes of presented modules, their homology, Tor, Ext and
Koszul complexes.

Term ``X_i`` is a presented module ``F_i / (P_i + I·F_i)``; the differential
``∂_i: X_i -> X_{i-1}`` is stored as the images of ``F_i``'s generators in
``F_{i-1}``.  Homological indexing throughout: ``∂`` lowers the index.

Every complex carries a *window*: the indices at which its homology is
known to be that of the object it models.  Complexes built from a
hard-truncated resolution have a window smaller than their span, and
asking for homology outside the window raises :class:`WindowError`.
"""

from itertools import combinations

from .algebra import Polynomial, StructuralError
from .groebner import (
    GradedRing, apply_matrix, syzygies_dicts, vec_axpy, vec_components, vec_degree,
)
from .resolve import PresentedModule, Resolution, minimal_free_resolution, minimal_generators, minimal_presentation

__all__ = [
    "WindowError", "ChainComplex", "KoszulComplex", "tensor_resolution", "hom_resolution",
    "homology_at", "tor", "ext", "koszul", "good_truncation_below", "tensor_with_free",
]


class WindowError(IndexError):
    """Homology requested at an index the complex cannot certify."""


class ChainComplex:
    """``X_hi -> ... -> X_lo`` with presented terms.

    ``terms`` maps index to PresentedModule; ``maps[i]`` lists, for each
    generator of ``X_i``, its image in the generators of ``X_{i-1}``.
    """

    def __init__(self, ring, terms, maps, window=None, name=None):
        if not terms:
            raise StructuralError("a complex needs at least one term")
        self.ring = ring
        self.terms = dict(terms)
        self.lo = min(self.terms)
        self.hi = max(self.terms)
        for i in range(self.lo, self.hi + 1):
            self.terms.setdefault(i, PresentedModule(ring, (), ()))
        self.maps = {}
        for i in range(self.lo + 1, self.hi + 1):
            cols = maps.get(i)
            if cols is None:
                cols = [{} for _ in self.terms[i].twists]
            if len(cols) != self.terms[i].rank:
                raise StructuralError(f"differential {i} has {len(cols)} columns, expected {self.terms[i].rank}")
            self.maps[i] = [ring.reduce_vec(c) for c in cols]
            for j, c in enumerate(self.maps[i]):
                d = vec_degree(c, self.terms[i - 1].twists, ring)
                if d is not None and d != self.terms[i].twists[j]:
                    raise StructuralError(f"differential {i}, column {j}: degree {d}, expected {self.terms[i].twists[j]}")
        self.window = tuple(window) if window is not None else (self.lo, self.hi)
        self.name = name
        self._homology = {}

    @property
    def genuine(self):
        """True when homology is certified on the whole span."""
        return self.window == (self.lo, self.hi)

    def term(self, i):
        if i < self.lo or i > self.hi:
            return PresentedModule(self.ring, (), ())
        return self.terms[i]

    def differential(self, i):
        return self.maps.get(i)

    def rank(self, i):
        return self.term(i).rank

    def ranks(self):
        return {i: self.terms[i].rank for i in range(self.lo, self.hi + 1)}

    def check_differentials(self):
        """``∂_{i-1}∘∂_i = 0`` and each ``∂_i`` respects the presentations."""
        p = self.ring.p
        for i in range(self.lo + 1, self.hi + 1):
            tgt = self.terms[i - 1]
            for r in self.terms[i].relations:
                if not tgt.is_zero_element(apply_matrix(self.maps[i], r, p)):
                    return False
            if i - 1 > self.lo:
                below = self.terms[i - 2]
                for c in self.maps[i]:
                    if not below.is_zero_element(apply_matrix(self.maps[i - 1], c, p)):
                        return False
        return True

    def shift(self, s=1):
        """``X[s]`` with ``X[s]_n = X_{n-s}`` and differentials scaled by ``(-1)^s``."""
        sign = 1 if s % 2 == 0 else self.ring.p - 1
        p = self.ring.p
        terms = {i + s: t for i, t in self.terms.items()}
        maps = {i + s: [{k: v * sign % p for k, v in c.items()} for c in cols] for i, cols in self.maps.items()}
        return ChainComplex(self.ring, terms, maps, (self.window[0] + s, self.window[1] + s))

    def homology_at(self, i):
        return homology_at(self, i)

    def is_exact_at(self, i):
        return self.homology_at(i).rank == 0

    def sup(self):
        """Largest index in the window with non-zero homology, or None."""
        for i in range(self.window[1], self.window[0] - 1, -1):
            if self.homology_at(i).rank:
                return i
        return None

    def inf(self):
        for i in range(self.window[0], self.window[1] + 1):
            if self.homology_at(i).rank:
                return i
        return None

    def to_json(self):
        amb = self.ring.ambient
        out = {"window": list(self.window), "terms": []}
        for i in range(self.lo, self.hi + 1):
            t = self.terms[i]
            entry = {"index": i, "twists": list(t.twists), "relations": t.relation_matrix()}
            if i in self.maps:
                comps = [vec_components(c) for c in self.maps[i]]
                entry["differential"] = [[str(Polynomial(amb, c.get(r, {}))) for c in comps]
                                         for r in range(self.terms[i - 1].rank)]
            out["terms"].append(entry)
        return out


def _gens(rank, nv):
    z = (0,) * nv
    return [{(i, z): 1} for i in range(rank)]


def homology_at(X, i):
    """``ker ∂_i / im ∂_{i+1}`` as a minimally presented module."""
    if i in X._homology:
        return X._homology[i]
    if i < X.window[0] or i > X.window[1]:
        raise WindowError(f"homology at {i} lies outside the certified window {list(X.window)}")
    ring = X.ring
    T = X.term(i)
    if T.rank == 0:
        H = PresentedModule(ring, (), ())
        X._homology[i] = H
        return H
    out = X.maps.get(i)
    if out is not None and X.terms[i - 1].rank:
        below = X.terms[i - 1]
        cycles, _ = syzygies_dicts(ring, below.twists, out, extra=below.relations)
        cycles = [c for c in (ring.reduce_vec(c) for c in cycles) if c]
    else:
        cycles = _gens(T.rank, ring.nvars)
    boundaries = list(T.relations)
    if i + 1 in X.maps:
        boundaries += [c for c in X.maps[i + 1] if c]
    zs = minimal_generators(ring, T.twists, cycles, ambient_vectors=boundaries) if cycles else []
    if not zs:
        H = PresentedModule(ring, (), ())
    else:
        rels, _ = syzygies_dicts(ring, T.twists, zs, extra=boundaries)
        degs = [vec_degree(z, T.twists, ring) for z in zs]
        H = minimal_presentation(PresentedModule(ring, degs, [r for r in rels if r])).module
    X._homology[i] = H
    return H


def tensor_resolution(res, N):
    """``F ⊗ N`` for a resolution ``F`` of ``M``; its homology is ``Tor(M, N)``."""
    if not isinstance(res, Resolution):
        raise TypeError("expected a Resolution")
    ring = res.ring
    if N.ring != ring:
        raise StructuralError("ring mismatch")
    rN = N.rank
    terms = {}
    maps = {}
    if not res.frees:
        return ChainComplex(ring, {0: PresentedModule(ring, (), ())}, {}, (0, 0))
    for i, F in enumerate(res.frees):
        twists = [t + s for t in F.twists for s in N.twists]
        rels = []
        for a in range(F.rank):
            for r in N.relations:
                rels.append({(a * rN + pos, e): c for (pos, e), c in r.items()})
        terms[i] = PresentedModule(ring, twists, rels)
    for i, m in enumerate(res.maps, start=1):
        cols = []
        for a in range(m.source.rank):
            col = m.columns[a]
            for b in range(rN):
                cols.append({(c * rN + b, e): v for (c, e), v in col.items()})
        maps[i] = cols
    top = res.length if res.complete else res.length - 1
    return ChainComplex(ring, terms, maps, (0, max(top, 0)) if top >= 0 else (0, -1))


def hom_resolution(res, N):
    """``Hom(F, N)`` placed in non-positive degrees: ``H_{-i} = Ext^i(M, N)``."""
    ring = res.ring
    if N.ring != ring:
        raise StructuralError("ring mismatch")
    rN = N.rank
    p = ring.p
    if not res.frees:
        return ChainComplex(ring, {0: PresentedModule(ring, (), ())}, {}, (0, 0))
    terms = {}
    maps = {}
    for i, F in enumerate(res.frees):
        twists = [s - t for t in F.twists for s in N.twists]
        rels = []
        for a in range(F.rank):
            for r in N.relations:
                rels.append({(a * rN + pos, e): c for (pos, e), c in r.items()})
        terms[-i] = PresentedModule(ring, twists, rels)
    for i, m in enumerate(res.maps, start=1):
        # φ ↦ φ∘∂_i sends the (a, b) generator of Hom(F_{i-1}, N) to Σ_c ∂[a, c]·(c, b)
        rows = [dict() for _ in range(m.target.rank)]
        for c, col in enumerate(m.columns):
            for (a, e), v in col.items():
                rows[a][(c, e)] = v
        cols = []
        for a in range(m.target.rank):
            for b in range(rN):
                cols.append({(c * rN + b, e): v for (c, e), v in rows[a].items()})
        maps[-(i - 1)] = cols
    # terms run from -len to 0, with the differential lowering the index
    low = -(res.length if res.complete else res.length - 1)
    return ChainComplex(ring, terms, maps, (low, 0) if low <= 0 else (0, -1))


def tor(M, N, bound, resolution=None):
    """``[Tor_0(M,N), ..., Tor_bound(M,N)]`` from a minimal resolution of ``M``."""
    res = resolution
    if res is None or (res.length < bound + 1 and not res.complete):
        res = minimal_free_resolution(M, bound + 1)
    X = tensor_resolution(res, N)
    out = []
    for i in range(bound + 1):
        if i > X.hi:
            out.append(PresentedModule(M.ring, (), ()))
        else:
            out.append(homology_at(X, i))
    return out


def ext(M, N, bound, resolution=None):
    """``[Ext^0(M,N), ..., Ext^bound(M,N)]`` from a minimal resolution of ``M``."""
    res = resolution
    if res is None or (res.length < bound + 1 and not res.complete):
        res = minimal_free_resolution(M, bound + 1)
    X = hom_resolution(res, N)
    out = []
    for i in range(bound + 1):
        if -i < X.lo:
            out.append(PresentedModule(M.ring, (), ()))
        else:
            out.append(homology_at(X, -i))
    return out


class KoszulComplex(ChainComplex):
    """Koszul complex on homogeneous elements of the maximal ideal."""

    def __init__(self, ring, elements):
        self.elements = tuple(elements)
        c = len(self.elements)
        p = ring.p
        nv = ring.nvars
        degs = []
        polys = []
        for k, f in enumerate(self.elements):
            if isinstance(f, str):
                f = ring.ambient.parse(f)
            f = ring.reduce(f)
            if not f.is_zero():
                d = f.homogeneous_degree()
                if d == "inhomogeneous":
                    from .algebra import InhomogeneousError
                    raise InhomogeneousError(f"Koszul element {k} is not homogeneous", k)
                if d == 0:
                    raise StructuralError(f"Koszul element {k} is a unit")
            else:
                d = 1
            degs.append(d)
            polys.append(f._d)
        subsets = {j: list(combinations(range(c), j)) for j in range(c + 1)}
        index = {j: {s: n for n, s in enumerate(subsets[j])} for j in subsets}
        terms = {j: PresentedModule(ring, [sum(degs[k] for k in s) for s in subsets[j]], ())
                 for j in subsets}
        maps = {}
        for j in range(1, c + 1):
            cols = []
            for s in subsets[j]:
                col = {}
                for pos, k in enumerate(s):
                    rest = s[:pos] + s[pos + 1:]
                    sign = 1 if pos % 2 == 0 else p - 1
                    tgt = index[j - 1][rest]
                    for e, v in polys[k].items():
                        key = (tgt, e)
                        w = (col.get(key, 0) + sign * v) % p
                        if w:
                            col[key] = w
                        else:
                            col.pop(key, None)
                cols.append(col)
            maps[j] = cols
        super().__init__(ring, terms, maps)
        self.polynomials = [Polynomial(ring.ambient, d) for d in polys]


def koszul(elements, ring):
    return KoszulComplex(ring, elements)


def tensor_with_free(X, K):
    """``X ⊗ K`` for a genuine complex ``X`` and a complex ``K`` of free modules."""
    if X.ring != K.ring:
        raise StructuralError("ring mismatch")
    if not X.genuine or not K.genuine:
        raise WindowError("tensor products need complexes certified on their whole span")
    if any(t.relations for t in K.terms.values()):
        raise StructuralError("second factor must consist of free modules")
    ring = X.ring
    p = ring.p
    lo, hi = X.lo + K.lo, X.hi + K.hi
    blocks = {}
    terms = {}
    for n in range(lo, hi + 1):
        off = 0
        twists = []
        rels = []
        for i in range(X.lo, X.hi + 1):
            j = n - i
            if j < K.lo or j > K.hi:
                continue
            T = X.terms[i]
            Kj = K.terms[j]
            blocks[(i, j)] = off
            r = T.rank
            for c, tk in enumerate(Kj.twists):
                twists.extend(t + tk for t in T.twists)
                for rel in T.relations:
                    rels.append({(off + c * r + pos, e): v for (pos, e), v in rel.items()})
            off += r * Kj.rank
        terms[n] = PresentedModule(ring, twists, rels)
    maps = {}
    for n in range(lo + 1, hi + 1):
        cols = [None] * terms[n].rank
        for i in range(X.lo, X.hi + 1):
            j = n - i
            if (i, j) not in blocks:
                continue
            off = blocks[(i, j)]
            r = X.terms[i].rank
            sign = 1 if i % 2 == 0 else p - 1
            for c in range(K.terms[j].rank):
                for b in range(r):
                    col = {}
                    if i - 1 >= X.lo and (i - 1, j) in blocks:
                        o2 = blocks[(i - 1, j)]
                        r2 = X.terms[i - 1].rank
                        for (pos, e), v in X.maps[i][b].items():
                            col[(o2 + c * r2 + pos, e)] = v
                    if j - 1 >= K.lo and (i, j - 1) in blocks:
                        o2 = blocks[(i, j - 1)]
                        for (c2, e), v in K.maps[j][c].items():
                            key = (o2 + c2 * r + b, e)
                            w = (col.get(key, 0) + sign * v) % p
                            if w:
                                col[key] = w
                            else:
                                col.pop(key, None)
                    cols[off + c * r + b] = col
        maps[n] = cols
    return ChainComplex(ring, terms, maps)


def good_truncation_below(X, q):
    """``τ≤q X``: same homology in degrees ≤ q, zero above.

    Realised as ``... 0 -> X_q / im ∂_{q+1} -> X_{q-1} -> ...``, which only
    needs ``∂_{q+1}`` and therefore works on hard-truncated complexes as long
    as ``q`` lies in the window.
    """
    if q >= X.hi and X.genuine:
        return X
    if q > X.window[1]:
        raise WindowError(f"cannot truncate at {q}: window top is {X.window[1]}")
    ring = X.ring
    terms = {}
    maps = {}
    for i in range(X.lo, min(q, X.hi) + 1):
        terms[i] = X.terms[i]
        if i in X.maps:
            maps[i] = X.maps[i]
    if q < X.lo:
        return ChainComplex(ring, {X.lo: PresentedModule(ring, (), ())}, {})
    if q + 1 in X.maps:
        T = X.terms[q]
        terms[q] = PresentedModule(ring, T.twists, T.relations + [c for c in X.maps[q + 1] if c])
    return ChainComplex(ring, terms, maps, (max(X.window[0], X.lo), min(q, X.hi)))


def module_complex(M, degree=0):
    """``M`` concentrated in one homological degree."""
    return ChainComplex(M.ring, {degree: M}, {})

"""Buchberger's algorithm for homogeneous submodules of graded free modules
over ``R = S/I``, normal forms and syzygies.

Vectors are handled internally as dicts ``{(position, exponents): residue}``.
Quotient-ring arithmetic is ambient arithmetic followed by reduction against
the reduced Groebner basis of ``I``; the ideal is never materialised as
module generators unless a position actually carries a leading term.

The module order is position-over-term.  Positions are ranked by twist, then
by index: the leading term of a vector sits in its non-zero position of
smallest twist (ties: smallest index).
"""

import heapq
from dataclasses import dataclass
from itertools import combinations

from .algebra import InhomogeneousError, Polynomial, PolynomialRing, StructuralError

__all__ = [
    "GradedRing", "ModuleVector", "SubmoduleGB", "buchberger", "normal_form",
    "syzygy_basis", "is_groebner",
]


# -- sparse vector helpers ---------------------------------------------------

def vec_axpy(acc, src, coef, shift, p):
    """``acc += coef * x^shift * src`` in place."""
    if shift is None:
        for k, c in src.items():
            v = (acc.get(k, 0) + coef * c) % p
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        return acc
    for (pos, e), c in src.items():
        k = (pos, tuple([a + b for a, b in zip(e, shift)]))
        v = (acc.get(k, 0) + coef * c) % p
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


def vec_scale(vec, c, p):
    c %= p
    if not c:
        return {}
    return {k: v * c % p for k, v in vec.items()}


def vec_add(a, b, p):
    return vec_axpy(dict(a), b, 1, None, p)


def vec_sub(a, b, p):
    return vec_axpy(dict(a), b, p - 1, None, p)


def vec_times_poly(vec, poly, p):
    """Multiply a vector by a polynomial given as ``{exps: c}``."""
    out = {}
    for e, c in poly.items():
        vec_axpy(out, vec, c, e, p)
    return out


def vec_components(vec):
    out = {}
    for (pos, e), c in vec.items():
        out.setdefault(pos, {})[e] = c
    return out


def vec_from_components(comps):
    out = {}
    for pos, poly in comps.items():
        for e, c in poly.items():
            out[(pos, e)] = c
    return out


def vec_reindex(vec, mapping):
    """Move position ``i`` to ``mapping[i]``; positions mapped to None are dropped."""
    out = {}
    for (pos, e), c in vec.items():
        q = mapping[pos]
        if q is not None:
            out[(q, e)] = c
    return out


def vec_offset(vec, off):
    return {(pos + off, e): c for (pos, e), c in vec.items()}


def vec_degree(vec, twists, ring):
    """Common degree of a homogeneous vector; None for the zero vector."""
    deg = None
    for (pos, e) in vec:
        d = ring.degree(e) + twists[pos]
        if deg is None:
            deg = d
        elif d != deg:
            return "inhomogeneous"
    return deg


def apply_matrix(columns, vec, p):
    """Image of ``vec`` (coordinates in the source basis) under the matrix."""
    out = {}
    for (j, e), c in vec.items():
        vec_axpy(out, columns[j], c, e, p)
    return out


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _sub(a, b):
    return tuple([x - y for x, y in zip(a, b)])


# -- rings --------------------------------------------------------------------

class GradedRing:
    """``R = S/I`` for a weighted polynomial ring ``S`` and homogeneous ``I``.

    ``dim`` comes from the initial ideal; ``depth`` is computed on first use
    via Auslander-Buchsbaum over ``S``.
    """

    def __init__(self, ambient, ideal=(), name=None):
        if not isinstance(ambient, PolynomialRing):
            raise TypeError("ambient must be a PolynomialRing")
        self.ambient = ambient
        self.name = name
        gens = []
        for i, g in enumerate(ideal):
            if isinstance(g, str):
                g = ambient.parse(g)
            if g.ring != ambient:
                raise StructuralError("ideal generator from another ring")
            if g.is_zero():
                continue
            if g.homogeneous_degree() == "inhomogeneous":
                raise InhomogeneousError(f"ideal generator {i} is not homogeneous", i)
            gens.append(g)
        self.ideal_generators = tuple(gens)
        self._ideal = []
        self._depth = None
        self._dim = None
        if gens:
            eng = _Engine(self, [0], ideal_mode=True)
            res = eng.run([{(0, e): c for e, c in g._d.items()} for g in gens])
            self._ideal = [(el.lead[1], {e: c for (_, e), c in el.vec.items()})
                           for el in res.reduced()]
        self._ideal.sort(key=lambda t: ambient.mono_key(t[0]))
        self._ideal_leads = [t[0] for t in self._ideal]

    @classmethod
    def polynomial_ring(cls, names, weights=None, modulus=101, order="grevlex", ideal=(), name=None):
        return cls(PolynomialRing(tuple(names), weights, modulus, order), ideal, name)

    @property
    def p(self):
        return self.ambient.modulus

    @property
    def nvars(self):
        return self.ambient.nvars

    def is_ambient(self):
        return not self._ideal

    @property
    def ideal_gb(self):
        return tuple(Polynomial(self.ambient, dict(t[1])) for t in self._ideal)

    def ambient_ring(self):
        return GradedRing(self.ambient, (), name=None)

    def quotient(self, extra, name=None):
        extra = [self.ambient.parse(g) if isinstance(g, str) else g for g in extra]
        return GradedRing(self.ambient, list(self.ideal_gb) + list(extra), name)

    def __eq__(self, other):
        return (isinstance(other, GradedRing) and self.ambient == other.ambient
                and self._ideal == other._ideal)

    def __hash__(self):
        return hash((self.ambient, tuple(self._ideal_leads)))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal_gb)
        return f"GradedRing({self.ambient!r} / ({gens}))"

    def parse(self, text):
        return self.reduce(self.ambient.parse(text))

    def degree(self, exps):
        return self.ambient.degree(exps)

    # reduction modulo I ---------------------------------------------------

    def ideal_reducer(self, m):
        for lead, poly in self._ideal:
            if _divides(lead, m):
                return lead, poly
        return None

    def reduce_poly_dict(self, poly):
        if not self._ideal or not poly:
            return dict(poly)
        p = self.p
        key = self.ambient.mono_key
        work = dict(poly)
        rem = {}
        while work:
            m = max(work, key=key)
            c = work.pop(m)
            r = self.ideal_reducer(m)
            if r is None:
                rem[m] = c
                continue
            lead, g = r
            shift = _sub(m, lead)
            f = p - c
            for e, v in g.items():
                if e == lead:
                    continue
                k = tuple([a + b for a, b in zip(e, shift)])
                w = (work.get(k, 0) + f * v) % p
                if w:
                    work[k] = w
                else:
                    work.pop(k, None)
        return rem

    def reduce(self, f):
        return Polynomial(self.ambient, self.reduce_poly_dict(f._d))

    def reduce_vec(self, vec):
        if not self._ideal or not vec:
            return dict(vec)
        out = {}
        for pos, poly in vec_components(vec).items():
            for e, c in self.reduce_poly_dict(poly).items():
                out[(pos, e)] = c
        return out

    def is_standard(self, exps):
        return not any(_divides(l, exps) for l in self._ideal_leads)

    def basis_monomials(self, d):
        """Standard monomials of degree ``d``: a basis of ``R_d``."""
        return [e for e in self.ambient.monomials_of_degree(d) if self.is_standard(e)]

    def hilbert_function(self, d):
        return len(self.basis_monomials(d))

    # invariants -------------------------------------------------------------

    @property
    def dim(self):
        """Krull dimension: largest set of variables independent modulo in(I)."""
        if self._dim is None:
            n = self.nvars
            supports = [frozenset(i for i, a in enumerate(l) if a) for l in self._ideal_leads]
            best = 0
            for size in range(n, -1, -1):
                for sub in combinations(range(n), size):
                    s = frozenset(sub)
                    if not any(sup <= s for sup in supports):
                        best = size
                        break
                else:
                    continue
                break
            self._dim = best
        return self._dim

    @property
    def depth(self):
        if self._depth is None:
            from .invariants import depth_module
            from .resolve import PresentedModule
            self._depth = depth_module(PresentedModule.free(self, [0])).value
        return self._depth

    def is_cohen_macaulay(self):
        return self.dim == self.depth

    def variables(self):
        return self.ambient.gens()


# -- module vectors -------------------------------------------------------------

@dataclass(frozen=True)
class ModuleVector:
    """An element of a graded free module ``F = ⊕ R(-twist_i)``."""

    components: tuple
    twists: tuple

    def __post_init__(self):
        if len(self.components) != len(self.twists):
            raise StructuralError("one twist per component")
        if self.degree() == "inhomogeneous":
            raise InhomogeneousError("module vector is not homogeneous")

    @classmethod
    def from_dict(cls, vec, ring, twists):
        comps = vec_components(vec)
        amb = ring.ambient if isinstance(ring, GradedRing) else ring
        return cls(tuple(Polynomial(amb, comps.get(i, {})) for i in range(len(twists))), tuple(twists))

    def to_dict(self):
        out = {}
        for i, f in enumerate(self.components):
            for e, c in f._d.items():
                out[(i, e)] = c
        return out

    def degree(self):
        ring = None
        for f in self.components:
            if f:
                ring = f.ring
        if ring is None:
            return None
        return vec_degree(self.to_dict(), self.twists, ring)

    def is_zero(self):
        return not any(self.components)

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.components) + ")"


def _as_vectors(generators, ring):
    """Normalise polynomials / ModuleVectors / dicts to (dict vectors, twists)."""
    gens = list(generators)
    if not gens:
        return [], (0,)
    if all(isinstance(g, Polynomial) for g in gens):
        return [{(0, e): c for e, c in g._d.items()} for g in gens], (0,)
    if all(isinstance(g, ModuleVector) for g in gens):
        tw = gens[0].twists
        if any(g.twists != tw for g in gens):
            raise StructuralError("vectors live in different free modules")
        return [g.to_dict() for g in gens], tw
    raise TypeError("generators must be all Polynomials or all ModuleVectors")


# -- the engine -------------------------------------------------------------------

class _Elem:
    __slots__ = ("vec", "lead", "deg", "track", "ideal")

    def __init__(self, vec, lead, deg, track, ideal=False):
        self.vec = vec
        self.lead = lead
        self.deg = deg
        self.track = track
        self.ideal = ideal


class _Result:
    def __init__(self, engine, kept, syzygies):
        self.engine = engine
        self.kept = kept
        self.syzygies = syzygies

    @property
    def basis(self):
        return [g for g in self.engine.G if not g.ideal]

    def reduced(self):
        return self.engine.interreduce()


class _Engine:
    """One Buchberger run in a fixed free module ``⊕ R(-twists[i])``.

    ``track`` attaches to every input a coordinate vector over the inputs so
    that reductions to zero yield syzygies (Schreyer's construction in
    augmented form).  Inputs marked untracked (``track_mask``) contribute no
    coordinates; the ideal contributes none either, so syzygies come out
    modulo ``I``.
    """

    def __init__(self, ring, twists, track=False, ideal_mode=False):
        self.ring = ring
        self.p = ring.p
        self.twists = list(twists)
        self.trackon = track
        self.ideal_mode = ideal_mode
        self.nv = ring.nvars
        mk = ring.ambient.mono_key
        pk = [(-t, -i) for i, t in enumerate(self.twists)]
        self.tkey = lambda t: (pk[t[0]], mk(t[1]))
        self.G = []
        self.by_pos = {}
        self.materialised = set()
        self.pairs = {}
        self.heap = []
        self.seq = 0
        self.use_product = len(self.twists) == 1 and not track
        # with ideal_mode the ring's own ideal is being computed
        self.ideal = [] if ideal_mode else ring._ideal
        self.red_cache = {}

    # reduction ----------------------------------------------------------

    def find_reducer(self, lt):
        pos, m = lt
        hit = self.red_cache.get(lt)
        if hit is not None:
            return hit
        for idx in self.by_pos.get(pos, ()):
            g = self.G[idx]
            if _divides(g.lead[1], m):
                r = (g.lead[1], g.vec, g.track)
                self.red_cache[lt] = r
                return r
        if pos not in self.materialised:
            for lead, poly in self.ideal:
                if _divides(lead, m):
                    r = (lead, {(pos, e): c for e, c in poly.items()}, None)
                    self.red_cache[lt] = r
                    return r
        return None

    def reduce(self, vec, track, full=True):
        p = self.p
        key = self.tkey
        rem = {}
        while vec:
            lt = max(vec, key=key)
            c = vec[lt]
            r = self.find_reducer(lt)
            if r is None:
                if not full:
                    break
                rem[lt] = c
                del vec[lt]
                continue
            lead, rvec, rtrack = r
            shift = _sub(lt[1], lead)
            f = p - c
            vec_axpy(vec, rvec, f, shift, p)
            if track is not None and rtrack:
                vec_axpy(track, rtrack, f, shift, p)
        if rem:
            vec.update(rem)
        return vec, track

    def reduce_track(self, track):
        if not track or not self.ideal:
            return track
        return self.ring.reduce_vec(track)

    # pairs --------------------------------------------------------------

    def materialise(self, pos):
        if pos in self.materialised:
            return
        self.materialised.add(pos)
        for lead, poly in self.ideal:
            vec = {(pos, e): c for e, c in poly.items()}
            idx = len(self.G)
            self.G.append(_Elem(vec, (pos, lead), self.ring.degree(lead) + self.twists[pos], None, True))
            self.by_pos.setdefault(pos, []).append(idx)
        self.red_cache = {k: v for k, v in self.red_cache.items() if k[0] != pos}

    def push_pair(self, i, j, lcm):
        deg = self.ring.degree(lcm) + self.twists[self.G[i].lead[0]]
        key = (min(i, j), max(i, j))
        self.pairs[key] = lcm
        self.seq += 1
        heapq.heappush(self.heap, (deg, self.seq, key))

    def update(self, t):
        """Gebauer-Moeller installation of the new element ``t``."""
        h = self.G[t]
        pos, mh = h.lead
        cands = [i for i in self.by_pos.get(pos, ()) if i != t and not (h.ideal and self.G[i].ideal)]
        lcms = {i: _lcm(self.G[i].lead[1], mh) for i in cands}
        coprime = {}
        if self.use_product:
            for i in cands:
                mg = self.G[i].lead[1]
                coprime[i] = all(a == 0 or b == 0 for a, b in zip(mg, mh))
        C = list(cands)
        D = []
        while C:
            i = C.pop(0)
            L = lcms[i]
            if coprime.get(i) or (not any(_divides(lcms[j], L) for j in C)
                                  and not any(_divides(lcms[j], L) for j in D)):
                D.append(i)
        # criterion B on the old pairs at this position
        dead = []
        for key, L in self.pairs.items():
            a, b = key
            if self.G[a].lead[0] != pos or not _divides(mh, L):
                continue
            if _lcm(self.G[a].lead[1], mh) != L and _lcm(self.G[b].lead[1], mh) != L:
                dead.append(key)
        for key in dead:
            del self.pairs[key]
        for i in D:
            if coprime.get(i):
                continue
            self.push_pair(i, t, lcms[i])

    def add(self, vec, track, ideal=False):
        lt = max(vec, key=self.tkey)
        c = vec[lt]
        if c != 1:
            inv = pow(c, -1, self.p)
            vec = vec_scale(vec, inv, self.p)
            if track:
                track = vec_scale(track, inv, self.p)
        pos = lt[0]
        if not ideal and self.ideal:
            self.materialise(pos)
        idx = len(self.G)
        deg = self.ring.degree(lt[1]) + self.twists[pos]
        self.G.append(_Elem(vec, lt, deg, track, ideal))
        self.by_pos.setdefault(pos, []).append(idx)
        self.update(idx)
        return idx

    def spoly(self, i, j):
        gi, gj = self.G[i], self.G[j]
        L = self.pairs.get((i, j))
        si = _sub(L, gi.lead[1])
        sj = _sub(L, gj.lead[1])
        p = self.p
        vec = vec_axpy({}, gi.vec, 1, si, p)
        vec_axpy(vec, gj.vec, p - 1, sj, p)
        track = None
        if self.trackon:
            track = {}
            if gi.track:
                vec_axpy(track, gi.track, 1, si, p)
            if gj.track:
                vec_axpy(track, gj.track, p - 1, sj, p)
        return vec, track

    # main loop -----------------------------------------------------------------

    def run(self, inputs, classes=None, track_mask=None, deg_bound=None):
        """Process ``inputs`` (dict vectors).  Returns kept flags and syzygies.

        An input is *kept* when it does not reduce to zero at its turn, i.e.
        it is not in the span of earlier material; with inputs ordered by
        (degree, class, index) the kept ones form a minimal generating set of
        the submodule modulo ``I`` and any earlier classes.
        """
        p = self.p
        n = len(inputs)
        classes = classes or [0] * n
        zero = (0,) * self.nv
        order = []
        kept = [False] * n
        syz = []
        self.input_degrees = []
        for j, v in enumerate(inputs):
            d = vec_degree(v, self.twists, self.ring)
            if d == "inhomogeneous":
                raise InhomogeneousError(f"generator {j} is not homogeneous", j)
            self.input_degrees.append(d)
            if d is None:
                if self.trackon and (track_mask is None or track_mask[j]):
                    syz.append({(j, zero): 1})
                continue
            order.append((d, classes[j], j))
        order.sort()
        ii = 0
        while True:
            while self.heap and self.heap[0][2] not in self.pairs:
                heapq.heappop(self.heap)
            dp = self.heap[0][0] if self.heap else None
            di = order[ii][0] if ii < len(order) else None
            if dp is None and di is None:
                break
            d = min(x for x in (dp, di) if x is not None)
            if deg_bound is not None and d > deg_bound:
                break
            while self.heap and self.heap[0][0] == d:
                _, _, key = heapq.heappop(self.heap)
                if key not in self.pairs:
                    continue
                vec, track = self.spoly(*key)
                del self.pairs[key]
                vec, track = self.reduce(vec, track)
                if vec:
                    self.add(vec, self.reduce_track(track))
                elif track:
                    track = self.reduce_track(track)
                    if track:
                        syz.append(track)
            while ii < len(order) and order[ii][0] == d:
                _, _, j = order[ii]
                ii += 1
                tracked = self.trackon and (track_mask is None or track_mask[j])
                track = {(j, zero): 1} if tracked else ({} if self.trackon else None)
                vec, track = self.reduce(dict(inputs[j]), track)
                if vec:
                    kept[j] = True
                    self.add(vec, self.reduce_track(track))
                elif track:
                    track = self.reduce_track(track)
                    if track:
                        syz.append(track)
        return _Result(self, kept, syz)

    def interreduce(self):
        """Reduced Groebner basis (non-ideal part), each element monic."""
        elems = [g for g in self.G if not g.ideal]
        elems.sort(key=lambda g: self.tkey(g.lead))
        minimal = []
        for g in elems:
            pos, m = g.lead
            if any(h.lead[0] == pos and _divides(h.lead[1], m) for h in minimal):
                continue
            if self.ring is not None and any(_divides(l, m) for l in ([] if self.ideal_mode else self.ring._ideal_leads)):
                continue
            minimal.append(g)
        sub = _Engine(self.ring, self.twists, ideal_mode=self.ideal_mode)
        out = []
        for g in minimal:
            sub.G.append(_Elem(g.vec, g.lead, g.deg, None))
            sub.by_pos.setdefault(g.lead[0], []).append(len(sub.G) - 1)
        result = []
        for k, g in enumerate(minimal):
            # reduce the tail of g by all the others
            sub.by_pos[g.lead[0]].remove(k)
            sub.red_cache = {}
            lt = g.lead
            c = g.vec[lt]
            tail = dict(g.vec)
            del tail[lt]
            tail, _ = sub.reduce(tail, None)
            vec = {lt: c}
            vec.update(tail)
            sub.by_pos[g.lead[0]].append(k)
            sub.by_pos[g.lead[0]].sort()
            result.append(_Elem(vec, lt, g.deg, None))
        result.sort(key=lambda g: self.tkey(g.lead), reverse=True)
        return result


# -- public surface -----------------------------------------------------------------

class SubmoduleGB:
    """Reduced Groebner basis of ``U + I·F`` inside ``F = ⊕ R(-twists)``.

    Only the generators of ``U``'s contribution are stored; the ideal part is
    implicit (the ring's own basis applied in every position).
    """

    def __init__(self, ring, twists, elements):
        self.ring = ring
        self.twists = tuple(twists)
        self._elems = list(elements)
        self._engine = _Engine(ring, twists)
        for g in self._elems:
            self._engine.G.append(_Elem(g.vec, g.lead, g.deg, None))
            self._engine.by_pos.setdefault(g.lead[0], []).append(len(self._engine.G) - 1)
        self.reduced = True

    @property
    def generators(self):
        return [ModuleVector.from_dict(g.vec, self.ring, self.twists) for g in self._elems]

    @property
    def polynomials(self):
        """Rank-one case: the basis as polynomials."""
        return [Polynomial(self.ring.ambient, {e: c for (_, e), c in g.vec.items()}) for g in self._elems]

    def leads(self):
        return [g.lead for g in self._elems]

    def __len__(self):
        return len(self._elems)

    def normal_form_dict(self, vec):
        out, _ = self._engine.reduce(dict(vec), None)
        return out

    def normal_form(self, v):
        if isinstance(v, Polynomial):
            d = self.normal_form_dict({(0, e): c for e, c in v._d.items()})
            return Polynomial(self.ring.ambient, {e: c for (_, e), c in d.items()})
        return ModuleVector.from_dict(self.normal_form_dict(v.to_dict()), self.ring, self.twists)

    def contains_dict(self, vec):
        return not self.normal_form_dict(vec)

    def is_standard(self, pos, exps):
        for g in self._elems:
            if g.lead[0] == pos and _divides(g.lead[1], exps):
                return False
        return self.ring.is_standard(exps)

    def hilbert_function(self, d):
        """dim_k of ``(F / (U + IF))_d``."""
        total = 0
        for pos, t in enumerate(self.twists):
            if d - t < 0:
                continue
            for e in self.ring.ambient.monomials_of_degree(d - t):
                if self.is_standard(pos, e):
                    total += 1
        return total

    def standard_basis(self, d):
        out = []
        for pos, t in enumerate(self.twists):
            if d - t < 0:
                continue
            for e in self.ring.ambient.monomials_of_degree(d - t):
                if self.is_standard(pos, e):
                    out.append((pos, e))
        return out


def groebner_dicts(ring, twists, vectors, track=False, classes=None, track_mask=None):
    eng = _Engine(ring, twists, track=track)
    return eng.run(vectors, classes=classes, track_mask=track_mask)


def submodule_gb(ring, twists, vectors):
    res = groebner_dicts(ring, twists, vectors)
    return SubmoduleGB(ring, twists, res.reduced())


def buchberger(generators, ring, twists=None):
    """Reduced Groebner basis of the submodule generated by ``generators``.

    Generators are Polynomials (ideal case, computed modulo the ring's ideal)
    or ModuleVectors sharing one free module.  Inhomogeneous input raises
    :class:`InhomogeneousError` carrying the offending index.
    """
    vecs, tw = _as_vectors(generators, ring)
    if twists is not None:
        tw = tuple(twists)
    return submodule_gb(ring, tw, vecs)


def normal_form(v, gb):
    return gb.normal_form(v)


def syzygies_dicts(ring, twists, vectors, extra=()):
    """Generators of ``{c : Σ c_j v_j ∈ <extra> + I·F}`` as dicts over the inputs.

    ``extra`` vectors take part in the module but are not tracked, so the
    result is the preimage of ``<extra>`` under the map defined by ``vectors``.
    """
    vecs = list(vectors) + list(extra)
    mask = [True] * len(vectors) + [False] * len(extra)
    classes = [1] * len(vectors) + [0] * len(extra)
    res = groebner_dicts(ring, twists, vecs, track=True, classes=classes, track_mask=mask)
    return res.syzygies, res.engine.input_degrees[:len(vectors)]


def syzygy_basis(vectors, ring):
    """Generating set of the syzygies of ``vectors`` modulo the ring's ideal."""
    vecs, tw = _as_vectors(vectors, ring)
    syz, degs = syzygies_dicts(ring, tw, vecs)
    src = tuple(d if d is not None else 0 for d in degs)
    return [ModuleVector.from_dict(s, ring, src) for s in syz]


def is_groebner(gb):
    """Post-hoc Buchberger criterion: every S-vector reduces to zero."""
    elems = gb._elems
    ring = gb.ring
    p = ring.p
    members = [(g.lead, g.vec) for g in elems]
    for pos in {g.lead[0] for g in elems}:
        for lead, poly in ring._ideal:
            members.append(((pos, lead), {(pos, e): c for e, c in poly.items()}))
    for (la, va), (lb, vb) in combinations(members, 2):
        if la[0] != lb[0]:
            continue
        L = _lcm(la[1], lb[1])
        s = vec_axpy({}, va, pow(va[la], -1, p), _sub(L, la[1]), p)
        vec_axpy(s, vb, p - pow(vb[lb], -1, p), _sub(L, lb[1]), p)
        if gb.normal_form_dict(s):
            return False
    return True

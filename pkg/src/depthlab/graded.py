"""Degree-by-degree linear algebra over F_p.

Everything here works on finite-dimensional graded pieces in the monomial
basis of the ambient ring and never consults a Groebner basis: the ideal is
used only through its original generators.  That independence is the point,
the functions serve as a brute-force oracle for the Groebner-based engine.
"""

import numpy as np

__all__ = [
    "rref_mod", "rank_mod", "nullspace_mod", "Echelon", "GradedPieces", "linear_resolution",
    "tor_dimensions", "hilbert_function",
]


def rref_mod(A, p):
    """Reduced row echelon form of ``A`` over F_p; returns (rows, pivot columns)."""
    M = np.array(A, dtype=np.int64) % p
    if M.ndim != 2 or M.size == 0:
        return M.reshape(0, M.shape[1] if M.ndim == 2 else 0), []
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_mod(A, p):
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref_mod(A, p)[1])


def nullspace_mod(A, p):
    """Basis (as rows) of ``{v : A v = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref_mod(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for r, c in enumerate(piv):
            out[k, c] = (-R[r, f]) % p
    return out


class Echelon:
    """Incrementally maintained row space, for greedy basis extension."""

    def __init__(self, n, p):
        self.n = n
        self.p = p
        self.rows = {}  # pivot column -> normalised row

    def reduce(self, v):
        v = np.array(v, dtype=np.int64) % self.p
        for c, row in self.rows.items():
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v):
        """Insert ``v``; True when it enlarged the span."""
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = v * pow(int(v[c]), -1, self.p) % self.p
        for k, row in self.rows.items():
            if row[c]:
                self.rows[k] = (row - row[c] * v) % self.p
        self.rows[c] = v
        return True

    @property
    def dim(self):
        return len(self.rows)


class GradedPieces:
    """Graded pieces of free modules over ``R = S/I`` in ambient coordinates.

    A homogeneous vector of degree ``d`` in ``⊕ S(-t_j)`` becomes a dense
    array over the basis ``[(j, m) : deg m = d - t_j]``.
    """

    def __init__(self, ring):
        self.ring = ring
        self.amb = ring.ambient
        self.p = ring.p
        self.ideal = [(g.homogeneous_degree(), g._d) for g in ring.ideal_generators]
        self._idx = {}

    def monomials(self, d):
        if d < 0:
            return []
        return self.amb.monomials_of_degree(d)

    def basis(self, twists, d):
        key = (tuple(twists), d)
        hit = self._idx.get(key)
        if hit is None:
            items = [(j, m) for j, t in enumerate(twists) for m in self.monomials(d - t)]
            hit = (items, {b: k for k, b in enumerate(items)})
            self._idx[key] = hit
        return hit

    def encode(self, vec, twists, d):
        items, index = self.basis(twists, d)
        out = np.zeros(len(items), dtype=np.int64)
        for k, c in vec.items():
            out[index[k]] = c
        return out

    def decode(self, arr, twists, d):
        items, _ = self.basis(twists, d)
        return {items[k]: int(arr[k]) for k in np.nonzero(arr)[0]}

    def _shifted(self, vec, m):
        return {(pos, tuple(a + b for a, b in zip(e, m))): c for (pos, e), c in vec.items()}

    def span_rows(self, twists, gens, d, with_ideal=True):
        """Rows spanning ``(<gens> + I·F)_d``; ``gens`` are (vector, degree) pairs."""
        items, index = self.basis(twists, d)
        rows = []
        for vec, dg in gens:
            if dg is None or dg > d:
                continue
            for m in self.monomials(d - dg):
                rows.append(self.encode(self._shifted(vec, m), twists, d))
        if with_ideal:
            for j, t in enumerate(twists):
                for dg, g in self.ideal:
                    if dg + t > d:
                        continue
                    for m in self.monomials(d - t - dg):
                        row = np.zeros(len(items), dtype=np.int64)
                        for e, c in g.items():
                            row[index[(j, tuple(a + b for a, b in zip(e, m)))]] = c
                        rows.append(row)
        if not rows:
            return np.zeros((0, len(items)), dtype=np.int64)
        return np.array(rows, dtype=np.int64) % self.p

    def map_matrix(self, src_twists, tgt_twists, columns, d):
        """Matrix of ``F_src,d -> F_tgt,d`` in ambient coordinates (columns = images)."""
        s_items, _ = self.basis(src_twists, d)
        t_items, _ = self.basis(tgt_twists, d)
        A = np.zeros((len(t_items), len(s_items)), dtype=np.int64)
        for k, (j, m) in enumerate(s_items):
            A[:, k] = self.encode(self._shifted(columns[j], m), tgt_twists, d)
        return A % self.p

    def quotient_dim(self, twists, gens, d):
        items, _ = self.basis(twists, d)
        return len(items) - rank_mod(self.span_rows(twists, gens, d), self.p)


def _gens_with_degrees(ring, twists, vecs):
    from .groebner import vec_degree
    return [(v, vec_degree(v, twists, ring)) for v in vecs]


def hilbert_function(M, d, pieces=None):
    """``dim_k M_d`` by linear algebra."""
    G = pieces or GradedPieces(M.ring)
    return G.quotient_dim(M.twists, _gens_with_degrees(M.ring, M.twists, M.relations), d)


def _kernel_generators(G, src, tgt, columns, maxdeg):
    """Generators, up to degree ``maxdeg``, of ``ker(F_src -> F_tgt)`` over ``R``."""
    p = G.p
    chosen = []
    start = min(src) if src else 0
    for d in range(start, maxdeg + 1):
        items, _ = G.basis(src, d)
        if not items:
            continue
        A = G.map_matrix(src, tgt, columns, d)
        W = G.span_rows(tgt, [], d)
        # v with A v in span(W): nullspace of [A | W^T], first block
        big = np.concatenate([A, W.T], axis=1) if W.shape[0] else A
        Z = nullspace_mod(big, p)[:, :len(items)] if big.shape[1] else np.zeros((0, len(items)), np.int64)
        ech = Echelon(len(items), p)
        for row in G.span_rows(src, chosen, d):
            ech.add(row)
        for z in Z:
            if ech.add(z):
                chosen.append((G.decode(z, src, d), d))
                for row in G.span_rows(src, [chosen[-1]], d, with_ideal=False):
                    ech.add(row)
    return chosen


def linear_resolution(M, maxdeg, length, pieces=None):
    """A free resolution of ``M`` that is exact in degrees ``<= maxdeg``.

    Not minimal: ``F_0`` is ``M``'s own generator module and ``F_1`` has one
    generator per relation.  Returns ``[(twists_i, columns_i)]`` where
    ``columns_i`` describes ``F_i -> F_{i-1}`` (empty for ``i = 0``).
    """
    G = pieces or GradedPieces(M.ring)
    ring = M.ring
    steps = [(tuple(M.twists), [])]
    rels = [(r, d) for r, d in _gens_with_degrees(ring, M.twists, M.relations) if d is not None and d <= maxdeg]
    cur = rels
    for i in range(1, length + 1):
        twists = tuple(d for _, d in cur)
        cols = [v for v, _ in cur]
        steps.append((twists, cols))
        if not cur:
            break
        cur = _kernel_generators(G, twists, steps[-2][0], cols, maxdeg)
    return steps


def tor_dimensions(M, N, maxdeg, imax, pieces=None):
    """``{(i, d): dim_k Tor_i(M, N)_d}`` for ``i <= imax`` and degrees ``<= maxdeg``."""
    G = pieces or GradedPieces(M.ring)
    p = G.p
    ring = M.ring
    steps = linear_resolution(M, maxdeg - (min(N.twists) if N.twists else 0), imax + 1, G)
    while len(steps) < imax + 2:
        steps.append(((), []))
    nrel = _gens_with_degrees(ring, N.twists, N.relations)
    rN = len(N.twists)

    def tensor_twists(tw):
        return tuple(t + s for t in tw for s in N.twists)

    def tensor_cols(cols):
        out = []
        for col in cols:
            for b in range(rN):
                out.append({(c * rN + b, e): v for (c, e), v in col.items()})
        return out

    def block_rels(tw):
        out = []
        for a in range(len(tw)):
            for r, d in nrel:
                out.append(({(a * rN + pos, e): c for (pos, e), c in r.items()}, d + tw[a] if d is not None else None))
        return out

    ttw = [tensor_twists(tw) for tw, _ in steps]
    tcols = [tensor_cols(cols) for _, cols in steps]
    trel = [block_rels(tw) for tw, _ in steps]
    low = min([min(t) for t in ttw if t] or [0])
    out = {}
    for d in range(low, maxdeg + 1):
        for i in range(imax + 1):
            items, _ = G.basis(ttw[i], d)
            if not items:
                out[(i, d)] = 0
                continue
            Wi = G.span_rows(ttw[i], trel[i], d)
            # cycles: preimage of W_{i-1} under ∂_i
            if i > 0 and G.basis(ttw[i - 1], d)[0]:
                A = G.map_matrix(ttw[i], ttw[i - 1], tcols[i], d)
                Wb = G.span_rows(ttw[i - 1], trel[i - 1], d)
                rW = rank_mod(Wb, p) if Wb.shape[0] else 0
                stacked = np.concatenate([A.T, Wb]) if Wb.shape[0] else A.T
                rank_pa = rank_mod(stacked, p) - rW
                dimZ = len(items) - rank_pa
            else:
                dimZ = len(items)
            rows = [Wi] if Wi.shape[0] else []
            if G.basis(ttw[i + 1], d)[0]:
                A1 = G.map_matrix(ttw[i + 1], ttw[i], tcols[i + 1], d)
                rows.append(A1.T)
            dimB = rank_mod(np.concatenate(rows), p) if rows else 0
            out[(i, d)] = dimZ - dimB
    return out

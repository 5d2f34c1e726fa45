"""Reducing pd-sequences: verification and bounded search.

A step is a short exact sequence

    0 -> K^a(-s) --alpha--> K' --beta--> (Ω^n K)^b -> 0

where ``Ω^n K`` is the syzygy module computed by :func:`syzygy_module`
(``Ω^0 K`` is ``K`` as given).  A sequence ``K_0 = M, K_1, ..., K_r`` whose
steps verify and whose last module has finite projective dimension
certifies ``red-pd(M) <= r``.

The search builds middle terms as extensions: a degree-0 class in
``Ext^1(C, A)`` is represented by a cocycle ``phi`` on the relations of
``C`` and realised by the pushout ``E = (A ⊕ F_0^C) / (rel A, (-phi(u), u))``.
"""

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product

import numpy as np

from .algebra import StructuralError
from .graded import Echelon, nullspace_mod, rank_mod
from .groebner import vec_axpy, vec_degree, vec_offset
from .resolve import (
    ModuleHom, PresentedModule, k_polynomial, kernel_minimal_generators, laurent_divides,
    minimal_free_resolution, syzygy_module,
)

__all__ = [
    "ReducingStep", "ReducingSequence", "VerificationResult", "omega", "verify_reducing_sequence",
    "search_reducing_sequence", "ext1_classes", "extension_module", "pd_at_most",
]


def omega(K, n):
    """``Ω^n K``; for ``n = 0`` the module itself, untouched."""
    if n == 0:
        return K
    return syzygy_module(K, n)


def pd_at_most(K, bound):
    """True when the minimal resolution of ``K`` over the ring stops by ``F_bound``."""
    res = minimal_free_resolution(K, bound + 1)
    return res.complete and res.length <= bound


@dataclass
class ReducingStep:
    a: int
    b: int
    n: int
    shifts: tuple  # one per copy of K
    middle: PresentedModule
    alpha: list   # images of the generators of ⊕ K(-shifts[i]) in the middle module
    beta: list    # images of the middle module's generators in (Ω^n K)^b

    def to_json(self):
        return {"a": self.a, "b": self.b, "n": self.n, "shifts": list(self.shifts),
                "middle_twists": list(self.middle.twists)}


@dataclass
class ReducingSequence:
    modules: list
    steps: list
    pd_tail: object = None
    stats: dict = field(default_factory=dict)

    @property
    def length(self):
        return len(self.steps)

    def to_json(self):
        return {"r": self.length, "steps": [s.to_json() for s in self.steps],
                "pd_tail": self.pd_tail, **({"search": self.stats} if self.stats else {})}


@dataclass
class VerificationResult:
    ok: bool
    red_pd_bound: object = None
    step: object = None
    failed_check: object = None
    checks: list = field(default_factory=list)

    def to_json(self):
        out = {"verified": self.ok, "checks": self.checks}
        if self.ok:
            out["red_pd_at_most"] = self.red_pd_bound
        else:
            out["failed_step"] = self.step
            out["failed_check"] = self.failed_check
        return out


def _step_modules(K, shifts, b, n):
    A = PresentedModule(K.ring, (), ())
    for s in shifts:
        A = A.direct_sum(K.shift(-s))
    C1 = omega(K, n)
    C = C1.power(b)
    return A, C1, C


def _exact_dims(A, E, C, degrees):
    return all(E.hilbert_function(d) == A.hilbert_function(d) + C.hilbert_function(d) for d in degrees)


def verify_step(K, step):
    """List of (check, passed) for one step; stops at the first failure."""
    if len(step.shifts) != step.a:
        return [("shape", False)]
    A, _, C = _step_modules(K, step.shifts, step.b, step.n)
    E = step.middle
    checks = []

    def record(name, ok):
        checks.append((name, bool(ok)))
        return ok

    try:
        alpha = ModuleHom(A, E, step.alpha)
        beta = ModuleHom(E, C, step.beta)
    except StructuralError:
        record("maps-homogeneous", False)
        return checks
    if not record("alpha-well-defined", alpha.is_well_defined()):
        return checks
    if not record("beta-well-defined", beta.is_well_defined()):
        return checks
    if not record("injectivity", alpha.is_injective()):
        return checks
    if not record("surjectivity", beta.is_surjective()):
        return checks
    if not record("composition", beta.compose(alpha).is_zero()):
        return checks
    if not record("middle-exactness", alpha.image_contains(beta.kernel_generators())):
        return checks
    # second route: additivity of Hilbert functions over the generator range
    tw = list(A.twists) + list(E.twists) + list(C.twists)
    degrees = range(min(tw), max(tw) + 4) if tw else range(0)
    record("hilbert-additivity", _exact_dims(A, E, C, degrees))
    return checks


def verify_reducing_sequence(seq, pd_bound=None):
    """Certify every step and the projective dimension of the last module."""
    ring = seq.modules[0].ring
    if pd_bound is None:
        pd_bound = ring.depth
    if len(seq.modules) != len(seq.steps) + 1:
        raise StructuralError("need one module more than steps")
    all_checks = []
    for i, step in enumerate(seq.steps, start=1):
        if step.middle is not seq.modules[i] and step.middle.twists != seq.modules[i].twists:
            return VerificationResult(False, step=i, failed_check="module-mismatch", checks=all_checks)
        checks = verify_step(seq.modules[i - 1], step)
        all_checks.append({"step": i, "checks": [{"name": c, "passed": ok} for c, ok in checks]})
        for name, ok in checks:
            if not ok:
                return VerificationResult(False, step=i, failed_check=name, checks=all_checks)
    if not pd_at_most(seq.modules[-1], pd_bound):
        return VerificationResult(False, step=len(seq.steps), failed_check="tail-pd", checks=all_checks)
    seq.pd_tail = minimal_free_resolution(seq.modules[-1], pd_bound + 1).length
    return VerificationResult(True, red_pd_bound=len(seq.steps), checks=all_checks)


# -- extension classes ------------------------------------------------------------------

def _coords(A, vec, d):
    """Coordinates of ``vec`` in ``A_d`` on the standard monomial basis."""
    basis = A.gb.standard_basis(d)
    index = {b: k for k, b in enumerate(basis)}
    out = np.zeros(len(basis), dtype=np.int64)
    for key, c in A.reduce(vec).items():
        out[index[key]] = c
    return out


def ext1_classes(C, A):
    """Basis of ``Ext^1(C, A)_0`` as cocycles on the relations of ``C``.

    Each basis element is a list giving, for every relation of ``C``, its
    image in ``A``'s generators.
    """
    ring = C.ring
    p = ring.p
    rels = C.relations
    if not rels:
        return []
    rdeg = [vec_degree(u, C.twists, ring) for u in rels]
    syz = kernel_minimal_generators(ring, C.twists, tuple(rdeg), rels)
    sdeg = [vec_degree(s, tuple(rdeg), ring) for s in syz]
    h1 = [(j, key) for j, t in enumerate(rdeg) for key in A.gb.standard_basis(t)]
    if not h1:
        return []
    h0 = [(i, key) for i, t in enumerate(C.twists) for key in A.gb.standard_basis(t)]
    # δ1: cochains on relations -> cochains on syzygies
    rows = []
    for c, s in enumerate(syz):
        block = np.zeros((len(A.gb.standard_basis(sdeg[c])), len(h1)), dtype=np.int64)
        for k, (j, (pos, e)) in enumerate(h1):
            img = {}
            for (jj, m), v in s.items():
                if jj == j:
                    vec_axpy(img, {(pos, e): 1}, v, m, p)
            if img:
                block[:, k] = _coords(A, img, sdeg[c])
        rows.append(block)
    D1 = np.concatenate(rows) if rows else np.zeros((0, len(h1)), dtype=np.int64)
    Z = nullspace_mod(D1, p) if D1.shape[0] else np.eye(len(h1), dtype=np.int64)
    # δ0: cochains on generators -> cochains on relations
    ech = Echelon(len(h1), p)
    h1_index = {b: k for k, b in enumerate(h1)}
    for (i, (pos, e)) in h0:
        col = np.zeros(len(h1), dtype=np.int64)
        for j, u in enumerate(rels):
            img = {}
            for (ii, m), v in u.items():
                if ii == i:
                    vec_axpy(img, {(pos, e): 1}, v, m, p)
            if img:
                co = _coords(A, img, rdeg[j])
                basis = A.gb.standard_basis(rdeg[j])
                for k, b in enumerate(basis):
                    if co[k]:
                        col[h1_index[(j, b)]] = co[k]
        ech.add(col)
    out = []
    for z in Z:
        if ech.add(z):
            phi = [dict() for _ in rels]
            for k in np.nonzero(z)[0]:
                j, key = h1[k]
                phi[j][key] = int(z[k])
            out.append(phi)
    return out


def extension_module(A, C, phi):
    """Pushout ``E`` of ``0 -> ΩC -> F_0^C -> C -> 0`` along ``phi``, with its two maps."""
    ring = A.ring
    p = ring.p
    nA = A.rank
    rels = [dict(r) for r in A.relations]
    for j, u in enumerate(C.relations):
        v = {k: (p - c) % p for k, c in phi[j].items()}
        vec_axpy(v, vec_offset(u, nA), 1, None, p)
        if v:
            rels.append(v)
    E = PresentedModule(ring, tuple(A.twists) + tuple(C.twists), rels)
    z = (0,) * ring.nvars
    alpha = [{(i, z): 1} for i in range(nA)]
    beta = [{} for _ in range(nA)] + [{(i, z): 1} for i in range(C.rank)]
    return E, alpha, beta


def _class_matrices(a, cols, budget):
    """RREF ``a x cols`` matrices over {0, 1}: zero first, then unit-row ones, then the rest."""
    yield np.zeros((a, cols), dtype=np.int64)
    count = 1
    if cols == 0:
        return
    top = min(a, cols)
    for r in range(top, 0, -1):
        for piv in combinations(range(cols), r):
            if count >= budget:
                return
            m = np.zeros((a, cols), dtype=np.int64)
            for i, c in enumerate(piv):
                m[i, c] = 1
            count += 1
            yield m
    for r in range(top, 0, -1):
        for piv in combinations(range(cols), r):
            free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, cols) if c not in piv]
            for bits in product((0, 1), repeat=len(free)):
                if not any(bits):
                    continue
                if count >= budget:
                    return
                m = np.zeros((a, cols), dtype=np.int64)
                for i, c in enumerate(piv):
                    m[i, c] = 1
                for (i, c), bit in zip(free, bits):
                    m[i, c] = bit
                count += 1
                yield m


def _cocycle_for(rows, bases, C1, K, b):
    """Cocycle on the relations of ``C1^b`` with values in ``⊕ K(-s_i)``.

    ``rows[i]`` holds the coefficients of the class component landing in
    copy ``i``: entry ``j*e + k`` multiplies basis class ``k`` (of that copy's
    shift) on copy ``j`` of ``C1``.
    """
    p = C1.ring.p
    nr = len(C1.relations)
    nK = K.rank
    phi = [dict() for _ in range(nr * b)]
    for i, (row, basis) in enumerate(zip(rows, bases)):
        e = len(basis)
        for j in range(b):
            for k in range(e):
                c = int(row[j * e + k])
                if not c:
                    continue
                for u in range(nr):
                    vec_axpy(phi[j * nr + u], vec_offset(basis[k][u], i * nK), c, None, p)
    return phi


def _diagonal_product(lists, budget):
    """Tuples from the product of ``lists`` ordered by the sum of their indices."""
    sizes = [len(x) for x in lists]
    if any(n == 0 for n in sizes):
        return
    count = 0
    total = 0
    top = sum(n - 1 for n in sizes)
    while total <= top:
        for idx in product(*[range(min(n, total + 1)) for n in sizes]):
            if sum(idx) != total:
                continue
            yield tuple(x[i] for x, i in zip(lists, idx))
            count += 1
            if count >= budget:
                return
        total += 1


def _classes(shifts, dims, b, budget):
    """Class coefficient rows for a shift tuple; equal shifts share one RREF block."""
    groups = []
    for s in shifts:
        if groups and groups[-1][0] == s:
            groups[-1][1] += 1
        else:
            groups.append([s, 1])
    lists = [list(_class_matrices(m, b * dims[s], budget)) for s, m in groups]
    for combo in _diagonal_product(lists, budget):
        rows = []
        for mat in combo:
            rows.extend(list(mat))
        yield rows


def _shift_tuples(window, a):
    """Non-increasing shift tuples; uniform ones first."""
    tuples = list(combinations_with_replacement(window, a))
    return sorted(tuples, key=lambda t: len(set(t)))


def _shift_window(C1, K, slack):
    ring = K.ring
    if not C1.relations or not K.twists:
        return []
    rdeg = [vec_degree(u, C1.twists, ring) for u in C1.relations]
    hi = max(rdeg) - min(K.twists)
    lo = min(rdeg) - max(K.twists) - 1 - slack
    return list(range(hi, lo - 1, -1))


def search_reducing_sequence(M, max_r=1, max_n=1, max_ab=4, pd_bound=None, class_budget=256,
                             min_n=0, shift_slack=0):
    """First verified reducing pd-sequence within the budgets, or None.

    Order: increasing length ``r``, then ``n``, then ``a + b`` (``a``
    ascending), then shift tuple (uniform shifts first, largest first), then class
    index.  Copies of ``K`` may carry different shifts.  ``None`` is
    not a proof that no sequence exists, only that none was found.
    """
    if max_r < 0 or max_n < 0 or max_ab < 1 or class_budget < 1:
        raise ValueError("budgets must be positive")
    ring = M.ring
    if pd_bound is None:
        pd_bound = ring.depth
    stats = {"candidates": 0}
    if pd_at_most(M, pd_bound):
        seq = ReducingSequence([M], [], stats=stats)
        verify_reducing_sequence(seq, pd_bound)
        return seq

    qR = k_polynomial(PresentedModule.free(ring, (0,)))
    kpoly = {}

    def kp(key, module):
        if key not in kpoly:
            kpoly[key] = k_polynomial(module)
        return kpoly[key]

    def group_possible(K, C1, shifts, b, n):
        # every extension of C by A has the Hilbert series of A ⊕ C; finite pd
        # forces its K-polynomial to be a multiple of the ring's
        qa = kp((id(K), "K"), K)
        qc = kp((id(K), n), C1)
        tot = {}
        for s in shifts:
            for j, c in qa.items():
                tot[j + s] = tot.get(j + s, 0) + c
        for j, c in qc.items():
            tot[j] = tot.get(j, 0) + b * c
        tot = {j: c for j, c in tot.items() if c}
        return laurent_divides(tot, qR)

    def candidates(K, final):
        for n in range(min_n, max_n + 1):
            C1 = omega(K, n)
            if C1.rank == 0:
                continue
            window = _shift_window(C1, K, shift_slack)
            bases = {}
            for s in range(2, 2 * max_ab + 1):
                for a in range(1, max_ab + 1):
                    b = s - a
                    if b < 1 or b > max_ab:
                        continue
                    for shifts in _shift_tuples(window, a):
                        if final and not group_possible(K, C1, shifts, b, n):
                            stats["groups_skipped"] = stats.get("groups_skipped", 0) + 1
                            continue
                        for sh in set(shifts):
                            if sh not in bases:
                                bases[sh] = ext1_classes(C1, K.shift(-sh))
                        A, _, C = _step_modules(K, shifts, b, n)
                        dims = {sh: len(bases[sh]) for sh in shifts}
                        for rows in _classes(shifts, dims, b, class_budget):
                            phi = _cocycle_for(rows, [bases[sh] for sh in shifts], C1, K, b)
                            E, alpha, beta = extension_module(A, C, phi)
                            stats["candidates"] += 1
                            yield ReducingStep(a, b, n, tuple(shifts), E, alpha, beta)

    def dfs(K, depth):
        for step in candidates(K, depth == 1):
            E = step.middle
            if depth == 1:
                if pd_at_most(E, pd_bound):
                    return [step]
            else:
                rest = dfs(E, depth - 1)
                if rest is not None:
                    return [step] + rest
        return None

    for r in range(1, max_r + 1):
        steps = dfs(M, r)
        if steps is not None:
            seq = ReducingSequence([M] + [s.middle for s in steps], steps, stats=dict(stats))
            result = verify_reducing_sequence(seq, pd_bound)
            if result.ok:
                seq.stats["verification"] = result.to_json()
                return seq
    return None

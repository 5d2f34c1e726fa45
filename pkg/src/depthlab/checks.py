"""Checkers for the depth formula and its relatives.

Every checker returns a :class:`FormulaReport`.  Verdicts:

* ``holds`` / ``consistent``: both sides computed, they agree, every
  hypothesis gate passed;
* ``violated`` / ``inconsistent``: gates passed but the sides disagree;
* ``unconditioned``: a gate failed, the comparison is reported but claims
  nothing;
* ``refused``: required input (e.g. a reducing certificate) is missing;
* ``unsupported``: the question cannot be decided by this engine.

Answers that depend on Tor vanishing carry "certified below B" semantics:
``q`` is the largest index ``<= B`` with non-zero Tor, and a gate passes
only when ``q < B``.
"""

import math
from dataclasses import dataclass, field

from .algebra import Polynomial
from .groebner import GradedRing, syzygies_dicts
from .homology import good_truncation_below
from .invariants import depth_complex, depth_module, derived_tensor, q_bound
from .reducing import ReducingSequence, search_reducing_sequence, verify_reducing_sequence
from .resolve import ModuleHom, PresentedModule, minimal_free_resolution, minimal_generators

__all__ = [
    "Hypothesis", "FormulaReport", "depth_formula_check", "dependency_bounds_check", "torsion_check",
    "one_dim_equivalence_check", "auslander_tor_check", "regular_element_reduction",
    "is_nonzerodivisor", "quotient_by_element", "is_complete_intersection", "reducing_gate", "annihilator",
    "tor_torsion_check",
]

AUTO_BUDGET = {"max_r": 1, "max_n": 1, "max_ab": 3, "class_budget": 64}


def _num(v):
    return "inf" if v == math.inf else v


@dataclass
class Hypothesis:
    name: str
    passed: bool
    detail: object = None

    def to_json(self):
        out = {"name": self.name, "passed": self.passed}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class FormulaReport:
    formula: str
    lhs: object
    rhs: object
    hypotheses: list
    verdict: str
    bound: object = None
    certificate: object = None
    details: dict = field(default_factory=dict)

    @property
    def equal(self):
        return self.lhs is not None and self.lhs == self.rhs

    @property
    def gates_passed(self):
        return all(h.passed for h in self.hypotheses)

    def to_json(self):
        out = {
            "formula": self.formula,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "hypotheses": [h.to_json() for h in self.hypotheses],
            "verdict": self.verdict,
            "bound_B": self.bound,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.details:
            out["details"] = {k: _num(v) if isinstance(v, float) else v for k, v in self.details.items()}
        return out


def _verdict(equal, gates, yes="holds", no="violated"):
    if not gates:
        return "unconditioned"
    return yes if equal else no


def _nonzero(M, label):
    if M.rank == 0 or M.is_zero():
        raise ValueError(f"{label} is the zero module")


# -- ring-level facts ---------------------------------------------------------------

def is_complete_intersection(ring):
    """Ideal minimally generated by ``codim`` elements (a regular sequence)."""
    gens = [{(0, e): c for e, c in g._d.items()} for g in ring.ideal_generators]
    amb = GradedRing(ring.ambient)
    mingens = minimal_generators(amb, (0,), gens) if gens else []
    return len(mingens) == ring.nvars - ring.dim


def reducing_gate(M, certificate="auto", pd_bound=None):
    """Hypothesis "M has finite reducing projective dimension", with its evidence.

    ``certificate`` is a ReducingSequence to verify, ``"auto"`` (complete
    intersection ring, finite pd, or a small search) or None (gate fails).
    """
    ring = M.ring
    if certificate is None:
        return Hypothesis("reducing-certificate", False, "missing"), None
    if isinstance(certificate, ReducingSequence):
        res = verify_reducing_sequence(certificate, pd_bound)
        if res.ok:
            return Hypothesis("reducing-certificate", True, f"supplied, red-pd <= {res.red_pd_bound}"), res.to_json()
        return Hypothesis("reducing-certificate", False,
                          f"supplied certificate failed at step {res.step}: {res.failed_check}"), res.to_json()
    if certificate != "auto":
        raise ValueError("certificate must be a ReducingSequence, 'auto' or None")
    if is_complete_intersection(ring):
        return Hypothesis("reducing-certificate", True, "complete-intersection ring"), None
    seq = search_reducing_sequence(M, pd_bound=pd_bound, **AUTO_BUDGET)
    if seq is None:
        return Hypothesis("reducing-certificate", False, "no certificate within search budgets"), None
    return Hypothesis("reducing-certificate", True, f"found, red-pd <= {seq.length}"), seq.to_json()


def _q_gate(qb, ring, reducing):
    """``q`` certified below the bound; with a reducing certificate a finite ``q``
    is at most ``depth R``, so a later non-vanishing Tor means ``q`` is infinite
    (or the certificate is wrong) and nothing is claimed."""
    q = qb.value
    if qb.saturated:
        return Hypothesis("q-certified", False, f"q = {q} reaches B = {qb.bound}")
    if reducing and q > ring.depth:
        return Hypothesis("q-certified", False,
                          f"Tor_{q} nonzero beyond depth R = {ring.depth}: q infinite or certificate wrong")
    return Hypothesis("q-certified", True, f"q = {q} below B = {qb.bound}")


def _cm_gate(ring):
    d, t = ring.dim, ring.depth
    return Hypothesis("cohen-macaulay-ring", d == t, f"dim {d}, depth {t}")


# -- depth formulas -----------------------------------------------------------------------

def depth_formula_check(M, N, bound, mode="derived", certificate="auto", method="auto"):
    """Compare ``depth M + depth N`` with ``depth R + depth(M ⊗ N)``.

    ``mode="classic"`` uses the ordinary tensor product and needs ``q = 0``;
    ``mode="derived"`` uses ``τ≤q(F_M ⊗ N)``.
    """
    if mode not in ("classic", "derived"):
        raise ValueError(f"unknown mode {mode!r}")
    _nonzero(M, "M")
    _nonzero(N, "N")
    ring = M.ring
    res = minimal_free_resolution(M, bound + 1)
    qb = q_bound(M, N, bound, res)
    q = qb.value
    dM = depth_module(M).value
    dN = depth_module(N).value
    dR = ring.depth
    gate, cert = reducing_gate(M, certificate)
    hyps = [_cm_gate(ring), _q_gate(qb, ring, gate.passed), gate]
    details = {"q": q, "depth_M": dM, "depth_N": dN, "depth_R": dR}
    lhs = dM + dN
    if mode == "classic":
        hyps.append(Hypothesis("tor-independent", q == 0, f"q = {q}"))
        dT = depth_module(qb.modules[0]).value
        details["depth_tensor"] = dT
        rhs = dR + dT
        formula = "classic depth formula"
    else:
        X = good_truncation_below(derived_tensor(M, N, bound, res), q)
        rep = depth_complex(X, method)
        details["depth_derived_tensor"] = rep.value
        details["depth_method"] = rep.method
        rhs = dR + rep.value
        formula = "derived depth formula"
        # second route: depth(Tor_q) - q whenever the top homology has depth <= 1
        dTq = depth_module(qb.modules[q]).value
        details["depth_tor_q"] = dTq
        if q == 0 or dTq <= 1:
            details["tor_q_route"] = dTq - q
            if dTq - q != rep.value:
                hyps.append(Hypothesis("cross-validation", False, "top-homology route disagrees"))
    equal = lhs == rhs
    report = FormulaReport(formula, lhs, rhs, hyps, _verdict(equal, all(h.passed for h in hyps)), bound, cert, details)
    return report


def auslander_tor_check(M, N, bound, certificate="auto"):
    """``depth M + depth N = depth R + depth Tor_q - q`` when ``q = 0`` or ``depth Tor_q <= 1``."""
    _nonzero(M, "M")
    _nonzero(N, "N")
    ring = M.ring
    qb = q_bound(M, N, bound)
    q = qb.value
    dTq = depth_module(qb.modules[q]).value
    gate, cert = reducing_gate(M, certificate)
    hyps = [_cm_gate(ring), _q_gate(qb, ring, gate.passed),
            Hypothesis("tor-q-shallow", q == 0 or dTq <= 1, f"depth Tor_q = {_num(dTq)}"), gate]
    lhs = depth_module(M).value + depth_module(N).value
    rhs = ring.depth + dTq - q
    return FormulaReport("auslander depth formula with Tor_q", lhs, rhs, hyps,
                         _verdict(lhs == rhs, all(h.passed for h in hyps)), bound, cert, {"q": q})


def dependency_bounds_check(M, N, bound, certificate):
    """Bounds on ``q`` from finite reducing projective dimension.

    Checks ``q <= depth R`` and, when ``depth M <= depth R``,
    ``depth R - depth M - depth N <= q <= depth R - depth M`` with the two
    equality cases.  The supremum over associated primes of ``Tor_q`` is
    evaluated only at the maximal ideal and reported as partial.
    """
    _nonzero(M, "M")
    _nonzero(N, "N")
    ring = M.ring
    if certificate is None:
        return FormulaReport("dependency bounds", None, None,
                             [Hypothesis("reducing-certificate", False, "missing")], "refused", bound)
    gate, cert = reducing_gate(M, certificate)
    qb = q_bound(M, N, bound)
    q = qb.value
    dM = depth_module(M).value
    dN = depth_module(N).value
    dR = ring.depth
    hyps = [gate, _q_gate(qb, ring, gate.passed)]
    checks = [{"name": "q <= depth R", "holds": q <= dR}]
    if dM <= dR:
        lower = dR - dM - dN
        upper = dR - dM
        checks.append({"name": "lower bound", "holds": lower <= q, "value": lower})
        checks.append({"name": "upper bound", "holds": q <= upper, "value": upper})
        if dM == dR:
            checks.append({"name": "equal depths force q = 0", "holds": q == 0})
        if dN == 0:
            checks.append({"name": "depth N = 0 forces q = depth R - depth M", "holds": q == upper})
    else:
        hyps.append(Hypothesis("depth-M-at-most-depth-R", False, f"{dM} > {dR}"))
    dTq = depth_module(qb.modules[q]).value
    partial = {"maximal_ideal_associated": dTq == 0}
    if dTq == 0:
        m_term = dR - dM - dN
        partial["m_contribution"] = m_term
        partial["m_contribution_at_most_q"] = m_term <= q
        checks.append({"name": "maximal-ideal term <= q (partial sup check)", "holds": m_term <= q})
    ok = all(c["holds"] for c in checks)
    gates = all(h.passed for h in hyps)
    verdict = _verdict(ok, gates, "consistent", "violated")
    details = {"q": q, "depth_M": dM, "depth_N": dN, "depth_R": dR, "checks": checks, "sup_over_ass": partial}
    if gate.passed and not qb.saturated and q > dR:
        details["evidence"] = "Tor does not vanish past depth R within B: q is infinite or the certificate is wrong"
    return FormulaReport("dependency bounds", q, None, hyps, verdict, bound, cert, details)


# -- torsion --------------------------------------------------------------------------------

def annihilator(T):
    """Generators of ``ann(T)`` as polynomials."""
    ring = T.ring
    g = T.rank
    nv = ring.nvars
    z = (0,) * nv
    twists = []
    for i in range(g):
        twists.extend(t - T.twists[i] for t in T.twists)
    v = {(i * g + i, z): 1 for i in range(g)}
    extra = []
    for i in range(g):
        for r in T.relations:
            extra.append({(i * g + pos, e): c for (pos, e), c in r.items()})
    syz, _ = syzygies_dicts(ring, tuple(twists), [v], extra=extra)
    out = []
    for s in syz:
        f = ring.reduce_poly_dict({e: c for (_, e), c in s.items()})
        if f:
            out.append(Polynomial(ring.ambient, f))
    return out


def torsion_check(T, domain_asserted=False):
    """``torsion`` / ``not-torsion`` over a domain, else ``unsupported``."""
    if not domain_asserted:
        return "unsupported"
    if T.rank == 0 or T.is_zero():
        return "torsion"
    return "torsion" if annihilator(T) else "not-torsion"


def tor_torsion_check(M, N, bound, domain_asserted=False):
    """Whether ``Tor_i(M, N)`` is torsion for ``1 <= i <= bound``."""
    qb = q_bound(M, N, bound)
    status = [torsion_check(t, domain_asserted) for t in qb.modules[1:]]
    return {"bound_B": bound, "tor_torsion": status,
            "all_torsion": all(s == "torsion" for s in status) if domain_asserted else None}


def one_dim_equivalence_check(M, N, bound, certificate="auto"):
    """Truth table of: (i) q = 0, (ii) M or N torsion-free, (iii) depth formula.

    Over a one-dimensional Cohen-Macaulay ring a non-zero module is
    torsion-free exactly when its depth is 1.
    """
    _nonzero(M, "M")
    _nonzero(N, "N")
    ring = M.ring
    if ring.dim != 1 or ring.depth != 1:
        return FormulaReport("one-dimensional equivalence", None, None,
                             [Hypothesis("one-dimensional-cm-ring", False, f"dim {ring.dim}, depth {ring.depth}")],
                             "refused", bound)
    qb = q_bound(M, N, bound)
    q = qb.value
    gate, cert = reducing_gate(M, certificate)
    hyps = [Hypothesis("one-dimensional-cm-ring", True), gate, _q_gate(qb, ring, gate.passed)]
    dM = depth_module(M).value
    dN = depth_module(N).value
    dT = depth_module(qb.modules[0]).value
    c1 = q == 0
    c2 = dM >= 1 or dN >= 1
    c3 = dM + dN == ring.depth + dT
    table = {"q_zero": c1, "torsion_free": c2, "depth_formula": c3}
    agree = c1 == c2 == c3
    verdict = _verdict(agree, all(h.passed for h in hyps), "consistent", "inconsistent")
    return FormulaReport("one-dimensional equivalence", dM + dN, ring.depth + dT, hyps, verdict, bound, cert,
                         {"q": q, "truth_table": table, "depth_M": dM, "depth_N": dN, "depth_tensor": dT})


# -- regular elements ---------------------------------------------------------------------------

def is_nonzerodivisor(x, M):
    """Whether multiplication by the homogeneous element ``x`` is injective on ``M``."""
    ring = M.ring
    if isinstance(x, str):
        x = ring.ambient.parse(x)
    x = ring.reduce(x)
    if x.is_zero():
        return M.rank == 0 or M.is_zero()
    d = x.homogeneous_degree()
    src = M.shift(-d)
    images = [{(i, e): c for e, c in x._d.items()} for i in range(M.rank)]
    return ModuleHom(src, M, images).is_injective()


def quotient_by_element(M, x, ring_mod):
    """``M/xM`` as a module over ``ring_mod = R/xR``."""
    if isinstance(x, str):
        x = M.ring.ambient.parse(x)
    rels = [dict(r) for r in M.relations]
    rels += [{(i, e): c for e, c in x._d.items()} for i in range(M.rank)]
    return PresentedModule(ring_mod, M.twists, rels, M.name)


def regular_element_reduction(M, N, x, bound, certificate="auto"):
    """Derived depth formula over ``R`` and over ``R/xR`` for ``M/xM``, ``N/xN``.

    ``x`` must be a non-zerodivisor on ``R``, ``M`` and ``N``; the two
    verdicts are computed independently and compared.
    """
    ring = M.ring
    if isinstance(x, str):
        x = ring.ambient.parse(x)
    regular = {
        "R": is_nonzerodivisor(x, PresentedModule.free(ring, (0,))),
        "M": is_nonzerodivisor(x, M),
        "N": is_nonzerodivisor(x, N),
    }
    if not all(regular.values()):
        return {"applicable": False, "regular": regular}
    Rx = ring.quotient([x])
    Mx = quotient_by_element(M, x, Rx)
    Nx = quotient_by_element(N, x, Rx)
    over_r = depth_formula_check(M, N, bound, "derived", certificate)
    over_rx = depth_formula_check(Mx, Nx, bound, "derived", certificate)
    return {
        "applicable": True,
        "regular": regular,
        "over_R": over_r.to_json(),
        "over_R_mod_x": over_rx.to_json(),
        "equal_R": over_r.equal,
        "equal_R_mod_x": over_rx.equal,
        "agree": over_r.equal == over_rx.equal,
    }

"""Depth of modules and complexes, top non-vanishing Tor/Ext indices and
Betti-growth estimates."""

import math
from dataclasses import dataclass, field

from .groebner import GradedRing
from .homology import (
    ChainComplex, WindowError, ext, good_truncation_below, homology_at, koszul,
    tensor_resolution, tensor_with_free, tor,
)
from .resolve import BettiTable, PresentedModule, minimal_free_resolution

__all__ = [
    "DepthReport", "QBound", "ComplexityEstimate", "depth_module", "depth_complex",
    "q_bound", "p_bound", "complexity_estimate", "derived_tensor", "krull_dimension",
]

AB = "auslander-buchsbaum-over-ambient"
KOSZUL = "rhom-koszul"
SHORTCUT = "top-homology-shortcut"


@dataclass
class DepthReport:
    """``value`` is an int, or ``math.inf`` for the zero module / exact complex."""

    value: object
    method: str
    bound: object = None  # truncation bound the value depends on, None if exact
    details: dict = field(default_factory=dict)

    def to_json(self):
        v = self.value
        return {
            "value": "inf" if v == math.inf else v,
            "method": self.method,
            "bound_B": self.bound,
            **self.details,
        }


def krull_dimension(ring):
    return ring.dim


def depth_module(M):
    """``depth M = n - pd_S(M)``, with ``M`` regarded as a module over the ambient ring."""
    n = M.ring.nvars
    res = minimal_free_resolution(M, n + 2, over="ambient")
    if not res.frees:
        return DepthReport(math.inf, AB, None, {"pd_ambient": None})
    if not res.complete:
        raise RuntimeError("resolution over the ambient ring did not terminate")
    pd = res.length
    return DepthReport(n - pd, AB, None, {"pd_ambient": pd})


def depth_complex(X, method="auto"):
    """``depth X = -sup RHom(k, X)``, evaluated as ``n - sup(K(x_1..x_n) ⊗ X)``.

    ``method="auto"`` uses ``depth H_s(X) - s`` (``s = sup X``) when the top
    homology has depth at most one and the Koszul route otherwise; both
    routes can be forced.  ``X`` must be certified on its whole span, e.g.
    the output of :func:`good_truncation_below`.
    """
    if method not in ("auto", "koszul", "shortcut"):
        raise ValueError(f"unknown method {method!r}")
    if not X.genuine:
        raise WindowError("depth needs a complex whose homology is certified everywhere; truncate it first")
    s = X.sup()
    if s is None:
        return DepthReport(math.inf, KOSZUL, None, {"sup": None})
    top = homology_at(X, s)
    details = {"sup": s}
    if method in ("auto", "shortcut"):
        dt = depth_module(top).value
        details["top_homology_depth"] = dt
        if dt <= 1:
            return DepthReport(dt - s, SHORTCUT, None, details)
        if method == "shortcut":
            raise ValueError("top-homology shortcut needs depth of the top homology at most 1")
    ring = X.ring
    n = ring.nvars
    Y = tensor_with_free(X, koszul(ring.ambient.gens(), ring))
    for i in range(s + n, Y.lo - 1, -1):
        if homology_at(Y, i).rank:
            details["koszul_sup"] = i
            return DepthReport(n - i, KOSZUL, None, details)
    return DepthReport(math.inf, KOSZUL, None, details)


def derived_tensor(M, N, bound, resolution=None):
    """``F_M ⊗ N`` with ``F_M`` resolved through ``bound + 1``."""
    res = resolution
    if res is None or (res.length < bound + 1 and not res.complete):
        res = minimal_free_resolution(M, bound + 1)
    return tensor_resolution(res, N)


@dataclass
class QBound:
    """Largest ``i <= bound`` with non-zero Tor (or Ext); vanishing beyond ``bound`` is not claimed."""

    value: int
    bound: int
    modules: list = field(default_factory=list, repr=False)

    @property
    def saturated(self):
        """Non-vanishing at the bound itself: the value is only a lower estimate."""
        return self.value == self.bound

    def to_json(self):
        return {"value": self.value, "certified_below": self.bound, "saturated": self.saturated,
                "ranks": [m.rank for m in self.modules]}


def q_bound(M, N, bound, resolution=None):
    if bound < 1:
        raise ValueError("bound must be at least 1")
    T = tor(M, N, bound, resolution)
    q = 0
    for i in range(1, bound + 1):
        if T[i].rank:
            q = i
    return QBound(q, bound, T)


def p_bound(M, N, bound, resolution=None):
    if bound < 1:
        raise ValueError("bound must be at least 1")
    E = ext(M, N, bound, resolution)
    q = 0
    for i in range(bound + 1):
        if E[i].rank:
            q = i
    return QBound(q, bound, E)


@dataclass
class ComplexityEstimate:
    window: tuple
    degree: object  # fitted complexity; None when growth looks exponential
    verdict: str
    ratios: list

    def to_json(self):
        return {"window": list(self.window), "degree": self.degree, "verdict": self.verdict,
                "ratios": [round(r, 6) for r in self.ratios]}


def complexity_estimate(betti, window=None, delta=0.25):
    """Classify Betti growth on a window of at least four indices.

    The answer describes the window only; it is not an asymptotic statement.
    """
    totals = betti.totals() if isinstance(betti, BettiTable) else list(betti)
    complete = isinstance(betti, BettiTable) and betti.complete
    if window is None:
        window = (0, len(totals) - 1)
    w0, w1 = window
    if w1 - w0 + 1 < 4:
        raise ValueError("window too short: need at least four indices")
    if w0 < 0 or (w1 >= len(totals) and not complete):
        raise ValueError("window outside the computed range")
    seq = [totals[i] if i < len(totals) else 0 for i in range(w0, w1 + 1)]
    if any(b == 0 for b in seq):
        return ComplexityEstimate((w0, w1), 0, "pd-finite", [])
    ratios = [seq[k + 1] / seq[k] for k in range(len(seq) - 1)]
    if all(r >= 1 + delta for r in ratios):
        return ComplexityEstimate((w0, w1), None, "at-least-exponential", ratios)
    if len(set(seq)) == 1:
        return ComplexityEstimate((w0, w1), 1, "bounded-betti", ratios)
    # beta_i ~ i^(c-1): fit the log-log slope over indices >= 1
    pts = [(math.log(i), math.log(totals[i])) for i in range(max(w0, 1), w1 + 1)]
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    den = sum((x - mx) ** 2 for x, _ in pts)
    slope = sum((x - mx) * (y - my) for x, y in pts) / den if den else 0.0
    r = max(1, round(1 + slope))
    return ComplexityEstimate((w0, w1), r, f"polynomial-degree-{r}", ratios)

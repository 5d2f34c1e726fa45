"""Shared rings, module builders and hypothesis strategies for the test suite."""

from functools import lru_cache

from hypothesis import HealthCheck, settings, strategies as st

from depthlab.algebra import Polynomial
from depthlab.groebner import GradedRing
from depthlab.resolve import PresentedModule

PROPERTY = settings(max_examples=200, deadline=None, derandomize=True,
                    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much,
                                           HealthCheck.data_too_large])


@lru_cache(maxsize=None)
def ring(name):
    if name == "S2":
        return GradedRing.polynomial_ring(["x", "y"], name="S2")
    if name == "R0":
        return GradedRing.polynomial_ring(["x", "y", "z"], name="R0")
    if name == "R1":
        return GradedRing.polynomial_ring(["x", "y"], ideal=["x^2", "x*y", "y^2"], name="R1")
    if name == "R2":
        return GradedRing.polynomial_ring(["x", "y"], ideal=["x*y"], name="R2")
    if name == "R3":
        return GradedRing.polynomial_ring(list("abcd"), ideal=["a*c - b^2", "b*d - c^2", "a*d - b*c"], name="R3")
    if name == "R4":
        return GradedRing.polynomial_ring(list("abc"), [3, 4, 5], ideal=["b^2 - a*c", "c^2 - a^2*b", "a^3 - b*c"],
                                          name="R4")
    if name == "R5":
        return GradedRing.polynomial_ring(["x", "y", "z"], ideal=["x*y"], name="R5")
    if name == "N1":
        return GradedRing.polynomial_ring(["x", "y"], ideal=["x^2", "x*y"], name="N1")
    raise KeyError(name)


def cyclic(R, *gens, twist=0):
    return PresentedModule.cyclic(R, list(gens), twist)


def residue(R):
    return PresentedModule.residue_field(R)


def free(R, *twists):
    return PresentedModule.free(R, twists or (0,))


def poly_from(R, d, coeffs):
    """Homogeneous polynomial of degree ``d`` from a coefficient list (cycled over monomials)."""
    mons = R.ambient.monomials_of_degree(d)
    terms = {}
    for m, c in zip(mons, coeffs):
        if c % R.p:
            terms[m] = c % R.p
    return R.reduce(Polynomial(R.ambient, terms))


@st.composite
def forms(draw, R, degrees=(1, 2)):
    """Non-zero homogeneous element of the maximal ideal of ``R``."""
    d = draw(st.sampled_from(degrees))
    n = len(R.ambient.monomials_of_degree(d))
    coeffs = draw(st.lists(st.sampled_from([0, 0, 1, 2, 100, 7]), min_size=n, max_size=n))
    f = poly_from(R, d, coeffs)
    if f.is_zero():
        f = R.reduce(R.ambient.gens()[draw(st.integers(0, R.nvars - 1))] ** d)
    return f


@st.composite
def cyclic_modules(draw, R, max_gens=2, degrees=(1, 2)):
    """``R/J`` for a random homogeneous ``J`` (possibly zero, never the unit ideal)."""
    k = draw(st.integers(0, max_gens))
    gens = [draw(forms(R, degrees)) for _ in range(k)]
    gens = [g for g in gens if not g.is_zero()]
    return PresentedModule.cyclic(R, gens)


@st.composite
def small_modules(draw, R):
    """Cyclic quotients, residue field, shifts and rank-two presentations."""
    kind = draw(st.sampled_from(["cyclic", "cyclic", "residue", "pair", "sum"]))
    if kind == "cyclic":
        return draw(cyclic_modules(R))
    if kind == "residue":
        return residue(R)
    if kind == "sum":
        A = draw(cyclic_modules(R, max_gens=1, degrees=(1,)))
        B = draw(cyclic_modules(R, max_gens=1, degrees=(1,)))
        return A.direct_sum(B.shift(-1))
    f = draw(forms(R, (1,)))
    g = draw(forms(R, (1,)))
    rels = [{(0, e): c for e, c in f._d.items()}]
    rels[0].update({(1, e): c for e, c in g._d.items()})
    return PresentedModule(R, (0, 0), rels)

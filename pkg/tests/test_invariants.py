import math

import pytest
from hypothesis import assume, given, strategies as st

from depthlab.homology import (
    WindowError, good_truncation_below, koszul, module_complex, tensor_resolution, tensor_with_free,
)
from depthlab.invariants import (
    complexity_estimate, depth_complex, depth_module, derived_tensor, p_bound, q_bound,
)
from depthlab.resolve import PresentedModule, minimal_free_resolution

from helpers import PROPERTY, cyclic, forms, free, residue, ring, small_modules


def test_depth_of_rings():
    assert depth_module(free(ring("R1"))).value == 0
    assert depth_module(free(ring("R4"))).value == 1
    assert depth_module(free(ring("R3"))).value == 2
    assert depth_module(free(ring("R2"))).value == 1
    assert ring("N1").depth == 0 and ring("N1").dim == 1


def test_depth_of_zero_module():
    R = ring("R2")
    assert depth_module(cyclic(R, "1")).value == math.inf
    assert depth_module(PresentedModule(R, (), ())).value == math.inf


def test_depth_report_records_pd_over_ambient():
    rep = depth_module(free(ring("R4")))
    assert rep.details["pd_ambient"] == 2
    assert rep.to_json()["method"] == "auslander-buchsbaum-over-ambient"


def test_depth_of_single_module_complex():
    R = ring("R2")
    for M in (cyclic(R, "x"), cyclic(R, "x^2"), residue(R), free(R)):
        assert depth_complex(module_complex(M)).value == depth_module(M).value
        assert depth_complex(module_complex(M), "koszul").value == depth_module(M).value


def test_depth_of_shifted_module():
    R = ring("R2")
    M = cyclic(R, "x")
    for s in (-2, 1, 3):
        assert depth_complex(module_complex(M).shift(s)).value == depth_module(M).value - s


def test_depth_of_derived_tensor_of_tor_independent_pair():
    R = ring("R2")
    X = good_truncation_below(derived_tensor(cyclic(R, "x"), cyclic(R, "x - y"), 4), 0)
    rep = depth_complex(X)
    assert rep.value == 0 and rep.method == "top-homology-shortcut"
    assert depth_complex(X, "koszul").value == 0


def test_depth_complex_refuses_uncertified_windows():
    R = ring("R2")
    X = derived_tensor(cyclic(R, "x"), cyclic(R, "x - y"), 3)
    with pytest.raises(WindowError):
        depth_complex(X)


def test_q_bounds():
    R2 = ring("R2")
    assert q_bound(cyclic(R2, "x"), free(R2), 5).value == 0
    qb = q_bound(cyclic(R2, "x"), cyclic(R2, "x - y"), 8)
    assert qb.value == 0 and not qb.saturated
    R1 = ring("R1")
    qb = q_bound(residue(R1), residue(R1), 6)
    assert qb.value == 6 and qb.saturated
    with pytest.raises(ValueError):
        q_bound(free(R2), free(R2), 0)


def test_p_bounds():
    R4 = ring("R4")
    assert p_bound(free(R4), residue(R4), 4).value == 0
    M = cyclic(R4, "a")
    assert p_bound(M, free(R4), 4).value == 1 == R4.depth - depth_module(M).value
    R1 = ring("R1")
    assert p_bound(residue(R1), residue(R1), 4).value == 4


def test_complexity_estimates():
    assert complexity_estimate([1, 0, 0, 0, 0]).verdict == "pd-finite"
    est = complexity_estimate([1, 2, 4, 8, 16])
    assert est.verdict == "at-least-exponential" and est.degree is None
    est = complexity_estimate([2, 2, 2, 2, 2])
    assert est.degree == 1 and est.verdict == "bounded-betti"
    est = complexity_estimate([1, 2, 3, 4, 5, 6, 7])
    assert est.verdict == "polynomial-degree-2"
    with pytest.raises(ValueError):
        complexity_estimate([1, 2, 4])


def test_complexity_from_resolution():
    res = minimal_free_resolution(residue(ring("R1")), 5)
    assert complexity_estimate(res.betti()).verdict == "at-least-exponential"
    res = minimal_free_resolution(residue(ring("R2")), 5)
    assert complexity_estimate(res.betti(), (1, 5)).verdict == "bounded-betti"


# -- properties --------------------------------------------------------------------------

@PROPERTY
@given(st.sampled_from(["S2", "R0", "R1", "R2", "R5", "N1"]), st.data())
def test_auslander_buchsbaum_over_the_ambient_ring(name, data):
    R = ring(name)
    M = data.draw(small_modules(R))
    assume(not M.is_zero())
    pd_amb = minimal_free_resolution(M, R.nvars + 2, over="ambient").pd()
    # independent route: top Koszul homology on the variables
    koszul_depth = depth_complex(module_complex(M), "koszul").value
    assert koszul_depth + pd_amb == R.nvars
    assert 0 <= koszul_depth <= R.dim


def _bounded_complex(data, R):
    """A certified complex: τ≤q of F_M ⊗ N for random M, N."""
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R))
    X = derived_tensor(M, N, 3)
    q = data.draw(st.integers(0, 2))
    return good_truncation_below(X, q)


@PROPERTY
@given(st.sampled_from(["S2", "R1", "R2", "R5"]), st.data())
def test_koszul_on_one_element_drops_depth_by_one(name, data):
    R = ring(name)
    X = _bounded_complex(data, R)
    assume(X.sup() is not None)
    x = data.draw(forms(R, (1, 2)))
    assume(not x.is_zero())
    Y = tensor_with_free(X, koszul([x], R))
    assert depth_complex(Y).value == depth_complex(X).value - 1


@PROPERTY
@given(st.sampled_from(["S2", "R1", "R2", "R5"]), st.data())
def test_top_homology_shortcut_agrees_with_koszul_route(name, data):
    R = ring(name)
    X = _bounded_complex(data, R)
    s = X.sup()
    assume(s is not None)
    top = depth_module(X.homology_at(s)).value
    assume(top <= 1)
    assert depth_complex(X, "shortcut").value == depth_complex(X, "koszul").value == top - s


@PROPERTY
@given(st.sampled_from(["R1", "R2", "R5"]), st.data())
def test_q_is_stable_under_larger_bounds(name, data):
    R = ring(name)
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R))
    B = data.draw(st.integers(2, 3))
    a = q_bound(M, N, B)
    b = q_bound(M, N, B + 2)
    if not a.saturated:
        assert a.value == b.value
        assert [m.rank for m in a.modules] == [m.rank for m in b.modules[:B + 1]]
    else:
        assert b.value >= a.value

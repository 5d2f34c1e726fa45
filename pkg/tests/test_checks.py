
import pytest
from hypothesis import assume, given, strategies as st

from depthlab.checks import (
    annihilator, auslander_tor_check, dependency_bounds_check, depth_formula_check, is_complete_intersection,
    is_nonzerodivisor, one_dim_equivalence_check, reducing_gate, regular_element_reduction, torsion_check,
    tor_torsion_check,
)
from depthlab.invariants import q_bound

from helpers import PROPERTY, cyclic, free, residue, ring, small_modules


def gens(R, *texts):
    return [R.ambient.parse(t) for t in texts]


def test_complete_intersection_detection():
    assert is_complete_intersection(ring("R2"))
    assert is_complete_intersection(ring("R5"))
    assert is_complete_intersection(ring("S2"))
    assert not is_complete_intersection(ring("R1"))
    assert not is_complete_intersection(ring("R3"))


def test_classic_formula_on_hypersurface_pair():
    R = ring("R2")
    rep = depth_formula_check(cyclic(R, *gens(R, "x")), cyclic(R, *gens(R, "x - y")), 8, "classic")
    assert rep.verdict == "holds"
    assert (rep.lhs, rep.rhs) == (1, 1)
    assert rep.details["q"] == 0


def test_derived_formula_with_positive_q():
    R = ring("R2")
    M = cyclic(R, *gens(R, "x^2"))
    N = cyclic(R, *gens(R, "x - y"))
    rep = depth_formula_check(M, N, 8, "derived")
    assert rep.verdict == "holds"
    assert rep.details["q"] == 1
    assert rep.details["depth_derived_tensor"] == -1
    assert rep.details["tor_q_route"] == -1
    classic = depth_formula_check(M, N, 8, "classic")
    assert classic.verdict == "unconditioned"
    assert not next(h for h in classic.hypotheses if h.name == "tor-independent").passed


def test_non_cohen_macaulay_ring_is_refused():
    R = ring("N1")
    rep = depth_formula_check(cyclic(R, *gens(R, "y")), residue(R), 5)
    assert rep.verdict == "unconditioned"
    assert not next(h for h in rep.hypotheses if h.name == "cohen-macaulay-ring").passed


def test_zero_module_is_an_input_error():
    R = ring("R2")
    zero = cyclic(R, R.ambient.one())
    with pytest.raises(ValueError):
        depth_formula_check(zero, residue(R), 4)


def test_missing_certificate_gates():
    R = ring("R1")
    hyp, _ = reducing_gate(residue(R), None)
    assert not hyp.passed
    rep = dependency_bounds_check(residue(R), residue(R), 4, None)
    assert rep.verdict == "refused"


def test_auto_gate_searches_outside_complete_intersections():
    hyp, cert = reducing_gate(residue(ring("R1")), "auto", pd_bound=0)
    assert hyp.passed and cert is not None


def test_auslander_form():
    R = ring("R2")
    rep = auslander_tor_check(cyclic(R, *gens(R, "x^2")), cyclic(R, *gens(R, "x - y")), 8)
    assert rep.verdict == "holds"


def test_dependency_bounds_equality_cases():
    R = ring("R2")
    rep = dependency_bounds_check(cyclic(R, *gens(R, "x^2")), cyclic(R, *gens(R, "x - y")), 8, "auto")
    assert rep.verdict == "consistent"
    names = [c["name"] for c in rep.details["checks"]]
    assert "depth N = 0 forces q = depth R - depth M" in names
    rep = dependency_bounds_check(cyclic(R, *gens(R, "x")), cyclic(R, *gens(R, "x - y")), 8, "auto")
    assert rep.verdict == "consistent" and rep.details["q"] == 0


def test_saturated_q_is_not_certified():
    R = ring("R1")
    rep = dependency_bounds_check(residue(R), residue(R), 3, "auto")
    assert rep.verdict == "unconditioned"


def test_torsion_over_veronese():
    R = ring("R3")
    assert torsion_check(residue(R), True) == "torsion"
    assert torsion_check(free(R), True) == "not-torsion"
    assert torsion_check(residue(R)) == "unsupported"
    res = tor_torsion_check(residue(R), residue(R), 2, True)
    assert res["all_torsion"] is True
    assert tor_torsion_check(residue(R), residue(R), 2)["all_torsion"] is None


def test_annihilator_of_cyclic_module():
    R = ring("S2")
    ann = annihilator(cyclic(R, *gens(R, "x", "y^2")))
    J = cyclic(R, *ann)
    for d in range(4):
        assert J.hilbert_function(d) == cyclic(R, *gens(R, "x", "y^2")).hilbert_function(d)


@pytest.mark.parametrize("m, n, expected", [
    ("x", "x - y", {"q_zero": True, "torsion_free": True, "depth_formula": True}),
    ("x^2", "x - y", {"q_zero": False, "torsion_free": False, "depth_formula": False}),
])
def test_one_dim_truth_tables(m, n, expected):
    R = ring("R2")
    rep = one_dim_equivalence_check(cyclic(R, *gens(R, m)), cyclic(R, *gens(R, n)), 8)
    assert rep.verdict == "consistent"
    assert rep.details["truth_table"] == expected


def test_one_dim_refuses_other_rings():
    R = ring("R5")
    rep = one_dim_equivalence_check(residue(R), residue(R), 4)
    assert rep.verdict == "refused"


def test_regular_element_reduction():
    R = ring("R5")
    z = R.ambient.parse("z")
    assert is_nonzerodivisor(z, free(R))
    assert not is_nonzerodivisor(R.ambient.parse("x"), free(R))
    res = regular_element_reduction(cyclic(R, *gens(R, "x^2")), cyclic(R, *gens(R, "x - y")), "z", 6)
    assert res["applicable"] and res["agree"]
    res = regular_element_reduction(residue(R), free(R), "z", 4)
    assert not res["applicable"]


# -- properties ---------------------------------------------------------------------------

@PROPERTY
@given(st.sampled_from(["R2", "R5"]), st.data())
def test_q_at_most_depth_of_ring(name, data):
    # over a hypersurface Tor is 2-periodic past depth R, so two vanishing
    # indices at the top of the window certify vanishing from there on
    R = ring(name)
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R))
    assume(not M.is_zero() and not N.is_zero())
    B = R.depth + 5
    qb = q_bound(M, N, B)
    if not _nonzero_in(qb, B - 1, B):
        assert qb.value <= R.depth
        rep = dependency_bounds_check(M, N, B, "auto")
        assert rep.verdict == "consistent"


def _nonzero_in(qb, lo, hi):
    return any(not qb.modules[i].is_zero() for i in range(lo, hi + 1))


@PROPERTY
@given(st.data())
def test_derived_formula_over_hypersurface(data):
    R = ring("R2")
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R))
    assume(not M.is_zero() and not N.is_zero())
    rep = depth_formula_check(M, N, 5, "derived")
    assert rep.verdict in ("holds", "unconditioned")
    if rep.gates_passed:
        assert rep.lhs == rep.rhs


@PROPERTY
@given(st.data())
def test_verdicts_stable_under_larger_bound(data):
    R = ring("R2")
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R))
    assume(not M.is_zero() and not N.is_zero())
    a = depth_formula_check(M, N, 4, "derived")
    assume(a.gates_passed)
    b = depth_formula_check(M, N, 6, "derived")
    assert b.verdict == a.verdict
    assert b.details["q"] == a.details["q"]

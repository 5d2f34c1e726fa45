"""
Checking depth formulas
=======================

Each check returns a report with both sides, the hypotheses it relied on
and a verdict: holds, violated or unconditioned.
"""

from depthlab import GradedRing, PresentedModule
from depthlab.checks import dependency_bounds_check, depth_formula_check, one_dim_equivalence_check

R = GradedRing.polynomial_ring(["x", "y"], ideal=["x*y"])
x, y = R.ambient.gens()
Mx = PresentedModule.cyclic(R, [x])
Mx2 = PresentedModule.cyclic(R, [x**2])
N = PresentedModule.cyclic(R, [x - y])

# Tor-independent pair: the ordinary tensor product is enough
rep = depth_formula_check(Mx, N, 8, "classic")
print(rep.formula, rep.lhs, "=", rep.rhs, rep.verdict)

# Tor_1 survives here, so only the derived tensor product balances the equation
rep = depth_formula_check(Mx2, N, 8, "classic")
print("classic:", rep.verdict, [h.name for h in rep.hypotheses if not h.passed])
rep = depth_formula_check(Mx2, N, 8, "derived")
print("derived:", rep.lhs, "=", rep.rhs, rep.verdict, rep.details)

print(dependency_bounds_check(Mx2, N, 8, "auto").details["checks"])
print(one_dim_equivalence_check(Mx2, N, 8).details["truth_table"])

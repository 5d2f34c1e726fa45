"""
Minimal free resolutions and Betti tables
=========================================

"""

from depthlab import GradedRing, PresentedModule, minimal_free_resolution
from depthlab.invariants import complexity_estimate

# the artinian ring k[x,y]/(x^2, xy, y^2) over F_101
R = GradedRing.polynomial_ring(["x", "y"], ideal=["x^2", "x*y", "y^2"])
k = PresentedModule.residue_field(R)

# resolve the residue field up to homological degree 5
res = minimal_free_resolution(k, 5)
print(res.betti())
print("d1 =", res.differential(1).to_strings())
print("d2 =", res.differential(2).to_strings())

# Betti numbers double at every step, so the growth is exponential
print(complexity_estimate(res.betti()).verdict)

# over the ambient polynomial ring the same module has a finite resolution
amb = minimal_free_resolution(k, 5, over="ambient")
print(amb.betti(), "pd over the ambient ring:", amb.pd())

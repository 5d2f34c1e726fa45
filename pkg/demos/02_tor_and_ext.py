"""
Tor and Ext with truncation bounds
==================================

"""

from depthlab import GradedRing, PresentedModule, ext, q_bound, tor

# the node xy = 0
R = GradedRing.polynomial_ring(["x", "y"], ideal=["x*y"])
x, y = R.ambient.gens()
M = PresentedModule.cyclic(R, [x**2])
N = PresentedModule.cyclic(R, [x - y])

T = tor(M, N, 6)
print("Tor ranks:", [t.rank for t in T])
print("Tor_1 Hilbert function:", [T[1].hilbert_function(d) for d in range(5)])

# q is the last index with non-vanishing Tor, certified only below the bound
qb = q_bound(M, N, 6)
print(qb.to_json()["value"], "saturated:", qb.saturated)

E = ext(M, M, 4)
print("Ext ranks:", [e.rank for e in E])

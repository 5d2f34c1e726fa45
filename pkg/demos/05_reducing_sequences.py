"""
Reducing sequences: search and verification
===========================================

"""

from depthlab import GradedRing, PresentedModule, search_reducing_sequence, verify_reducing_sequence

R = GradedRing.polynomial_ring(["x", "y"], ideal=["x^2", "x*y", "y^2"])
k = PresentedModule.residue_field(R)

# k has infinite projective dimension; one extension step reaches a free module
seq = search_reducing_sequence(k, max_r=1, max_n=1, max_ab=4, pd_bound=0, min_n=1)
step = seq.steps[0]
print("a, b, n =", step.a, step.b, step.n, "shifts", step.shifts)
print("middle term:", step.middle, "pd of the tail:", seq.pd_tail)

res = verify_reducing_sequence(seq, 0)
print("verified:", res.ok, "red-pd <=", res.red_pd_bound)
for c in res.checks[0]["checks"]:
    print(" ", c["name"], c["passed"])

# weighted example: the ring of the numerical semigroup <3, 4, 5>
R4 = GradedRing.polynomial_ring(list("abc"), [3, 4, 5], ideal=["b^2 - a*c", "c^2 - a^2*b", "a^3 - b*c"])
seq = search_reducing_sequence(PresentedModule.residue_field(R4), max_ab=2)
print("weighted ring, red-pd(k) <=", seq.length, "with shifts", seq.steps[0].shifts)

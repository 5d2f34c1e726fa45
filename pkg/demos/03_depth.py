"""
Depth of modules and complexes
==============================

"""

from depthlab import GradedRing, PresentedModule, depth_module
from depthlab.homology import koszul, module_complex, tensor_with_free
from depthlab.invariants import depth_complex

R = GradedRing.polynomial_ring(["x", "y", "z"], ideal=["x*y"])
x, y, z = R.ambient.gens()

for label, M in [("R", PresentedModule.free(R, (0,))),
                 ("R/(x)", PresentedModule.cyclic(R, [x])),
                 ("R/(x^2, y)", PresentedModule.cyclic(R, [x**2, y])),
                 ("k", PresentedModule.residue_field(R))]:
    rep = depth_module(M)
    print(f"depth {label} = {rep.value}")

# a complex concentrated in one degree shifts depth by that degree
X = module_complex(PresentedModule.cyclic(R, [x]), 2)
print("depth of R/(x) placed in degree 2:", depth_complex(X).value)

# the Koszul complex on z lowers depth by one
Y = tensor_with_free(module_complex(PresentedModule.cyclic(R, [x])), koszul([z], R))
print("depth after Koszul on z:", depth_complex(Y).value)

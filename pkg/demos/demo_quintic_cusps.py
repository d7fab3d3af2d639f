"""
A quintic with cusps
====================

The curve t -> [1 : t^3 : t^2 : t^5] in P^3 is a projection of the rational
normal quintic.  It has cusps, so only its tangent bundle is meaningful.
"""

from vertexsplit.cohomology import SplittingError, normal_splitting, quadrics_through, tangent_splitting
from vertexsplit.forms import parse_dual_form
from vertexsplit.geometry import dual_basis, smoothness, vertex_from_parametrization
from vertexsplit.vertex import numerical_type

# Parametrizing forms are dual forms in u, v; the vertex is their annihilator
g = [parse_dual_form(t, 5) for t in ("u^5", "u^2*v^3", "u^3*v^2", "v^5")]
T = vertex_from_parametrization(g)
print("vertex         :", T)
print("back again     :", [str(x) for x in dual_basis(T)])
print("numerical type :", numerical_type(T))
print("tangent bundle :", tangent_splitting(T))

v = smoothness(T)
print("smoothness     :", v.status, "via", v.method)
print("quadrics       :", quadrics_through(T))

# The section profile of the "normal bundle" never reaches zero: the
# cokernel of the differential has torsion at the cusps.
try:
    normal_splitting(T)
except SplittingError as exc:
    print("normal bundle  : not defined, profile", list(exc.profile))

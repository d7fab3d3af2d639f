"""
Two curves, one normal bundle
=============================

Two monomial projections of the rational normal curve of degree 11 to P^8
have the same normal bundle but different tangent bundles.
"""

from vertexsplit import Vertex, numerical_type
from vertexsplit.cohomology import normal_oracle, normal_splitting, tangent_splitting
from vertexsplit.geometry import smoothness

# The vertices are spanned by monomials x^nu y^(11 - nu)
T_B = Vertex.monomial(11, (8, 6, 4))
T_A = Vertex.monomial(11, (7, 4, 3))

for name, T in (("T_B", T_B), ("T_A", T_A)):
    print(name, T)
    print("  numerical type :", numerical_type(T))
    print("  smooth?        :", smoothness(T).status)

    # h^0 of twists of N_f, read off the kernel of D^2 on S^k U (x) T
    N = normal_splitting(T)
    print("  section profile:", list(N.profile))
    print("  normal bundle  :", N)

    # the same numbers through a route that never touches D^2
    print("  direct count   :", [normal_oracle(T, k) for k in range(len(N.profile))])
    print("  tangent bundle :", tangent_splitting(T))
    print()

# Same N_f, different T_f: the stratum of this splitting type is reducible.
assert normal_splitting(T_A).c == normal_splitting(T_B).c
assert tangent_splitting(T_A).c != tangent_splitting(T_B).c

"""
Curves on rational normal scrolls
=================================

A vertex of type (e) is the span of all e-th partials of one form g of
degree d + e.  If g is general the curve is smooth, lies on a scroll,
and its normal bundle has just two non-trivial summands.
"""

from vertexsplit import NumericalType
from vertexsplit.cohomology import closed_form_type_e, normal_splitting
from vertexsplit.geometry import scroll_detect
from vertexsplit.vertex import make_vertex_of_type

print(f"{'e':>2} {'d':>3}  normal bundle")
for e in range(0, 4):
    for d in range(e + 4, 13, 2):
        T = make_vertex_of_type(NumericalType(-1, (e,)), d, seed=1)
        rep = scroll_detect(T)
        if not rep.resident:
            continue
        N = normal_splitting(T, ordinary=True)
        assert N.c == closed_form_type_e(d, e).c
        print(f"{e:>2} {d:>3}  {N}   (scroll of degree {rep.scroll_degree})")

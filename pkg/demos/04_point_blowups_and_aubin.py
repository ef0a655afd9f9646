"""
Two infinite families
=====================

The blowup of P^n at a point along the strict transform of a hyperplane,
and an index-two family whose volume is compared with a classical bound.
"""

from fractions import Fraction

from fanoslope.builders import build_pn_blowup_point, build_projbundle_family
from fanoslope.report import aubin_row
from fanoslope.slope import xi

# closed form for the point blowup: negative from n = 5 on
for n in range(3, 9):
    value = xi(build_pn_blowup_point(n), "D").xi
    closed = Fraction(2 * (n - 1), n + 1) * (n * 2 ** (n - 1) - (n - 1) ** (n - 1))
    print(f"n = {n}: xi = {value}  closed form agrees: {value == closed}")

# index-two family: vol(-K) = 2 (3^n - 1), unstable along E
for n in (3, 4, 5, 6):
    m = build_projbundle_family(n, 2, 1, 2)
    row = aubin_row(n)
    print(f"n = {n}: vol {row.vol}, bound ~{float(row.bound):.1f}, below bound: {row.inequality_holds}, "
          f"xi(E) = {xi(m, 'E').xi}")

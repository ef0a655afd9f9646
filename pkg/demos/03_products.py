"""
Products and del Pezzo factors
==============================

Pullbacks from a factor scale xi by a binomial coefficient and the other
factor's volume.  Sums of pullbacks of semistable divisors are stable.
"""

import math

from fanoslope import build_del_pezzo, get_model, product_pullback_xi, product_sum_stability, xi
from fanoslope.catalog import minus_one_classes

f1, p2 = get_model("f1"), get_model("p2")
ident = product_pullback_xi(f1, p2, "e")
print("xi(e) on F_1:", ident.xi_factor)
print("xi(p1*e) on F_1 x P^2:", ident.xi_product)
print("C(4, 2) * vol(P^2) * xi(e) =", math.comb(4, 2) * p2.anticanonical_volume() * ident.xi_factor)

# both factors borderline, the sum is strictly stable
rep = product_sum_stability(get_model("p1"), "H", p2, "H")
print("P^1 x P^2 along p1*H + p2*H:", rep.xi, rep.verdict)

# (-1)-curves on blowups of P^2 in r general points
for r in range(1, 9):
    print(f"r = {r}: {len(minus_one_classes(r))} classes")

# every extremal ray of a del Pezzo of degree <= 7 has length 1, so the
# ray filter settles every curve
cubic = build_del_pezzo(6)
print({ray.length for ray in cubic.rays}, xi(cubic, "E1").verdict)

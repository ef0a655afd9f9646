"""
The functional on projective space
==================================

Walk through xi for hyperplanes and linear subspaces of P^n, and see how
xi_c moves as c runs from 0 to the Seshadri constant.
"""

from fractions import Fraction

from fanoslope import get_model, subvariety_reduction, xi, xi_c
from fanoslope.slope import slope_mu_c

# P^3 polarized by -K = 4H.  Along a hyperplane, eps = 4 (witnessed by a line).
p3 = get_model("p3")
rep = xi(p3, "H")
print("eps:", rep.epsilon, "via ray", rep.witness_ray)
print("g(x) =", rep.g)
print("xi(H) =", rep.xi, rep.verdict)

# xi_c rises on (0, 1), peaks at c = r = 1, then falls back to 0 at eps
for c in [Fraction(1, 2), 1, 2, 3, 4]:
    print(f"  xi_c at c = {c}: {xi_c(p3, 'H', c)}")

# slope comparison: mu_c < mu(X) exactly when xi_c > 0
mu = slope_mu_c(p3, "H", 1)
print("mu_1 =", mu.mu_c, " mu(X) =", mu.mu_X)

# codimension-two center: a line in P^3.  The reduction compares the
# center's functional with its exceptional divisor on the blowup.
red = subvariety_reduction(p3, "L2")
print("xi(line) =", red.xi_Z, " xi(exceptional) =", red.xi_E, " residual =", red.residual)

# hyperplanes are borderline in every dimension
print(", ".join(str(xi(get_model(f"p{n}"), "H").xi) for n in range(1, 9)))

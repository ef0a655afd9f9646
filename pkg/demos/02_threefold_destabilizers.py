"""
Destabilizing divisors on Fano threefolds
=========================================

Scan effective classes on a few Picard rank two and three threefolds and
look at the classes with xi <= 0.
"""

from fanoslope import get_model, ray_filter, scan_destabilizers, xi

# Bl_line Q^3: the exceptional divisor F destabilizes
m = get_model("bl-line-q3")
rep = xi(m, "F")
print(m.name, "F: eps", rep.epsilon, "xi/3 =", rep.xi / 3, rep.verdict)

res = scan_destabilizers(m, 2)
print(f"{len(res.records)} classes up to bound 2, {len(res.pruned)} pruned by the ray filter")
for r in res.destabilizing:
    print("  ", r.label, r.xi, r.verdict)

# the ray filter: a ray C with (D.C) >= (-K.C) certifies stability along D
h = m.divisor("H")
print("ray filter on H:", ray_filter(m, h))

# P^1 x P^1 x P^1: three fiber classes sit exactly on the boundary
res = scan_destabilizers(get_model("p1xp1xp1"), 2)
print("P^1 x P^1 x P^1:", [(r.label, r.xi) for r in res.destabilizing])

# a semistable-but-not-stable example with rho = 3
m = get_model("pp1p1-0110")
for name in ["E1", "E2", "E1+H1"]:
    rep = xi(m, name)
    print(f"  {name}: eps {rep.epsilon}, g = {rep.g}, xi = {rep.xi}")

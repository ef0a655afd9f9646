"""Independent sympy oracles.

Nothing here imports the package's arithmetic: volumes come either from a
brute-force symbolic expansion against raw tensor entries or from Chow ring
presentations reduced with a Groebner basis.
"""

import sympy as sp

X = sp.Symbol("x")


def xi_from_volume(f, eps, r=1):
    """``r f(0) + (eps - r) f(eps) - int_0^eps f``."""
    return sp.nsimplify(r * f.subs(X, 0) + (eps - r) * f.subs(X, eps) - sp.integrate(f, (X, 0, eps)))


# -- raw tensors --------------------------------------------------------------


def expand_volume(entries, basis, dim, cls):
    """``(sum cls[b] b)^dim`` against ``entries`` (sorted label tuples -> value)."""
    syms = sp.symbols(list(basis))
    form = sum(sp.sympify(cls.get(b, 0)) * s for b, s in zip(basis, syms))
    poly = sp.Poly(sp.expand(form**dim), *syms)
    total = 0
    for monom, coef in poly.terms():
        key = tuple(sorted(b for b, e in zip(basis, monom) for _ in range(e)))
        total += coef * sp.Rational(entries.get(key, 0))
    return sp.expand(total)


def eps_from_rays(rays, L, D):
    """``min (L.C)/(D.C)`` over rays with ``D.C > 0``; rays are pairing dicts."""
    best = None
    for pairing in rays:
        dc = sum(sp.Rational(D.get(b, 0)) * v for b, v in pairing.items())
        if dc > 0:
            val = sum(sp.Rational(L.get(b, 0)) * v for b, v in pairing.items()) / dc
            best = val if best is None else min(best, val)
    return best


def tensor_xi(entries, basis, dim, rays, L, D):
    eps = eps_from_rays(rays, L, D)
    shifted = {b: sp.Rational(L.get(b, 0)) - X * sp.Rational(D.get(b, 0)) for b in basis}
    f = expand_volume(entries, basis, dim, shifted)
    return eps, xi_from_volume(f, eps)


# -- Chow rings ---------------------------------------------------------------


class ChowRing:
    """``Q[gens]/relations`` with a degree map normalised by ``deg(top) = top_value``."""

    def __init__(self, gens, relations, top, top_value=1):
        self.gens = sp.symbols(gens)
        self.ns = dict(zip(gens, self.gens))
        rels = [sp.sympify(r, locals=self.ns) for r in relations]
        self.basis = sp.groebner(rels, *self.gens, order="grevlex")
        nf = self._nf(sp.sympify(top, locals=self.ns))
        terms = sp.Poly(nf, *self.gens).terms()
        assert len(terms) == 1, "top class must reduce to a single monomial"
        self.monom, coef = terms[0]
        self.scale = sp.Rational(top_value) / coef

    def _nf(self, expr):
        return self.basis.reduce(sp.expand(expr))[1]

    def cls(self, text):
        return sp.sympify(text, locals=self.ns)

    def degree(self, expr):
        nf = self._nf(expr)
        if nf == 0:
            return sp.Integer(0)
        return sp.Poly(nf, *self.gens).coeff_monomial(self.monom) * self.scale

    def volume_polynomial(self, A, B, n):
        return sp.expand(
            sum(sp.binomial(n, i) * (-X) ** i * self.degree(A ** (n - i) * B**i) for i in range(n + 1))
        )


def eps_in_cone(ring, L, D, nef_generators):
    """Largest ``x`` with ``L - xD`` a nonnegative combination of a simplicial nef basis."""
    cs = sp.symbols(f"c0:{len(nef_generators)}")
    combo = sum(c * ring.cls(g) for c, g in zip(cs, nef_generators))
    sol = sp.solve(sp.Poly(sp.expand(combo - (L - X * D)), *ring.gens).coeffs(), cs, dict=True)[0]
    roots = []
    for c in cs:
        expr = sp.expand(sol[c])
        slope = expr.coeff(X)
        if slope < 0:
            roots.append(sp.solve(expr, X)[0])
    return min(roots)


def chow_xi(ring, n, L, D, nef_generators):
    L, D = ring.cls(L), ring.cls(D)
    eps = eps_in_cone(ring, L, D, nef_generators)
    f = ring.volume_polynomial(L, D, n)
    return eps, xi_from_volume(f, eps)


def projective_bundle_ring(base, s, extra=()):
    """``P_Z(O + O(s))`` over ``P^k`` (``base = ("P", k)``) or ``P^1 x P^1`` (``("P1P1",)``)."""
    if base[0] == "P":
        k = base[1]
        return ChowRing(["h", "z"], [f"h**{k + 1}", f"z**2 - {s}*h*z"], f"h**{k}*z")
    return ChowRing(["a", "b", "z"], ["a**2", "b**2", f"z**2 - {s}*(a + b)*z"], "a*b*z")

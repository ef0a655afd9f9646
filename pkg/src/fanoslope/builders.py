"""Parametric model builders: projective spaces, the quadric threefold,
the two minimal rational surfaces, point blowups of P^n, and P^1-bundles
P_Z(O + O(s)) over a Picard-rank-one base.

Restriction lattices used for exceptional divisors (products of projective
spaces and the Hirzebruch surface F_1) live here too.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ModelDataError
from .exactmath import RationalLike, rational
from .lattice import CurveClass, DivisorClass, IntersectionTensor, surface_tensor
from .model import ConormalFlags, Ray, RestrictionModel, VarietyModel, conormal_status, require_valid

# -- lattices of exceptional divisors ------------------------------------


def pp_lattice(a: int, b: int) -> tuple[tuple[str, str], IntersectionTensor, tuple[Ray, Ray]]:
    """``P^a x P^b`` with basis (h1, h2); rays are lines in each factor."""
    key = (0,) * a + (1,) * b
    tensor = IntersectionTensor(a + b, 2, {key: 1})
    rays = (Ray("line1", CurveClass([1, 0])), Ray("line2", CurveClass([0, 1])))
    return ("h1", "h2"), tensor, rays


def p1p1_lattice():
    return pp_lattice(1, 1)


def f1_lattice() -> tuple[tuple[str, str], IntersectionTensor, tuple[Ray, Ray]]:
    """F_1 with basis (e, f): e^2 = -1, e.f = 1, f^2 = 0."""
    tensor = surface_tensor([[-1, 1], [1, 0]])
    rays = (Ray("e", CurveClass([-1, 1]), 1), Ray("f", CurveClass([1, 0]), 2))
    return ("e", "f"), tensor, rays


def projective_lattice(k: int, degree: RationalLike = 1) -> tuple[tuple[str], IntersectionTensor, tuple[Ray]]:
    """Rank-one lattice of dimension ``k`` whose generator has top power ``degree``."""
    tensor = IntersectionTensor(k, 1, {(0,) * k: degree})
    return ("h",), tensor, (Ray("line", CurveClass([1])),)


def make_restriction(
    codim: int,
    lattice_data,
    restricted_anticanonical,
    self_class,
    seshadri_override: RationalLike | None = None,
    self_square_effective_nonzero: bool | None = None,
) -> RestrictionModel:
    basis, tensor, rays = lattice_data
    res = RestrictionModel(
        center_codim=codim,
        basis=tuple(basis),
        lattice=tensor,
        restricted_anticanonical=DivisorClass(restricted_anticanonical),
        self_class=DivisorClass(self_class),
        seshadri_override=None if seshadri_override is None else rational(seshadri_override),
        conormal_flags=ConormalFlags(self_square_effective_nonzero=self_square_effective_nonzero),
        rays=tuple(rays),
    )
    status = conormal_status(res)
    return RestrictionModel(
        center_codim=res.center_codim,
        basis=res.basis,
        lattice=res.lattice,
        restricted_anticanonical=res.restricted_anticanonical,
        self_class=res.self_class,
        seshadri_override=res.seshadri_override,
        conormal_flags=status,
        rays=res.rays,
    )


# -- varieties ------------------------------------------------------------


def linear_subspace_restriction(n: int, r: int) -> RestrictionModel:
    """Exceptional divisor of the blowup of P^n along a codim-``r`` linear subspace.

    E = P^(n-r) x P^(r-1); the pulled-back hyperplane restricts to (1, 0) and
    E|_E = (1, -1).  The Seshadri constant of the center is n + 1.
    """
    if not 2 <= r <= n - 1:
        raise ModelDataError(f"linear subspace codimension must lie in [2, {n - 1}]")
    return make_restriction(r, pp_lattice(n - r, r - 1), [n + 1, 0], [1, -1], seshadri_override=n + 1)


def build_pn(n: int) -> VarietyModel:
    """P^n with hyperplane H; restrictions ``H`` and ``L{r}`` (codim-r linear centers)."""
    if n < 1:
        raise ModelDataError("P^n needs n >= 1")
    restrictions = {}
    # a hyperplane in P^1 is a point, which carries no lattice
    if n >= 2:
        restrictions["H"] = make_restriction(
            1, projective_lattice(n - 1), [n + 1], [1], self_square_effective_nonzero=True
        )
    for r in range(2, n):
        restrictions[f"L{r}"] = linear_subspace_restriction(n, r)
    return require_valid(
        VarietyModel(
            name=f"P^{n}",
            dim=n,
            basis=("H",),
            tensor=IntersectionTensor(n, 1, {(0,) * n: 1}),
            anticanonical=DivisorClass([n + 1]),
            rays=(Ray("line", CurveClass([1]), n + 1),),
            effective_generators=(DivisorClass([1]),),
            named_divisors={"H": DivisorClass([1])},
            restrictions=restrictions,
        )
    )


def build_quadric3() -> VarietyModel:
    return require_valid(
        VarietyModel(
            name="Q^3",
            dim=3,
            basis=("H",),
            tensor=IntersectionTensor(3, 1, {(0, 0, 0): 2}),
            anticanonical=DivisorClass([3]),
            rays=(Ray("line", CurveClass([1]), 3),),
            effective_generators=(DivisorClass([1]),),
            named_divisors={"H": DivisorClass([1])},
        )
    )


def build_hirzebruch1() -> VarietyModel:
    basis, tensor, rays = f1_lattice()
    e_res = make_restriction(1, projective_lattice(1), [1], [-1])
    return require_valid(
        VarietyModel(
            name="F_1",
            dim=2,
            basis=basis,
            tensor=tensor,
            anticanonical=DivisorClass([2, 3]),
            rays=rays,
            effective_generators=(DivisorClass([1, 0]), DivisorClass([0, 1])),
            named_divisors={"e": DivisorClass([1, 0]), "f": DivisorClass([0, 1])},
            restrictions={"e": e_res},
        )
    )


def build_p1p1() -> VarietyModel:
    basis, tensor, rays = p1p1_lattice()
    return require_valid(
        VarietyModel(
            name="P^1 x P^1",
            dim=2,
            basis=basis,
            tensor=tensor,
            anticanonical=DivisorClass([2, 2]),
            rays=tuple(Ray(r.name, r.curve, 2) for r in rays),
            effective_generators=(DivisorClass([1, 0]), DivisorClass([0, 1])),
            named_divisors={"h1": DivisorClass([1, 0]), "h2": DivisorClass([0, 1])},
        )
    )


def build_pn_blowup_point(n: int) -> VarietyModel:
    """Blowup of P^n at a point; basis (H, E') with E' exceptional.

    Named divisor ``D = H - E'`` is the strict transform of a hyperplane
    through the center.
    """
    if n < 2:
        raise ModelDataError("point blowup needs n >= 2")
    tensor = IntersectionTensor(n, 2, {(0,) * n: 1, (1,) * n: (-1) ** (n - 1)})
    e_res = make_restriction(1, projective_lattice(n - 1), [n - 1], [-1])
    return require_valid(
        VarietyModel(
            name=f"Bl_pt P^{n}",
            dim=n,
            basis=("H", "E'"),
            tensor=tensor,
            anticanonical=DivisorClass([n + 1, -(n - 1)]),
            rays=(
                Ray("e", CurveClass([0, -1]), n - 1),
                Ray("l", CurveClass([1, 1]), 2),
            ),
            effective_generators=(DivisorClass([0, 1]), DivisorClass([1, -1])),
            named_divisors={"H": DivisorClass([1, 0]), "E'": DivisorClass([0, 1]), "D": DivisorClass([1, -1])},
            restrictions={"E'": e_res},
        )
    )


def build_projbundle_family(n: int, t: int, s: int, volZ: RationalLike, name: str | None = None) -> VarietyModel:
    """``X = P_Z(O + O(s))`` over a Picard-rank-one Fano ``(n-1)``-fold of index ``t``.

    Basis (H, E): H pulls back the ample generator O_Z(1) (top power
    ``volZ``) and E is the negative section with E|_E = O_Z(-s).  Both the full
    tensor and the restriction model of E are recorded; they must agree.
    """
    volZ = rational(volZ)
    if n < 2 or not (isinstance(t, int) and isinstance(s, int)) or not t > s > 0 or volZ <= 0:
        raise ModelDataError(f"need n >= 2, integers t > s > 0 and volZ > 0 (got n={n}, t={t}, s={s}, volZ={volZ})")
    entries = {}
    # H^(n-1-k) E^(k+1) = (-s)^k volZ; H^n = 0
    for k in range(n):
        entries[(0,) * (n - 1 - k) + (1,) * (k + 1)] = (-s) ** k * volZ
    tensor = IntersectionTensor(n, 2, entries)
    e_res = make_restriction(1, projective_lattice(n - 1, volZ), [t - s], [-s])
    model = VarietyModel(
        name=name or f"P_Z(O+O({s})) [n={n}, t={t}, vol_Z={volZ}]",
        dim=n,
        basis=("H", "E"),
        tensor=tensor,
        anticanonical=DivisorClass([t + s, 2]),
        rays=(Ray("f", CurveClass([0, 1]), 2), Ray("e", CurveClass([1, -s]))),
        effective_generators=(DivisorClass([0, 1]), DivisorClass([1, 0])),
        named_divisors={"E": DivisorClass([0, 1]), "H": DivisorClass([1, 0])},
        restrictions={"E": e_res},
    )
    return require_valid(model)


def projbundle_volume(n: int, t: int, s: int, volZ: RationalLike) -> Fraction:
    """Closed form ``((t+s)^n - (t-s)^n)/s * volZ`` for the anticanonical volume."""
    return Fraction((t + s) ** n - (t - s) ** n, s) * rational(volZ)


def aubin_bound(n: int) -> Fraction:
    """``((n+1)^2 / (2n))^n``."""
    return Fraction((n + 1) ** 2, 2 * n) ** n


def binom(n: int, k: int) -> int:
    return math.comb(n, k)

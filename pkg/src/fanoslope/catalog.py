"""Built-in models, expected values, and the destabilizer scan.

Every threefold below is entered as a full intersection tensor; where an
exceptional divisor has a convenient lattice of its own, a restriction
model is attached as well and the two presentations are cross-checked each
time ``xi`` is evaluated by name.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .builders import (
    build_hirzebruch1,
    build_p1p1,
    build_pn,
    build_pn_blowup_point,
    build_projbundle_family,
    build_quadric3,
    f1_lattice,
    make_restriction,
    pp_lattice,
)
from .errors import ModelDataError, PreconditionError
from .exactmath import RationalLike
from .lattice import CurveClass, DivisorClass, IntersectionTensor
from .model import Ray, VarietyModel, iter_effective_classes, product_model, require_valid
from .slope import Verdict, XiReport, ray_filter, xi

# -- helpers --------------------------------------------------------------


def _tensor(basis: Sequence[str], entries: Mapping[tuple[str, ...], RationalLike]) -> IntersectionTensor:
    index = {b: i for i, b in enumerate(basis)}
    dim = len(next(iter(entries)))
    return IntersectionTensor(dim, len(basis), {tuple(index[b] for b in k): v for k, v in entries.items()})


def _cls(basis: Sequence[str], **coords: RationalLike) -> DivisorClass:
    return DivisorClass(coords.get(b, 0) for b in basis)


def _relabel(m: VarietyModel, basis: Sequence[str], named: Mapping[str, DivisorClass], name: str) -> VarietyModel:
    return require_valid(replace(m, name=name, basis=tuple(basis), named_divisors=dict(named)))


# -- del Pezzo surfaces -----------------------------------------------------


def minus_one_classes(r: int, max_degree: int = 6, max_mult: int = 3) -> list[tuple[int, ...]]:
    """Solutions ``(a0, a1..ar)`` of ``a0^2 - sum ai^2 = -1`` and ``3 a0 - sum ai = 1``.

    The class is ``a0 H - sum ai Ei``; search box ``0 <= a0 <= max_degree``,
    ``|ai| <= max_mult``.  Multisets of ``ai`` are found in nonincreasing
    order and then permuted.
    """
    if not 0 <= r <= 8:
        raise ModelDataError("del Pezzo surfaces need 0 <= r <= 8")
    found = set()

    def extend(prefix: list[int], left: int, squares: int, total: int) -> Iterator[tuple[int, ...]]:
        if left == 0:
            if squares == 0 and total == 0:
                yield tuple(prefix)
            return
        hi = prefix[-1] if prefix else max_mult
        for a in range(hi, -max_mult - 1, -1):
            if a * a > squares:
                continue
            yield from extend(prefix + [a], left - 1, squares - a * a, total - a)

    for a0 in range(0, max_degree + 1):
        for multiset in extend([], r, a0 * a0 + 1, 3 * a0 - 1):
            for perm in set(_permutations(multiset)):
                found.add((a0,) + perm)
    return sorted(found)


def _permutations(seq: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if len(seq) <= 1:
        yield tuple(seq)
        return
    seen = set()
    for i, a in enumerate(seq):
        if a in seen:
            continue
        seen.add(a)
        for tail in _permutations(seq[:i] + seq[i + 1 :]):
            yield (a,) + tail


def build_del_pezzo(r: int) -> VarietyModel:
    """Blowup of P^2 in ``r`` general points (degree ``9 - r``)."""
    if not 0 <= r <= 8:
        raise ModelDataError("del Pezzo surfaces need 0 <= r <= 8")
    basis = ("H",) + tuple(f"E{i}" for i in range(1, r + 1))
    entries = {(0, 0): 1}
    entries.update({(i, i): -1 for i in range(1, r + 1)})
    tensor = IntersectionTensor(2, r + 1, entries)
    anti = DivisorClass([3] + [-1] * r)
    named = {b: DivisorClass(1 if c == b else 0 for c in basis) for b in basis}

    def divisor(a: tuple[int, ...]) -> DivisorClass:
        return DivisorClass((a[0],) + tuple(-x for x in a[1:]))

    def curve(a: tuple[int, ...]) -> CurveClass:
        return CurveClass(a)

    if r == 0:
        rays = (Ray("line", CurveClass([1]), 3),)
        eff = (DivisorClass([1]),)
    elif r == 1:
        fiber = (1, 1)
        rays = (Ray("E1", curve((0, -1)), 1), Ray("H-E1", curve(fiber), 2))
        eff = (divisor((0, -1)), divisor(fiber))
    else:
        classes = minus_one_classes(r)
        rays = tuple(Ray(_curve_name(a), curve(a), 1) for a in classes)
        eff = tuple(divisor(a) for a in classes)
    return require_valid(
        VarietyModel(
            name=f"S_{9 - r}",
            dim=2,
            basis=basis,
            tensor=tensor,
            anticanonical=anti,
            rays=rays,
            effective_generators=eff,
            named_divisors=named,
        )
    )


def _curve_name(a: tuple[int, ...]) -> str:
    if a[0] == 0:
        return "E" + str(a.index(-1))
    parts = [f"{a[0]}H" if a[0] != 1 else "H"]
    for i, m in enumerate(a[1:], start=1):
        if m:
            parts.append(f"-{m}E{i}" if m != 1 else f"-E{i}")
    return "".join(parts)


# -- threefolds -------------------------------------------------------------


def build_bl_line_p3() -> VarietyModel:
    basis = ("H", "E")
    return require_valid(
        VarietyModel(
            name="Bl_line P^3",
            dim=3,
            basis=basis,
            tensor=_tensor(basis, {("H", "H", "H"): 1, ("H", "E", "E"): -1, ("E", "E", "E"): -2}),
            anticanonical=_cls(basis, H=4, E=-1),
            rays=(Ray("fiber", CurveClass([0, -1]), 1), Ray("line", CurveClass([1, 1]), 3)),
            effective_generators=(_cls(basis, E=1), _cls(basis, H=1, E=-1)),
            named_divisors={"H": _cls(basis, H=1), "E": _cls(basis, E=1)},
            restrictions={"E": make_restriction(1, pp_lattice(1, 1), [3, 1], [1, -1])},
        )
    )


def _blowup_q3(name: str, hff: int, fff: int, restriction) -> VarietyModel:
    basis = ("H", "F")
    return require_valid(
        VarietyModel(
            name=name,
            dim=3,
            basis=basis,
            tensor=_tensor(basis, {("H", "H", "H"): 2, ("H", "F", "F"): hff, ("F", "F", "F"): fff}),
            anticanonical=_cls(basis, H=3, F=-1),
            rays=(Ray("fiber", CurveClass([0, -1]), 1), Ray("line", CurveClass([1, 1]), 2)),
            effective_generators=(_cls(basis, F=1), _cls(basis, H=1, F=-1)),
            named_divisors={"H": _cls(basis, H=1), "F": _cls(basis, F=1)},
            restrictions={"F": restriction},
        )
    )


def build_bl_line_q3() -> VarietyModel:
    # F = F_1 with F|_F = -e and -K|_F = e + 3f
    return _blowup_q3("Bl_line Q^3", -1, -1, make_restriction(1, f1_lattice(), [1, 3], [-1, 0]))


def build_bl_conic_q3() -> VarietyModel:
    # F = P^1 x P^1 with F|_F = (2, -1) and -K|_F = (4, 1)
    return _blowup_q3("Bl_conic Q^3", -2, -4, make_restriction(1, pp_lattice(1, 1), [4, 1], [2, -1]))


def build_pf1_oef() -> VarietyModel:
    """``P_{F_1}(O + O(e+f))``; H is the section with normal bundle O(-e-f)."""
    basis = ("E", "F", "H")
    entries = {
        ("E", "E", "H"): -1,
        ("E", "F", "H"): 1,
        ("F", "H", "H"): -1,
        ("H", "H", "H"): 1,
    }
    return require_valid(
        VarietyModel(
            name="P_F1(O+O(e+f))",
            dim=3,
            basis=basis,
            tensor=_tensor(basis, entries),
            anticanonical=_cls(basis, E=3, F=4, H=2),
            rays=(
                Ray("m", CurveClass([0, 0, 1]), 2),
                Ray("e_H", CurveClass([-1, 1, 0]), 1),
                Ray("f_H", CurveClass([1, 0, -1]), 1),
            ),
            effective_generators=(_cls(basis, H=1), _cls(basis, E=1), _cls(basis, F=1)),
            named_divisors={b: _cls(basis, **{b: 1}) for b in basis},
            restrictions={"H": make_restriction(1, f1_lattice(), [1, 2], [-1, -1])},
        )
    )


def build_pp1p1_o11() -> VarietyModel:
    """``P_{P1xP1}(O + O(1,1))``; E is the section with normal bundle O(-1,-1)."""
    basis = ("H1", "H2", "E")
    entries = {
        ("H1", "H2", "E"): 1,
        ("H1", "E", "E"): -1,
        ("H2", "E", "E"): -1,
        ("E", "E", "E"): 2,
    }
    return require_valid(
        VarietyModel(
            name="P_{P1xP1}(O+O(1,1))",
            dim=3,
            basis=basis,
            tensor=_tensor(basis, entries),
            anticanonical=_cls(basis, H1=3, H2=3, E=2),
            rays=(
                Ray("f", CurveClass([0, 0, 1]), 2),
                Ray("c1", CurveClass([0, 1, -1]), 1),
                Ray("c2", CurveClass([1, 0, -1]), 1),
            ),
            effective_generators=(_cls(basis, H1=1), _cls(basis, H2=1), _cls(basis, E=1)),
            named_divisors={b: _cls(basis, **{b: 1}) for b in basis},
            restrictions={"E": make_restriction(1, pp_lattice(1, 1), [1, 1], [-1, -1])},
        )
    )


def build_pp1p1_0110() -> VarietyModel:
    """``P_{P1xP1}(O(0,1) + O(1,0))``; sections E1, E2 with normal bundles O(-1,1), O(1,-1).

    ``E2 = E1 + H1 - H2`` and ``-K = 3H1 + H2 + 2E1``.
    """
    basis = ("H1", "H2", "E1")
    entries = {
        ("H1", "H2", "E1"): 1,
        ("H1", "E1", "E1"): 1,
        ("H2", "E1", "E1"): -1,
        ("E1", "E1", "E1"): -2,
    }
    e2 = _cls(basis, H1=1, H2=-1, E1=1)
    named = {b: _cls(basis, **{b: 1}) for b in basis}
    named.update({"E2": e2, "E1+H1": _cls(basis, H1=1, E1=1)})
    return require_valid(
        VarietyModel(
            name="P_{P1xP1}(O(0,1)+O(1,0))",
            dim=3,
            basis=basis,
            tensor=_tensor(basis, entries),
            anticanonical=_cls(basis, H1=3, H2=1, E1=2),
            rays=(
                Ray("e1", CurveClass([1, 0, -1]), 1),
                Ray("e2", CurveClass([0, 1, 0]), 1),
                Ray("f", CurveClass([0, 0, 1]), 2),
            ),
            effective_generators=(_cls(basis, H1=1), _cls(basis, H2=1), _cls(basis, E1=1), e2),
            named_divisors=named,
            restrictions={"E1": make_restriction(1, pp_lattice(1, 1), [1, 3], [-1, 1])},
        )
    )


def build_w111() -> VarietyModel:
    """Smooth divisor of tridegree (1,1,1) in P^1 x P^1 x P^2."""
    basis = ("H1", "H2", "H3")
    entries = {("H1", "H2", "H3"): 1, ("H1", "H3", "H3"): 1, ("H2", "H3", "H3"): 1}
    named = {b: _cls(basis, **{b: 1}) for b in basis}
    named.update({"F13": _cls(basis, H1=1, H2=-1, H3=1), "F23": _cls(basis, H1=-1, H2=1, H3=1)})
    return require_valid(
        VarietyModel(
            name="W(1,1,1)",
            dim=3,
            basis=basis,
            tensor=_tensor(basis, entries),
            anticanonical=_cls(basis, H1=1, H2=1, H3=2),
            rays=(
                Ray("l1", CurveClass([1, 0, 0]), 1),
                Ray("l2", CurveClass([0, 1, 0]), 1),
                Ray("l3", CurveClass([0, 0, 1]), 2),
            ),
            effective_generators=(named["H1"], named["H2"], named["F13"], named["F23"]),
            named_divisors=named,
        )
    )


def build_f1xp2_tp2() -> VarietyModel:
    """``F_1 x_{P^2} P(T_{P^2})``, a divisor of class (e+f, 1) in F_1 x P^2."""
    basis = ("E", "F", "H")
    entries = {("E", "E", "H"): -1, ("E", "F", "H"): 1, ("F", "H", "H"): 1}
    named = {b: _cls(basis, **{b: 1}) for b in basis}
    named["E'"] = _cls(basis, E=-1, H=1)
    return require_valid(
        VarietyModel(
            name="F1 x_P2 P(T_P2)",
            dim=3,
            basis=basis,
            tensor=_tensor(basis, entries),
            anticanonical=_cls(basis, E=1, F=2, H=2),
            rays=(
                Ray("m", CurveClass([0, 0, 1]), 2),
                Ray("l", CurveClass([-1, 1, 0]), 1),
                Ray("l'", CurveClass([1, 0, 0]), 1),
            ),
            effective_generators=(named["E"], named["F"], named["E'"]),
            named_divisors=named,
        )
    )


def build_blp_yd(d: int) -> VarietyModel:
    """Blowup at a point of ``Y_d = Bl_B P^3``, B a plane curve of degree ``d``.

    Basis (E, H, F): E over the point, H the strict transform of the plane
    of B, F over B.  With genus ``g`` of B the tensor is
    ``E^3 = 1``, ``H^3 = (1-d)^2``, ``H^2 F = d(1-d)``, ``H F^2 = 3d + 2g - 2``,
    ``F^3 = -(4d + 2g - 2)`` and every mixed product with E vanishes.
    """
    if d not in (1, 2, 3):
        raise ModelDataError("Bl_p(Y_d) is defined here for d = 1, 2, 3")
    g = (d - 1) * (d - 2) // 2
    basis = ("E", "H", "F")
    entries = {
        ("E", "E", "E"): 1,
        ("H", "H", "H"): (1 - d) ** 2,
        ("H", "H", "F"): d * (1 - d),
        ("H", "F", "F"): 3 * d + 2 * g - 2,
        ("F", "F", "F"): -(4 * d + 2 * g - 2),
    }
    named = {b: _cls(basis, **{b: 1}) for b in basis}
    named["F'"] = _cls(basis, E=-d, H=d, F=d - 1)
    named["D"] = _cls(basis, E=-1, H=1, F=1)
    return require_valid(
        VarietyModel(
            name=f"Bl_p(Y_{d})",
            dim=3,
            basis=basis,
            tensor=_tensor(basis, entries),
            anticanonical=_cls(basis, E=-2, H=4, F=3),
            rays=(
                Ray("e", CurveClass([-1, 0, 0]), 2),
                Ray("h", CurveClass([0, 1 - d, d])),
                Ray("f", CurveClass([0, 1, -1]), 1),
                Ray("f'", CurveClass([1, 0, 1]), 1),
            ),
            effective_generators=(named["E"], named["H"], named["F"], named["F'"]),
            named_divisors=named,
        )
    )


def build_p1xp2() -> VarietyModel:
    return product_model(build_pn(1), build_pn(2), name="P^1 x P^2")


def build_p1xp1xp1() -> VarietyModel:
    m = product_model(build_p1p1(), build_pn(1))
    basis = ("H1", "H2", "H3")
    named = {b: DivisorClass(1 if c == b else 0 for c in basis) for b in basis}
    return _relabel(m, basis, named, "P^1 x P^1 x P^1")


def build_p1xf1() -> VarietyModel:
    return product_model(build_pn(1), build_hirzebruch1(), name="P^1 x F_1")


def build_p1xs(m: int) -> VarietyModel:
    if not 1 <= m <= 7:
        raise ModelDataError("P^1 x S_m is catalogued for 1 <= m <= 7")
    return product_model(build_pn(1), build_del_pezzo(9 - m), name=f"P^1 x S_{m}")


# -- catalog ---------------------------------------------------------------


@dataclass(frozen=True)
class Provenance:
    kind: str  # "published" or "derived"
    note: str


@dataclass(frozen=True)
class Expectation:
    divisor: str
    xi: Optional[Fraction]
    verdict: Verdict
    provenance: Provenance
    published_xi: Optional[Fraction] = None


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    title: str
    builder: Callable[[], VarietyModel] = field(repr=False)
    expected: tuple[Expectation, ...] = ()

    @property
    def model(self) -> VarietyModel:
        return _cached_model(self.key)


def _pub(note: str) -> Provenance:
    return Provenance("published", note)


def _der(note: str) -> Provenance:
    return Provenance("derived", note)


def _exp(divisor: str, value: RationalLike, prov: Provenance, published: Optional[RationalLike] = None) -> Expectation:
    v = Fraction(value)
    return Expectation(divisor, v, Verdict.from_xi(v), prov, None if published is None else Fraction(published))


def point_blowup_closed_form(n: int) -> Fraction:
    return Fraction(2 * (n - 1), n + 1) * (n * 2 ** (n - 1) - (n - 1) ** (n - 1))


def _entries() -> list[CatalogEntry]:
    out = []
    for n in range(1, 9):
        out.append(
            CatalogEntry(
                f"p{n}",
                f"P^{n}",
                functools.partial(build_pn, n),
                (_exp("H", 0, _pub("hyperplane: (n+1)^n minus the integral of (n+1-x)^n over [0, n+1] vanishes")),),
            )
        )
    out += [
        CatalogEntry("q3", "Q^3", build_quadric3, (_exp("H", Fraction(27, 2), _der("proportional case t = 3: 2 * 27 * (1 - 3/4)")),)),
        CatalogEntry("f1", "F_1", build_hirzebruch1, (_exp("e", Fraction(-4, 3), _der("8 - int_0^2 (2-x)(4+x) dx")),)),
        CatalogEntry("p1xp1", "P^1 x P^1", build_p1p1, (_exp("h1", 0, _der("product identity with xi_P1(pt) = 0")),)),
        CatalogEntry(
            "p1xp2",
            "P^1 x P^2",
            build_p1xp2,
            (
                _exp("p1*H", 0, _der("product identity: 3 * vol(P^2) * xi_P1(pt) = 0")),
                _exp("p2*H", 0, _der("product identity: 3 * vol(P^1) * xi_P2(line) = 0")),
            ),
        ),
        CatalogEntry("p1xp1xp1", "P^1 x P^1 x P^1", build_p1xp1xp1, (_exp("H1", 0, _der("product identity with xi_P1(pt) = 0")),)),
        CatalogEntry("p1xf1", "P^1 x F_1", build_p1xf1, (_exp("p2*e", -8, _der("product identity: 3 * 2 * (-4/3)")),)),
        CatalogEntry(
            "bl-line-p3",
            "Bl_line P^3",
            build_bl_line_p3,
            (
                _exp(
                    "E",
                    Fraction(-27, 2),
                    _der(
                        "6 int_0^3 (1-x)(3-x)(1+x) dx on the blowup; equals xi(line) - 3 int_0^1 (2-x) 2x(4-x) dx. "
                        "Dropping the factor n on the residual gives -3/2 instead"
                    ),
                ),
            ),
        ),
        CatalogEntry("bl-line-q3", "Bl_line Q^3", build_bl_line_q3, (_exp("F", -4, _pub("xi/3 = -4/3 along F = F_1")),)),
        CatalogEntry("bl-conic-q3", "Bl_conic Q^3", build_bl_conic_q3, (_exp("F", 8, _pub("xi/3 = 8/3 along F = P^1 x P^1")),)),
    ]
    for n in range(2, 9):
        out.append(
            CatalogEntry(
                f"blpt-p{n}",
                f"Bl_pt P^{n}",
                functools.partial(build_pn_blowup_point, n),
                (_exp("D", point_blowup_closed_form(n), _pub("closed form 2(n-1)/(n+1) (n 2^(n-1) - (n-1)^(n-1))")),),
            )
        )
    out += [
        CatalogEntry(
            "pp2-o1",
            "P_P2(O+O(1))",
            functools.partial(build_projbundle_family, 3, 3, 1, 1, "P_P2(O+O(1))"),
            (_exp("E", -12, _der("3 int_0^2 (1-x)(2+x)^2 dx")),),
        ),
        CatalogEntry(
            "pp2-o2",
            "P_P2(O+O(2))",
            functools.partial(build_projbundle_family, 3, 3, 2, 1, "P_P2(O+O(2))"),
            (_exp("E", -24, _der("3 int_0^2 (1-x)(1+2x)^2 dx")),),
        ),
        CatalogEntry("pf1-oef", "P_F1(O+O(e+f))", build_pf1_oef, (_exp("H", -12, _pub("xi/3 = -4 along the section H")),)),
        CatalogEntry(
            "pp1p1-o11",
            "P_{P1xP1}(O+O(1,1))",
            build_pp1p1_o11,
            (_exp("E", -16, _der("3 int_0^2 (1-x) 2(1+x)^2 dx")),),
        ),
        CatalogEntry(
            "pp1p1-0110",
            "P_{P1xP1}(O(0,1)+O(1,0))",
            build_pp1p1_0110,
            (
                _exp("E1", 0, _pub("int_0^2 2(1-x)(1+x)(3-x) dx = 0")),
                _exp("E2", 0, _pub("symmetric to E1")),
                _exp(
                    "E1+H1",
                    12,
                    _der(
                        "integrand (E1+H1 . ((3-x)H1 + H2 + (2-x)E1)^2) expands to x^2 - 8x + 14, "
                        "so xi/3 = 4; the printed integrand (2-x)(4-x) gives 8/3"
                    ),
                    published=8,
                ),
            ),
        ),
        CatalogEntry("w111", "W(1,1,1) in P^1 x P^1 x P^2", build_w111, (_exp("H3", 8, _pub("int_0^2 (1-x)(10-4x) dx = 8/3")),)),
        CatalogEntry(
            "f1xp2-tp2",
            "F1 x_P2 P(T_P2)",
            build_f1xp2_tp2,
            (
                _exp(
                    "H",
                    8,
                    _pub("xi/3 = 8/3; the integrand is 11 - 4x (a printed factor (1+x) would integrate to -2/3)"),
                ),
            ),
        ),
    ]
    for d in (1, 2):
        out.append(
            CatalogEntry(
                f"blp-yd-{d}",
                f"Bl_p(Y_{d})",
                functools.partial(build_blp_yd, d),
                (_exp("D", 8, _pub("int_0^2 (1-x)(12-d-4x) dx = 8/3")),),
            )
        )
    out.append(
        CatalogEntry(
            "blp-yd-3",
            "Bl_p(Y_3)",
            functools.partial(build_blp_yd, 3),
            (
                _exp(
                    "D",
                    Fraction(23, 2),
                    _der(
                        "ray h has (-K.h) = 4 - d = 1 and (D.h) = 1, so eps = 1 and "
                        "xi/3 = int_0^1 (1-x)(9-4x) dx = 23/6; taking eps = 2 gives 8/3"
                    ),
                    published=8,
                ),
            ),
        )
    )
    for m in range(1, 8):
        out.append(
            CatalogEntry(
                f"dp{m}",
                f"S_{m}",
                functools.partial(build_del_pezzo, 9 - m),
                (Expectation("E1", None, Verdict.STABLE, _der("all rays have length 1, so the ray filter applies")),),
            )
        )
    for m in range(1, 8):
        out.append(
            CatalogEntry(
                f"p1xs{m}",
                f"P^1 x S_{m}",
                functools.partial(build_p1xs, m),
                (_exp("p1*H", 0, _der("product identity with xi_P1(pt) = 0")),),
            )
        )
    return out


_ENTRIES: dict[str, CatalogEntry] = {e.key: e for e in _entries()}


@functools.lru_cache(maxsize=None)
def _cached_model(key: str) -> VarietyModel:
    return _ENTRIES[key].builder()


def catalog() -> list[CatalogEntry]:
    return list(_ENTRIES.values())


def catalog_keys() -> list[str]:
    return list(_ENTRIES)


def get_entry(key: str) -> CatalogEntry:
    try:
        return _ENTRIES[key]
    except KeyError:
        raise ModelDataError(f"unknown catalog key {key!r}") from None


def get_model(key: str) -> VarietyModel:
    return get_entry(key).model


# -- scanning --------------------------------------------------------------


@dataclass(frozen=True)
class ScanRecord:
    divisor: DivisorClass
    label: str
    pruned_by: Optional[str]
    report: Optional[XiReport]

    @property
    def epsilon(self) -> Optional[Fraction]:
        return None if self.report is None else self.report.epsilon

    @property
    def xi(self) -> Optional[Fraction]:
        return None if self.report is None else self.report.xi

    @property
    def verdict(self) -> Verdict:
        return Verdict.STABLE if self.report is None else self.report.verdict


@dataclass(frozen=True)
class ScanResult:
    model: str
    bound: int
    records: tuple[ScanRecord, ...]

    @property
    def destabilizing(self) -> list[ScanRecord]:
        """Classes with ``xi <= 0``."""
        return [r for r in self.records if r.report is not None and r.report.xi <= 0]

    @property
    def unstable(self) -> list[ScanRecord]:
        return [r for r in self.records if r.report is not None and r.report.xi < 0]

    @property
    def pruned(self) -> list[ScanRecord]:
        return [r for r in self.records if r.pruned_by is not None]


def scan_destabilizers(
    m: VarietyModel, bound: int = 3, use_ray_filter: bool = True, max_classes: Optional[int] = 100_000
) -> ScanResult:
    """Evaluate ``xi`` over effective classes ``sum a_i G_i`` with ``0 <= a_i <= bound``.

    With the ray filter on, a class is skipped (and recorded as Stable) as
    soon as some ray ``C`` has ``(D.C) >= (-K.C)``.
    """
    if max_classes is not None:
        count = (bound + 1) ** len(m.effective_generators) - 1
        if count > max_classes:
            raise PreconditionError(
                f"{m.name}: {count} candidate classes exceed the limit of {max_classes}; lower the bound"
            )
    records = []
    for d in iter_effective_classes(m, bound):
        ray = ray_filter(m, d) if use_ray_filter else None
        rep = None if ray is not None else xi(m, d)
        records.append(ScanRecord(d, m.format_class(d), None if ray is None else ray.name, rep))
    return ScanResult(m.name, bound, tuple(records))


def every_ray_has_length_one(m: VarietyModel) -> bool:
    """True when every ray is a curve with ``(-K.C) = 1``: the ray filter then prunes every effective class."""
    return bool(m.rays) and all(m.anticanonical.dot(r.curve) == 1 and r.length in (None, 1) for r in m.rays)


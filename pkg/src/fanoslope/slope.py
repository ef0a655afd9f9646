"""Slope stability of Fano varieties along divisors and smooth centers.

Throughout, ``L = -K_X`` and ``f(x) = vol(L - xE)`` on the blowup along the
center (E is the divisor itself when the center has codimension one), and
``g(x) = (E . (L - xE)^(n-1)) = -f'(x)/n``.  For ``0 < c <= eps`` the
functional

    xi_c = r f(0) + (c - r) f(c) - int_0^c f = n int_0^c (r - x) g(x) dx

has the sign of ``mu(X) - mu_c``, and ``xi = xi_eps`` decides the verdict.

A *target* is a divisor name, a :class:`DivisorClass` or coordinate vector,
or a :class:`RestrictionModel`.  Names that refer both to a named divisor and
to a restriction are evaluated both ways and must agree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DegenerateDivisorError, InconsistencyError, ModelDataError, PreconditionError
from .exactmath import RationalLike, UniPoly, format_rational, integrate, rational
from .lattice import DivisorClass, restriction_integrand
from .model import (
    ConormalFlags,
    Ray,
    RestrictionModel,
    VarietyModel,
    conormal_status,
    is_nef,
    product_model,
    pullback,
    seshadri_constant,
)

Target = Union[str, DivisorClass, Sequence[RationalLike], RestrictionModel]


class Verdict(enum.Enum):
    STABLE = "Stable"
    SEMISTABLE_NOT_STABLE = "SemistableNotStable"
    UNSTABLE = "Unstable"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_xi(cls, xi: Fraction) -> "Verdict":
        if xi > 0:
            return cls.STABLE
        if xi == 0:
            return cls.SEMISTABLE_NOT_STABLE
        return cls.UNSTABLE


@dataclass(frozen=True)
class XiReport:
    epsilon: Fraction
    r: int
    f: UniPoly
    g: UniPoly
    xi: Fraction
    xi_alt: Fraction
    verdict: Verdict
    n: int
    witness_ray: Optional[str] = None

    def xi_c_poly(self) -> UniPoly:
        """``c -> xi_c`` as a polynomial in ``c``."""
        return self.r * UniPoly.constant(self.f(0)) + UniPoly.linear(-self.r, 1) * self.f - self.f.antiderivative()

    def to_dict(self) -> dict:
        return {
            "epsilon": format_rational(self.epsilon),
            "r": self.r,
            "f": [format_rational(c) for c in self.f.coeffs],
            "g": [format_rational(c) for c in self.g.coeffs],
            "xi": format_rational(self.xi),
            "xi_alt": format_rational(self.xi_alt),
            "verdict": self.verdict.value,
            "n": self.n,
            "witness_ray": self.witness_ray,
        }


@dataclass(frozen=True)
class SlopeValues:
    mu_c: Fraction
    mu_X: Fraction
    c: Fraction


@dataclass(frozen=True)
class _Data:
    """Everything the functional needs: ``n``, ``r``, ``eps``, ``f`` and ``g``."""

    n: int
    r: int
    epsilon: Fraction
    f: UniPoly
    g: UniPoly
    witness: Optional[str]


def _divisor_data(m: VarietyModel, d: DivisorClass) -> _Data:
    if d.is_zero():
        raise DegenerateDivisorError(f"{m.name}: the zero class has no slope")
    L = m.anticanonical
    ses = seshadri_constant(m, L, d)
    f = m.tensor.volume_polynomial(L, d)
    g = m.tensor.mixed_polynomial([d], L, d)
    return _Data(m.dim, 1, ses.value, f, g, ses.witness_ray)


def _restriction_data(m: Optional[VarietyModel], res: RestrictionModel, name: Optional[str] = None) -> _Data:
    g = restriction_integrand(res)
    n = res.lattice.dim + 1
    if m is None:
        raise ModelDataError("a restriction model needs its ambient model for vol(-K_X)")
    if m.dim != n:
        raise ModelDataError(f"restriction of dim {n - 1} on a {m.dim}-fold")
    vol0 = m.anticanonical_volume()
    f = UniPoly.constant(vol0) - n * g.antiderivative()
    witness = None
    if res.seshadri_override is not None:
        eps = res.seshadri_override
    elif name is not None and name in m.named_divisors and res.center_codim == 1:
        ses = seshadri_constant(m, m.anticanonical, m.named_divisors[name])
        eps, witness = ses.value, ses.witness_ray
    else:
        raise ModelDataError("restriction carries no seshadri_override and no ambient divisor to compute it from")
    return _Data(n, res.center_codim, eps, f, g, witness)


def _resolve(m: Optional[VarietyModel], target: Target) -> list[_Data]:
    """All presentations of ``target``; more than one means they must agree."""
    if isinstance(target, RestrictionModel):
        return [_restriction_data(m, target)]
    if m is None:
        raise ModelDataError("a divisor target needs a model")
    if isinstance(target, str):
        out = []
        if target in m.named_divisors or target in m.basis:
            out.append(_divisor_data(m, m.divisor(target)))
        if target in m.restrictions:
            out.append(_restriction_data(m, m.restrictions[target], target))
        if not out:
            raise ModelDataError(f"{m.name}: unknown divisor or restriction {target!r}")
        return out
    return [_divisor_data(m, m.divisor(target))]


def _xi_values(data: _Data, c: Fraction) -> tuple[Fraction, Fraction]:
    f, g, r, n = data.f, data.g, data.r, data.n
    primary = r * f(0) + (c - r) * f(c) - integrate(f, 0, c)
    alt = n * integrate(UniPoly.linear(r, -1) * g, 0, c)
    return primary, alt


def _check_c(data: _Data, c: Fraction) -> None:
    if not 0 < c <= data.epsilon:
        raise PreconditionError(f"c = {c} outside (0, eps] with eps = {data.epsilon}")


def _agree(datas: list[_Data]) -> _Data:
    first = datas[0]
    for other in datas[1:]:
        if (other.epsilon, other.r, other.g, other.f) != (first.epsilon, first.r, first.g, first.f):
            raise InconsistencyError(
                "divisor and restriction presentations disagree "
                f"(eps {first.epsilon} vs {other.epsilon}, g {first.g} vs {other.g})"
            )
    return first


def xi_c(m: Optional[VarietyModel], target: Target, c: RationalLike, r: Optional[int] = None) -> Fraction:
    """``xi_c`` at a fixed ``0 < c <= eps``.

    ``r`` defaults to the codimension implied by the target; passing a
    different one is rejected.
    """
    data = _agree(_resolve(m, target))
    if r is not None and r != data.r:
        raise PreconditionError(f"r = {r} does not match the target's codimension {data.r}")
    c = rational(c)
    _check_c(data, c)
    primary, alt = _xi_values(data, c)
    if primary != alt:
        raise InconsistencyError(f"xi_c formulas disagree: {primary} vs {alt}")
    return primary


def xi(m: Optional[VarietyModel], target: Target) -> XiReport:
    data = _agree(_resolve(m, target))
    primary, alt = _xi_values(data, data.epsilon)
    if primary != alt:
        raise InconsistencyError(f"xi formulas disagree: {primary} vs {alt}")
    return XiReport(data.epsilon, data.r, data.f, data.g, primary, alt, Verdict.from_xi(primary), data.n, data.witness)


def slope_mu_c(m: Optional[VarietyModel], target: Target, c: RationalLike) -> SlopeValues:
    """Ross-Thomas slope ``mu_c`` from the two leading Hilbert coefficients.

    ``a0 = f/n!`` and ``a1 = (f - (x - r + 1) f'/n) / (2 (n-1)!)``; the latter
    is ``(-K_hat . L_x^(n-1)) / (2 (n-1)!)`` with ``-K_hat = L - (r-1)E``.
    """
    data = _agree(_resolve(m, target))
    c = rational(c)
    _check_c(data, c)
    n, r, f = data.n, data.r, data.f
    a0 = f * Fraction(1, math.factorial(n))
    a1 = (f - UniPoly.linear(1 - r, 1) * f.derivative() * Fraction(1, n)) * Fraction(1, 2 * math.factorial(n - 1))
    den = integrate(a0, 0, c)
    if den == 0:
        raise ModelDataError("degenerate polarization: int_0^c a0 vanishes")
    num = integrate(a1 + a0.derivative() * Fraction(1, 2), 0, c)
    return SlopeValues(num / den, Fraction(n, 2), c)


@dataclass(frozen=True)
class BoundCheck:
    label: str
    holds: bool


def verdict_with_bounds(m: Optional[VarietyModel], target: Target) -> tuple[XiReport, list[BoundCheck]]:
    """``xi`` plus the Seshadri lower bounds forced by a non-stable verdict."""
    rep = xi(m, target)
    n, r, eps = rep.n, rep.r, rep.epsilon
    floor = Fraction(r * (n + 1), n)
    checks = []
    if rep.verdict is not Verdict.STABLE:
        checks.append(BoundCheck(f"eps > r ({eps} > {r})", eps > r))
        checks.append(BoundCheck(f"eps >= r(n+1)/n ({eps} >= {floor})", eps >= floor))
    if rep.verdict is Verdict.UNSTABLE:
        checks.append(BoundCheck(f"eps > r(n+1)/n ({eps} > {floor})", eps > floor))
    broken = [c.label for c in checks if not c.holds]
    if broken:
        raise InconsistencyError(f"verdict {rep.verdict} violates Seshadri bounds: {', '.join(broken)}")
    return rep, checks


class Convexity(enum.Enum):
    NOT_STABLE = "NotStable"
    NOT_SEMISTABLE = "NotSemistable"
    STABLE = "Stable"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


def convexity_criterion(
    m: Optional[VarietyModel],
    target: Union[str, RestrictionModel],
    flags: Optional[ConormalFlags] = None,
) -> Convexity:
    """Sufficient conditions read off the convexity of ``f``.

    Conormal nefness/ampleness comes from E's rays when present, otherwise
    from the flags (explicit ``flags`` take precedence over the model's).
    """
    if isinstance(target, str):
        if m is None or target not in m.restrictions:
            raise ModelDataError(f"no restriction named {target!r}")
        res = m.restrictions[target]
        data = _restriction_data(m, res, target)
    else:
        res = target
        data = _restriction_data(m, res)
    if flags is not None:
        merged = ConormalFlags(
            flags.conormal_nef if flags.conormal_nef is not None else res.conormal_flags.conormal_nef,
            flags.conormal_ample if flags.conormal_ample is not None else res.conormal_flags.conormal_ample,
            flags.self_square_effective_nonzero
            if flags.self_square_effective_nonzero is not None
            else res.conormal_flags.self_square_effective_nonzero,
        )
        res = RestrictionModel(
            res.center_codim, res.basis, res.lattice, res.restricted_anticanonical, res.self_class,
            res.seshadri_override, merged, res.rays,
        )
    status = conormal_status(res)
    r, eps = data.r, data.epsilon
    if status.conormal_nef and eps >= 2 * r:
        if r >= 2 or eps > 2 * r or status.conormal_ample:
            return Convexity.NOT_SEMISTABLE
        return Convexity.NOT_STABLE
    if r == 1 and status.self_square_effective_nonzero and eps <= 2:
        return Convexity.STABLE
    return Convexity.INCONCLUSIVE


def ray_filter(m: VarietyModel, d: DivisorClass) -> Optional[Ray]:
    """A ray ``C`` with ``(D.C) >= (-K.C)``, which certifies stability along ``D``.

    Along a non-stable divisor every curve satisfies ``(-K.C) > (D.C)``.
    """
    for ray in m.rays:
        if d.dot(ray.curve) >= m.anticanonical.dot(ray.curve):
            return ray
    return None


def ray_length_witness(m: VarietyModel, d: Union[str, DivisorClass]) -> Optional[tuple[Ray, Fraction]]:
    """For a non-stable divisor, a ray meeting it positively with length >= 2.

    Returns ``(ray, (-K.C) - (D.C))`` or ``None`` when the divisor is stable.
    """
    d = m.divisor(d)
    rep = xi(m, d)
    if rep.verdict is Verdict.STABLE:
        return None
    L = m.anticanonical
    for ray in m.rays:
        if (L - d).dot(ray.curve) <= 0:
            raise InconsistencyError(f"{m.name}: non-stable divisor with (-K - D).{ray.name} <= 0")
    have_lengths = any(ray.length is not None for ray in m.rays)
    best: Optional[tuple[Ray, Fraction]] = None
    for ray in m.rays:
        if d.dot(ray.curve) <= 0:
            continue
        if have_lengths and (ray.length is None or ray.length < 2):
            continue
        margin = L.dot(ray.curve) - d.dot(ray.curve)
        if best is None or margin > best[1]:
            best = (ray, margin)
    if best is None:
        raise InconsistencyError(f"{m.name}: non-stable divisor but no ray of length >= 2 meets it")
    return best


@dataclass(frozen=True)
class ProductIdentity:
    xi_product: Fraction
    xi_factor: Fraction
    predicted: Fraction

    @property
    def holds(self) -> bool:
        return self.xi_product == self.predicted


def product_pullback_xi(m1: VarietyModel, m2: VarietyModel, d1: Union[str, DivisorClass]) -> ProductIdentity:
    """``xi(p1^* D1) = C(n1+n2, n1) vol(-K_2) xi(D1)``, computed both ways."""
    d1 = m1.divisor(d1)
    prod = product_model(m1, m2)
    lhs = xi(prod, pullback(m1, m2, d1, 1)).xi
    base = xi(m1, d1).xi
    rhs = math.comb(m1.dim + m2.dim, m1.dim) * m2.anticanonical_volume() * base
    out = ProductIdentity(lhs, base, rhs)
    if not out.holds:
        raise InconsistencyError(f"product identity fails: {lhs} vs {rhs}")
    return out


def product_sum_stability(
    m1: VarietyModel, d1: Union[str, DivisorClass], m2: VarietyModel, d2: Union[str, DivisorClass]
) -> XiReport:
    """``xi`` along ``p1^*D1 + p2^*D2``, which must be Stable when both factors are semistable."""
    d1, d2 = m1.divisor(d1), m2.divisor(d2)
    r1, r2 = xi(m1, d1), xi(m2, d2)
    if r1.xi < 0 or r2.xi < 0:
        raise PreconditionError(
            f"a factor is unstable (xi1 = {r1.xi}, xi2 = {r2.xi}); no conclusion for the sum"
        )
    prod = product_model(m1, m2)
    rep = xi(prod, pullback(m1, m2, d1, 1) + pullback(m1, m2, d2, 2))
    if rep.epsilon != min(r1.epsilon, r2.epsilon):
        raise InconsistencyError(f"eps of the sum is {rep.epsilon}, expected {min(r1.epsilon, r2.epsilon)}")
    if rep.verdict is not Verdict.STABLE:
        raise InconsistencyError(f"sum of semistable pullbacks gives {rep.verdict} (xi = {rep.xi})")
    return rep


def proportional_xi(volD: RationalLike, t: RationalLike, n: int) -> Fraction:
    """``xi(D)`` when ``-K = tD``: ``vol(D) t^n (1 - t/(n+1))``."""
    volD, t = rational(volD), rational(t)
    if t <= 0:
        raise PreconditionError("t must be positive")
    return volD * t**n * (1 - t / (n + 1))


class NefVerdict(enum.Enum):
    STABLE = "Stable"
    SEMISTABLE = "Semistable"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


def nef_divisor_criterion(m: VarietyModel, d: Union[str, DivisorClass]) -> NefVerdict:
    """Vanishing of ``(D^i . (-K - eps D)^(n-i))`` for small ``i``.

    All ``1 <= i <= eps - 1`` vanishing gives Stable, all ``1 <= i < eps - 1``
    gives Semistable.  An empty range counts as vanishing.
    """
    d = m.divisor(d)
    if not is_nef(m, d):
        raise PreconditionError(f"{m.name}: {m.format_class(d)} is not nef")
    eps = seshadri_constant(m, m.anticanonical, d).value
    rest = m.anticanonical - d * eps
    n = m.dim

    def vanishes(i: int) -> bool:
        return m.tensor.intersect([d] * i + [rest] * (n - i)) == 0

    stable_range = [i for i in range(1, n + 1) if i <= eps - 1]
    semi_range = [i for i in stable_range if i < eps - 1]
    if all(vanishes(i) for i in stable_range):
        return NefVerdict.STABLE
    if all(vanishes(i) for i in semi_range):
        return NefVerdict.SEMISTABLE
    return NefVerdict.INCONCLUSIVE


@dataclass(frozen=True)
class Reduction:
    xi_Z: Fraction
    xi_E: Fraction
    residual: Fraction
    epsilon_Z: Fraction
    epsilon_E: Fraction

    @property
    def holds(self) -> bool:
        return self.xi_E == self.xi_Z - self.residual


def subvariety_reduction(m: VarietyModel, target: Union[str, RestrictionModel]) -> Reduction:
    """Compare ``xi`` along a codim-``r`` center with ``xi`` along its exceptional divisor.

    On the blowup ``-K_hat = L - (r-1)E``, so the divisor functional of E uses
    ``g(x + r - 1)`` on ``[0, eps - r + 1]``.  Returns both values and
    ``residual = n int_0^(r-1) (r - x) g``, with ``xi_E = xi_Z - residual``.
    """
    res = m.restrictions[target] if isinstance(target, str) else target
    data = _restriction_data(m, res, target if isinstance(target, str) else None)
    r, n, g, eps = data.r, data.n, data.g, data.epsilon
    if r < 2:
        raise PreconditionError("reduction needs a center of codimension >= 2")
    if eps <= r - 1:
        raise PreconditionError(f"eps = {eps} leaves no room for the exceptional divisor")
    xi_Z = _xi_values(data, eps)[0]
    eps_E = eps - (r - 1)
    g_E = g.shift(r - 1)
    xi_E = n * integrate(UniPoly.linear(1, -1) * g_E, 0, eps_E)
    residual = n * integrate(UniPoly.linear(r, -1) * g, 0, r - 1)
    out = Reduction(xi_Z, xi_E, residual, eps, eps_E)
    if not out.holds:
        raise InconsistencyError(f"reduction identity fails: {xi_E} vs {xi_Z} - {residual}")
    return out

"""Finite presentations of Fano varieties and queries against their ray data.

A :class:`VarietyModel` records the intersection tensor of the divisor
lattice, the anticanonical class, the extremal curve rays (each with an
optional length) and a list of effective generators.  Nefness and Seshadri
constants are always relative to the supplied ray list: the model is
trusted to list every extremal ray.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

from .errors import DegenerateDivisorError, ModelDataError
from .exactmath import RationalLike
from .lattice import CurveClass, DivisorClass, IntersectionTensor


@dataclass(frozen=True)
class Ray:
    name: str
    curve: CurveClass
    length: Optional[int] = None


@dataclass(frozen=True)
class ConormalFlags:
    conormal_nef: Optional[bool] = None
    conormal_ample: Optional[bool] = None
    self_square_effective_nonzero: Optional[bool] = None


@dataclass(frozen=True)
class RestrictionModel:
    """A divisor E presented through its own lattice.

    ``restricted_anticanonical`` is the class of the pulled-back
    anticanonical divisor restricted to E; ``self_class`` is E|_E.  For a
    center of codimension ``r >= 2`` E is the exceptional divisor of the
    blowup and ``seshadri_override`` must carry the Seshadri constant of the
    center.  ``rays`` are curve rays on E itself, used to test the conormal
    class for nefness/ampleness.
    """

    center_codim: int
    basis: tuple[str, ...]
    lattice: IntersectionTensor
    restricted_anticanonical: DivisorClass
    self_class: DivisorClass
    seshadri_override: Optional[Fraction] = None
    conormal_flags: ConormalFlags = field(default_factory=ConormalFlags)
    rays: tuple[Ray, ...] = ()

    @property
    def conormal(self) -> DivisorClass:
        return -self.self_class


@dataclass(frozen=True)
class VarietyModel:
    name: str
    dim: int
    basis: tuple[str, ...]
    tensor: IntersectionTensor
    anticanonical: DivisorClass
    rays: tuple[Ray, ...] = ()
    effective_generators: tuple[DivisorClass, ...] = ()
    named_divisors: Mapping[str, DivisorClass] = field(default_factory=dict)
    restrictions: Mapping[str, RestrictionModel] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def divisor(self, ref: "str | DivisorClass | Sequence[RationalLike]") -> DivisorClass:
        """Look up a named divisor, or coerce a coordinate vector."""
        if isinstance(ref, DivisorClass):
            d = ref
        elif isinstance(ref, str):
            if ref in self.named_divisors:
                d = self.named_divisors[ref]
            elif ref in self.basis:
                d = DivisorClass(1 if b == ref else 0 for b in self.basis)
            else:
                raise ModelDataError(f"{self.name}: unknown divisor {ref!r}")
        else:
            d = DivisorClass(ref)
        if d.rank != self.rank:
            raise ModelDataError(f"{self.name}: divisor of rank {d.rank}, lattice rank {self.rank}")
        return d

    def ray(self, name: str) -> Ray:
        for r in self.rays:
            if r.name == name:
                return r
        raise ModelDataError(f"{self.name}: no ray named {name!r}")

    def anticanonical_volume(self) -> Fraction:
        return self.tensor.volume(self.anticanonical)

    def format_class(self, d: DivisorClass) -> str:
        """Human-readable combination of basis labels, e.g. ``-E+H+F``."""
        parts = []
        for c, b in zip(d.coords, self.basis):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else (str(abs(c)) if c.denominator == 1 else f"({abs(c)})")
            parts.append(("-" if c < 0 else "+") + mag + b)
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True)
class SeshadriResult:
    value: Fraction
    witness_ray: str


def validate_model(m: VarietyModel) -> list[str]:
    """Return every violated invariant as a message; empty means valid."""
    out: list[str] = []
    if m.dim < 1:
        out.append("dim must be >= 1")
    if m.tensor.dim != m.dim:
        out.append(f"tensor dim {m.tensor.dim} differs from model dim {m.dim}")
    if m.tensor.rank != m.rank:
        out.append(f"tensor rank {m.tensor.rank} differs from basis size {m.rank}")
    if len(set(m.basis)) != len(m.basis):
        out.append("basis labels must be distinct")
    if m.anticanonical.rank != m.rank:
        out.append("anticanonical class has wrong rank")
        return out
    for ray in m.rays:
        if ray.curve.rank != m.rank:
            out.append(f"ray {ray.name}: pairing vector has wrong rank")
            continue
        k = m.anticanonical.dot(ray.curve)
        if k <= 0:
            out.append(f"ray {ray.name}: anticanonical must pair positively with ray (got {k})")
        if ray.length is not None:
            if not isinstance(ray.length, int) or ray.length <= 0:
                out.append(f"ray {ray.name}: length must be a positive integer")
            elif ray.length > k:
                out.append(f"ray {ray.name}: length {ray.length} exceeds anticanonical degree {k}")
        if m.effective_generators and not any(
            g.rank == m.rank and g.dot(ray.curve) > 0 for g in m.effective_generators
        ):
            out.append(f"ray {ray.name}: no effective generator pairs positively with it")
    for g in m.effective_generators:
        if g.rank != m.rank:
            out.append("effective generator has wrong rank")
    for name, d in m.named_divisors.items():
        if d.rank != m.rank:
            out.append(f"named divisor {name}: rank {d.rank}, expected {m.rank}")
    for name, res in m.restrictions.items():
        out.extend(f"restriction {name}: {msg}" for msg in _validate_restriction(m, name, res))
    return out


def _validate_restriction(m: VarietyModel, name: str, res: RestrictionModel) -> list[str]:
    out = []
    if res.lattice.dim != m.dim - 1:
        out.append(f"restriction dim must be {m.dim - 1} (got {res.lattice.dim})")
    if res.lattice.rank != len(res.basis):
        out.append("lattice rank differs from its basis size")
    for label in ("restricted_anticanonical", "self_class"):
        if getattr(res, label).rank != res.lattice.rank:
            out.append(f"{label} has wrong rank")
    if res.center_codim < 1:
        out.append("center codimension must be >= 1")
    if res.center_codim > m.dim:
        out.append("center codimension exceeds the dimension")
    if res.seshadri_override is not None and res.seshadri_override <= 0:
        out.append("seshadri override must be positive")
    flags = res.conormal_flags
    if flags.conormal_ample and flags.conormal_nef is False:
        out.append("contradictory flags: conormal ample but not nef")
    bad_rank = False
    for ray in res.rays:
        if ray.curve.rank != res.lattice.rank:
            out.append(f"E-ray {ray.name} has wrong rank")
            bad_rank = True
    if res.rays and not bad_rank and res.self_class.rank == res.lattice.rank:
        try:
            conormal_status(res)
        except ModelDataError as exc:
            out.append(str(exc))
    if res.center_codim >= 2 and res.seshadri_override is None:
        out.append("codim >= 2 center needs a seshadri_override")
    if res.center_codim == 1:
        ambient = m.named_divisors.get(name)
        if ambient is None and res.seshadri_override is None:
            out.append("no ambient divisor of the same name and no seshadri_override")
        if ambient is not None and m.rays and res.seshadri_override is not None and ambient.rank == m.rank:
            try:
                eps = seshadri_constant(m, m.anticanonical, ambient).value
            except ModelDataError:
                eps = None
            if eps is not None and eps != res.seshadri_override:
                out.append(f"seshadri_override {res.seshadri_override} disagrees with ray data ({eps})")
    return out


def require_valid(m: VarietyModel) -> VarietyModel:
    problems = validate_model(m)
    if problems:
        raise ModelDataError(f"{m.name}: " + "; ".join(problems))
    return m


def _require_rays(m: VarietyModel) -> None:
    if not m.rays:
        raise ModelDataError(f"{m.name}: model carries no curve rays")


def is_nef(m: VarietyModel, d: DivisorClass) -> bool:
    """Nonnegative against every listed ray."""
    _require_rays(m)
    return all(d.dot(r.curve) >= 0 for r in m.rays)


def is_ample(m: VarietyModel, d: DivisorClass) -> bool:
    """Strictly positive against every listed ray."""
    _require_rays(m)
    return all(d.dot(r.curve) > 0 for r in m.rays)


def seshadri_constant(m: VarietyModel, L: DivisorClass, D: DivisorClass) -> SeshadriResult:
    """Largest ``c`` with ``L - c*D`` nef: the minimum of ``(L.C)/(D.C)`` over rays with ``D.C > 0``."""
    _require_rays(m)
    if D.is_zero():
        raise DegenerateDivisorError(f"{m.name}: Seshadri constant of the zero class")
    best: Optional[SeshadriResult] = None
    for ray in m.rays:
        dc = D.dot(ray.curve)
        if dc <= 0:
            continue
        lc = L.dot(ray.curve)
        if lc <= 0:
            raise ModelDataError(f"{m.name}: polarization is not positive on ray {ray.name}")
        val = lc / dc
        if best is None or val < best.value:
            best = SeshadriResult(val, ray.name)
    if best is None:
        raise ModelDataError(
            f"{m.name}: no ray pairs positively with {m.format_class(D)}; "
            "the Seshadri constant is unbounded on this ray data"
        )
    return best


def _relabel(labels: Sequence[str], other: Sequence[str], suffix: str) -> list[str]:
    clash = set(labels) & set(other)
    return [f"{b}{suffix}" if b in clash else b for b in labels]


def product_model(m1: VarietyModel, m2: VarietyModel, name: Optional[str] = None) -> VarietyModel:
    """Direct-sum lattice of ``m1 x m2`` with the product intersection form.

    Colliding basis and ray labels get a ``1``/``2`` suffix; named divisors
    are pulled back as ``p1*name`` and ``p2*name``.
    """
    n1, n2 = m1.dim, m2.dim
    r1 = m1.rank
    entries = {}
    for k1, v1 in m1.tensor.entries.items():
        for k2, v2 in m2.tensor.entries.items():
            entries[k1 + tuple(r1 + j for j in k2)] = v1 * v2
    tensor = IntersectionTensor(n1 + n2, m1.rank + m2.rank, entries)
    basis = tuple(_relabel(m1.basis, m2.basis, "1") + _relabel(m2.basis, m1.basis, "2"))
    z1 = (Fraction(0),) * m1.rank
    z2 = (Fraction(0),) * m2.rank

    def up1(d: DivisorClass) -> DivisorClass:
        return DivisorClass(d.coords + z2)

    def up2(d: DivisorClass) -> DivisorClass:
        return DivisorClass(z1 + d.coords)

    names1 = _relabel([r.name for r in m1.rays], [r.name for r in m2.rays], "1")
    names2 = _relabel([r.name for r in m2.rays], [r.name for r in m1.rays], "2")
    rays = tuple(
        [Ray(nm, CurveClass(r.curve.pairings + z2), r.length) for nm, r in zip(names1, m1.rays)]
        + [Ray(nm, CurveClass(z1 + r.curve.pairings), r.length) for nm, r in zip(names2, m2.rays)]
    )
    eff = []
    for g in [up1(g) for g in m1.effective_generators] + [up2(g) for g in m2.effective_generators]:
        if g not in eff:
            eff.append(g)
    named = {f"p1*{k}": up1(v) for k, v in m1.named_divisors.items()}
    named.update({f"p2*{k}": up2(v) for k, v in m2.named_divisors.items()})
    return VarietyModel(
        name=name or f"{m1.name} x {m2.name}",
        dim=n1 + n2,
        basis=basis,
        tensor=tensor,
        anticanonical=up1(m1.anticanonical) + up2(m2.anticanonical),
        rays=rays,
        effective_generators=tuple(eff),
        named_divisors=named,
    )


def pullback(m1: VarietyModel, m2: VarietyModel, d: DivisorClass, factor: int) -> DivisorClass:
    """Pull a class on one factor back to the product lattice of :func:`product_model`."""
    if factor == 1:
        return DivisorClass(d.coords + (0,) * m2.rank)
    if factor == 2:
        return DivisorClass((0,) * m1.rank + d.coords)
    raise ValueError("factor must be 1 or 2")


def iter_effective_classes(m: VarietyModel, bound: int) -> Iterator[DivisorClass]:
    """Stream distinct nonzero ``sum a_i G_i`` with ``0 <= a_i <= bound``.

    Ordered by total coefficient, then by descending coefficient vector.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    gens = m.effective_generators
    if not gens:
        raise ModelDataError(f"{m.name}: no effective generators")
    seen = set()
    g = len(gens)
    for total in range(1, g * bound + 1):
        for combo in _compositions(total, g, bound):
            d = DivisorClass([0] * m.rank)
            for a, gen in zip(combo, gens):
                if a:
                    d = d + gen * a
            if d.is_zero() or d.coords in seen:
                continue
            seen.add(d.coords)
            yield d


def _compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total <= cap:
            yield (total,)
        return
    for first in range(min(cap, total), -1, -1):
        rest = total - first
        if rest > cap * (parts - 1):
            continue
        for tail in _compositions(rest, parts - 1, cap):
            yield (first,) + tail


def enumerate_effective_classes(m: VarietyModel, bound: int) -> list[DivisorClass]:
    return list(iter_effective_classes(m, bound))


def with_restrictions(m: VarietyModel, **restrictions: RestrictionModel) -> VarietyModel:
    merged = dict(m.restrictions)
    merged.update(restrictions)
    return replace(m, restrictions=merged)


def conormal_status(res: RestrictionModel) -> ConormalFlags:
    """Combine explicit flags with what E's rays say about the conormal class.

    Raises when an explicit flag contradicts the ray computation.
    """
    flags = res.conormal_flags
    nef, ample = flags.conormal_nef, flags.conormal_ample
    if res.rays:
        co = res.conormal
        ray_nef = all(co.dot(r.curve) >= 0 for r in res.rays)
        ray_ample = all(co.dot(r.curve) > 0 for r in res.rays)
        if nef is not None and nef != ray_nef:
            raise ModelDataError("conormal_nef flag contradicts E's ray data")
        if ample is not None and ample != ray_ample:
            raise ModelDataError("conormal_ample flag contradicts E's ray data")
        nef, ample = ray_nef, ray_ample
    if ample and nef is False:
        raise ModelDataError("contradictory flags: conormal ample but not nef")
    if ample:
        nef = True
    return ConormalFlags(nef, ample, flags.self_square_effective_nonzero)


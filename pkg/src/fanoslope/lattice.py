"""Divisor and curve classes and the symmetric intersection form.

An :class:`IntersectionTensor` stores one value per multiset of basis
indices (keys are sorted tuples); absent keys are zero.  Evaluation on a
list of classes expands each repeated factor multinomially, so each sorted
key is visited once with the right multiplicity.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import ModelDataError
from .exactmath import RationalLike, UniPoly, rational


@dataclass(frozen=True)
class DivisorClass:
    """Coordinates of a divisor class in a lattice basis."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[RationalLike]):
        object.__setattr__(self, "coords", tuple(rational(c) for c in coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check(self, other: "DivisorClass") -> None:
        if self.rank != other.rank:
            raise ModelDataError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-a for a in self.coords)

    def __mul__(self, k: RationalLike) -> "DivisorClass":
        k = rational(k)
        return DivisorClass(k * a for a in self.coords)

    __rmul__ = __mul__

    def dot(self, curve: "CurveClass") -> Fraction:
        """Intersection number with a curve class."""
        if self.rank != curve.rank:
            raise ModelDataError(f"rank mismatch: divisor {self.rank} vs curve {curve.rank}")
        return sum((a * b for a, b in zip(self.coords, curve.pairings)), Fraction(0))

    def __repr__(self) -> str:
        return "DivisorClass(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class CurveClass:
    """A curve recorded by its intersection numbers against each basis divisor."""

    pairings: tuple[Fraction, ...]

    def __init__(self, pairings: Iterable[RationalLike]):
        object.__setattr__(self, "pairings", tuple(rational(c) for c in pairings))

    @property
    def rank(self) -> int:
        return len(self.pairings)

    def __add__(self, other: "CurveClass") -> "CurveClass":
        return CurveClass(a + b for a, b in zip(self.pairings, other.pairings))


def unit_class(rank: int, i: int) -> DivisorClass:
    return DivisorClass(1 if j == i else 0 for j in range(rank))


class IntersectionTensor:
    """Symmetric ``dim``-linear form on a rank-``rank`` lattice.

    >>> t = IntersectionTensor(3, 1, {(0, 0, 0): 1})
    >>> t.volume(DivisorClass([4]))
    Fraction(64, 1)
    """

    __slots__ = ("dim", "rank", "_entries")

    def __init__(self, dim: int, rank: int, entries: Mapping[Sequence[int], RationalLike]):
        if dim < 1 or rank < 1:
            raise ModelDataError(f"tensor needs dim >= 1 and rank >= 1 (got {dim}, {rank})")
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, value in entries.items():
            k = tuple(sorted(int(i) for i in key))
            if len(k) != dim:
                raise ModelDataError(f"tensor key {key} has length {len(k)}, expected {dim}")
            if any(i < 0 or i >= rank for i in k):
                raise ModelDataError(f"tensor key {key} out of range for rank {rank}")
            v = rational(value)
            if k in clean and clean[k] != v:
                raise ModelDataError(f"conflicting values for tensor key {k}")
            if v != 0:
                clean[k] = v
        if not clean:
            raise ModelDataError("intersection tensor has no nonzero entry")
        self.dim = dim
        self.rank = rank
        self._entries = MappingProxyType(dict(sorted(clean.items())))

    @property
    def entries(self) -> Mapping[tuple[int, ...], Fraction]:
        return self._entries

    def __getitem__(self, key: Sequence[int]) -> Fraction:
        return self._entries.get(tuple(sorted(key)), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntersectionTensor):
            return NotImplemented
        return (self.dim, self.rank, dict(self._entries)) == (other.dim, other.rank, dict(other._entries))

    def __repr__(self) -> str:
        return f"IntersectionTensor(dim={self.dim}, rank={self.rank}, entries={dict(self._entries)})"

    def intersect(self, classes: Sequence[DivisorClass]) -> Fraction:
        if len(classes) != self.dim:
            raise ModelDataError(f"need {self.dim} classes, got {len(classes)}")
        for c in classes:
            if c.rank != self.rank:
                raise ModelDataError(f"class of rank {c.rank} on a rank-{self.rank} lattice")
        # expand prod (sum_j c[j] X_j)^k over distinct classes c; keys are exponent vectors
        monomials: dict[tuple[int, ...], Fraction] = {(0,) * self.rank: Fraction(1)}
        for coords, k in Counter(c.coords for c in classes).items():
            power = _power(coords, k)
            if not power:
                return Fraction(0)
            nxt: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
            for e1, c1 in monomials.items():
                for e2, c2 in power.items():
                    nxt[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
            monomials = nxt
        total = Fraction(0)
        for exps, coef in monomials.items():
            key = tuple(j for j, e in enumerate(exps) for _ in range(e))
            total += coef * self._entries.get(key, 0)
        return total

    def volume(self, d: DivisorClass) -> Fraction:
        return self.intersect([d] * self.dim)

    def volume_polynomial(self, a: DivisorClass, b: DivisorClass) -> UniPoly:
        """``f(x) = ((a - x*b)^n)`` expanded binomially."""
        n = self.dim
        coeffs = []
        for i in range(n + 1):
            mixed = self.intersect([a] * (n - i) + [b] * i)
            coeffs.append(math.comb(n, i) * (-1) ** i * mixed)
        return UniPoly(coeffs)

    def mixed_polynomial(self, head: Sequence[DivisorClass], a: DivisorClass, b: DivisorClass) -> UniPoly:
        """``(head . (a - x*b)^(n - len(head)))`` as a polynomial in ``x``."""
        m = self.dim - len(head)
        if m < 0:
            raise ModelDataError("too many fixed classes")
        coeffs = []
        for i in range(m + 1):
            mixed = self.intersect(list(head) + [a] * (m - i) + [b] * i)
            coeffs.append(math.comb(m, i) * (-1) ** i * mixed)
        return UniPoly(coeffs)

    def to_matrix(self) -> list[list[Fraction]]:
        """The Gram matrix of a surface lattice (``dim == 2`` only)."""
        if self.dim != 2:
            raise ModelDataError("matrix form exists only for dim 2")
        return [[self[(i, j)] for j in range(self.rank)] for i in range(self.rank)]


def _power(coords: tuple[Fraction, ...], k: int) -> dict[tuple[int, ...], Fraction]:
    """Multinomial expansion of ``(sum_j coords[j] X_j)^k`` keyed by exponent vectors."""
    support = [j for j, a in enumerate(coords) if a != 0]
    out: dict[tuple[int, ...], Fraction] = {}
    if not support:
        return out
    for parts in _compositions(k, len(support)):
        exps = [0] * len(coords)
        coef = Fraction(math.factorial(k))
        for j, e in zip(support, parts):
            exps[j] = e
            coef = coef * coords[j] ** e / math.factorial(e)
        out[tuple(exps)] = coef
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def surface_tensor(matrix: Sequence[Sequence[RationalLike]]) -> IntersectionTensor:
    """Build the dim-2 tensor from a symmetric Gram matrix."""
    rho = len(matrix)
    entries = {}
    for i in range(rho):
        if len(matrix[i]) != rho:
            raise ModelDataError("Gram matrix must be square")
        for j in range(rho):
            if rational(matrix[i][j]) != rational(matrix[j][i]):
                raise ModelDataError("Gram matrix must be symmetric")
            if i <= j:
                entries[(i, j)] = matrix[i][j]
    return IntersectionTensor(2, rho, entries)


def restriction_integrand(restriction) -> UniPoly:
    """``g(x) = (L|_E - x E|_E)^(n-1)`` evaluated on E's own lattice.

    ``restriction`` is anything exposing ``lattice``, ``restricted_anticanonical``
    and ``self_class`` (see :class:`fanoslope.model.RestrictionModel`).  The
    result equals ``(E . (L - xE)^(n-1))`` on the ambient variety.
    """
    lat: IntersectionTensor = restriction.lattice
    for name in ("restricted_anticanonical", "self_class"):
        cls = getattr(restriction, name)
        if cls.rank != lat.rank:
            raise ModelDataError(f"{name} has rank {cls.rank}, lattice of E has rank {lat.rank}")
    return lat.volume_polynomial(restriction.restricted_anticanonical, restriction.self_class)


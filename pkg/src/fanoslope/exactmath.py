"""Exact rational scalars and univariate polynomials over Q.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator). :class:`UniPoly` is an immutable dense polynomial
whose coefficient tuple is indexed by degree.

Sign questions on an interval are answered exactly: a Sturm chain counts
distinct real roots, and a square-free decomposition decides whether the
roots inside the interval are sign changes or touch points.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import RationalFormatError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: a float has already lost exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise RationalFormatError(f"malformed rational {text!r}; expected 'p' or 'p/q'")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RationalFormatError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction | int) -> str:
    """Canonical string: ``"p"`` for integers, ``"p/q"`` otherwise."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class UniPoly:
    """Immutable univariate polynomial with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are
    stripped, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        c = [rational(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, a: RationalLike) -> "UniPoly":
        return cls([a])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def linear(cls, a: RationalLike, b: RationalLike) -> "UniPoly":
        """The polynomial ``a + b*x``."""
        return cls([a, b])

    # -- basic protocol -----------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == UniPoly.constant(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            a = self._c[i]
            if a == 0:
                continue
            mag = format_rational(abs(a))
            if i == 0:
                body = mag
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if abs(a) == 1 else f"{mag}*{mono}"
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.constant(other)

    def __add__(self, other) -> "UniPoly":
        o = self._coerce(other)
        n = max(len(self._c), len(o._c))
        a = self._c + (Fraction(0),) * (n - len(self._c))
        b = o._c + (Fraction(0),) * (n - len(o._c))
        return UniPoly(p + q for p, q in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-a for a in self._c)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            k = rational(other)
            return UniPoly(k * a for a in self._c)
        if not self._c or not other._c:
            return UniPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power")
        result = UniPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: RationalLike) -> Fraction:
        return eval_poly(self, x)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Euclidean division over Q: ``self = q*other + r`` with deg r < deg other."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = len(rem) - len(other._c)
        if dq < 0:
            return UniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other._c[-1]
        for k in range(dq, -1, -1):
            coef = rem[k + len(other._c) - 1] / lead
            quot[k] = coef
            if coef:
                for j, b in enumerate(other._c):
                    rem[k + j] -= coef * b
        return UniPoly(quot), UniPoly(rem[: len(other._c) - 1])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    # -- calculus -----------------------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly(i * a for i, a in enumerate(self._c) if i > 0)

    def antiderivative(self) -> "UniPoly":
        """The antiderivative vanishing at 0, coefficients ``c_i/(i+1)``."""
        return UniPoly([0] + [a / (i + 1) for i, a in enumerate(self._c)])

    def compose_linear(self, a: RationalLike, b: RationalLike = 1) -> "UniPoly":
        """Return ``p(a + b*x)``."""
        inner = UniPoly.linear(a, b)
        out = UniPoly()
        for coef in reversed(self._c):
            out = out * inner + coef
        return out

    def shift(self, a: RationalLike) -> "UniPoly":
        """Return ``p(x + a)``."""
        return self.compose_linear(a, 1)

    def monic(self) -> "UniPoly":
        if not self._c:
            return self
        return self * (1 / self._c[-1])

    def primitive(self) -> "UniPoly":
        """Positive rescaling to coprime integer coefficients (sign preserved)."""
        if not self._c:
            return self
        den = math.lcm(*(a.denominator for a in self._c))
        ints = [int(a * den) for a in self._c]
        g = math.gcd(*ints)
        return UniPoly(Fraction(v, g) for v in ints)


def eval_poly(p: UniPoly, x: RationalLike) -> Fraction:
    """Horner evaluation."""
    x = rational(x)
    acc = Fraction(0)
    for a in reversed(p.coeffs):
        acc = acc * x + a
    return acc


def integrate(p: UniPoly, a: RationalLike, b: RationalLike) -> Fraction:
    """Exact signed integral of ``p`` over ``[a, b]`` (``a > b`` allowed)."""
    anti = p.antiderivative()
    return anti(b) - anti(a)


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    while not q.is_zero():
        p, q = q, (p % q).primitive()
    return p.monic()


def squarefree_decomposition(p: UniPoly) -> list[UniPoly]:
    """Yun's algorithm: monic ``[a_1, a_2, ...]`` with ``p = lc * prod a_i**i``."""
    if p.degree < 1:
        return []
    out: list[UniPoly] = []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = p // a0
    c = dp // a0
    d = c - b.derivative()
    while b.degree >= 1:
        a = poly_gcd(b, d)
        out.append(a)
        b = b // a
        c = d // a
        d = c - b.derivative()
    return [a.monic() for a in out]


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Sturm chain ``p, p', -rem, ...`` with positive content normalization."""
    chain = [p.primitive(), p.derivative().primitive()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r.primitive())
    return [q for q in chain if not q.is_zero()]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _variations(chain: Sequence[UniPoly], x: Fraction) -> int:
    signs = [_sign(q(x)) for q in chain]
    signs = [s for s in signs if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots_open(p: UniPoly, a: RationalLike, b: RationalLike) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(a, b)``."""
    a, b = rational(a), rational(b)
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree < 1:
        return 0
    sq = p // poly_gcd(p, p.derivative())
    chain = sturm_chain(sq)
    half_open = _variations(chain, a) - _variations(chain, b)
    return half_open - (1 if sq(b) == 0 else 0)


class Sign(enum.Enum):
    STRICTLY_POSITIVE = "StrictlyPositive"
    STRICTLY_NEGATIVE = "StrictlyNegative"
    NON_NEGATIVE = "NonNegative"
    NON_POSITIVE = "NonPositive"
    MIXED = "Mixed"
    IDENTICALLY_ZERO = "IdenticallyZero"

    def __str__(self) -> str:
        return self.value


def sign_on_interval(p: UniPoly, a: RationalLike, b: RationalLike, mode: str = "closed") -> Sign:
    """Classify the sign of ``p`` on ``(a, b)`` (``mode="open"``) or ``[a, b]``.

    No sampling: odd-multiplicity roots inside the interval are counted with a
    Sturm chain; even-multiplicity roots and endpoint zeros only demote a
    strict verdict to a weak one.
    """
    a, b = rational(a), rational(b)
    if mode not in ("open", "closed"):
        raise ValueError(f"mode must be 'open' or 'closed', got {mode!r}")
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if p.is_zero():
        return Sign.IDENTICALLY_ZERO
    parts = squarefree_decomposition(p)
    odd = UniPoly.constant(p.leading)
    for mult, factor in enumerate(parts, start=1):
        if mult % 2:
            odd = odd * factor
    if odd.degree >= 1 and count_roots_open(odd, a, b) > 0:
        return Sign.MIXED
    s = _sign(odd((a + b) / 2))
    touches = p.degree >= 1 and count_roots_open(p, a, b) > 0
    if mode == "closed":
        touches = touches or p(a) == 0 or p(b) == 0
    if s > 0:
        return Sign.NON_NEGATIVE if touches else Sign.STRICTLY_POSITIVE
    return Sign.NON_POSITIVE if touches else Sign.STRICTLY_NEGATIVE


def binomial_poly(shift: RationalLike, slope: RationalLike, power: int) -> UniPoly:
    """``(shift + slope*x)**power``; a small convenience for closed forms."""
    return UniPoly.linear(shift, slope) ** power

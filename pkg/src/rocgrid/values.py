"""Exact canonical values for confusion-matrix performance metrics.

A metric evaluated on an integer confusion matrix is either a rational
number, a signed square root of a rational, infinite, or undefined
(a 0/0 form).  :class:`MetricValue` carries these cases in a canonical
form with decidable exact equality and a total order over the defined
values, so distributions over metric values can be grouped and sorted
without floating-point collisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

__all__ = [
    "MetricValue",
    "RationalLike",
    "exact_sqrt",
    "rational",
    "signed_sqrt",
    "POS_INF",
    "NEG_INF",
    "UNDEFINED",
    "ZERO",
    "ONE",
]

RationalLike = Union[int, Fraction]

RATIONAL = "rational"
SQRT = "sqrt"
POSITIVE_INFINITY = "pos_inf"
NEGATIVE_INFINITY = "neg_inf"
UNDEFINED_KIND = "undefined"

_FINITE_KINDS = (RATIONAL, SQRT)


def exact_sqrt(q: Fraction) -> Optional[Fraction]:
    """Return the exact rational square root of ``q`` or None.

    ``q`` must be non-negative.  Fraction keeps numerator/denominator
    coprime, so a rational square root exists iff both are perfect squares.
    """
    if q < 0:
        raise ValueError("exact_sqrt requires a non-negative argument")
    rn = math.isqrt(q.numerator)
    if rn * rn != q.numerator:
        return None
    rd = math.isqrt(q.denominator)
    if rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


@dataclass(frozen=True, slots=True)
class MetricValue:
    """Canonical exact metric value.

    kind:
      - "rational": value = num/den (den > 0, gcd-reduced)
      - "sqrt":     value = sign * sqrt(num/den); the radicand num/den is a
                    positive non-perfect-square rational, sign is +1 or -1
      - "pos_inf" / "neg_inf": infinities (ordered around all finite values)
      - "undefined": a 0/0 form; excluded from ordering and from comparisons

    Construct through :func:`rational` / :func:`signed_sqrt` (or the
    module constants) so canonical invariants hold; perfect-square
    radicands collapse to the rational kind.
    """

    kind: str
    num: int = 0
    den: int = 1
    sign: int = 0

    # -- constructors ------------------------------------------------

    @staticmethod
    def of(value: RationalLike) -> "MetricValue":
        f = Fraction(value)
        return MetricValue(RATIONAL, f.numerator, f.denominator, _sign_of(f))

    @staticmethod
    def sqrt_value(sign: int, square: Fraction) -> "MetricValue":
        """Canonical value with the given sign and squared magnitude."""
        if square < 0:
            raise ValueError("squared magnitude must be non-negative")
        if square == 0 or sign == 0:
            return ZERO
        if sign not in (-1, 1):
            raise ValueError("sign must be -1, 0 or +1")
        root = exact_sqrt(square)
        if root is not None:
            return MetricValue.of(sign * root)
        return MetricValue(SQRT, square.numerator, square.denominator, sign)

    # -- predicates --------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    @property
    def is_sqrt(self) -> bool:
        return self.kind == SQRT

    @property
    def is_finite(self) -> bool:
        return self.kind in _FINITE_KINDS

    @property
    def is_infinite(self) -> bool:
        return self.kind in (POSITIVE_INFINITY, NEGATIVE_INFINITY)

    @property
    def is_undefined(self) -> bool:
        return self.kind == UNDEFINED_KIND

    @property
    def is_defined(self) -> bool:
        return self.kind != UNDEFINED_KIND

    # -- exact accessors ---------------------------------------------

    def as_fraction(self) -> Fraction:
        """Exact rational value; raises for non-rational kinds."""
        if self.kind != RATIONAL:
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num, self.den)

    def square(self) -> Fraction:
        """Exact square of a finite value."""
        if self.kind == RATIONAL:
            return Fraction(self.num * self.num, self.den * self.den)
        if self.kind == SQRT:
            return Fraction(self.num, self.den)
        raise ValueError(f"{self!r} has no finite square")

    def signum(self) -> int:
        """-1, 0 or +1; infinities map to their sign."""
        if self.kind == POSITIVE_INFINITY:
            return 1
        if self.kind == NEGATIVE_INFINITY:
            return -1
        if self.kind == UNDEFINED_KIND:
            raise ValueError("undefined value has no sign")
        return self.sign

    # -- ordering ----------------------------------------------------

    def _order_check(self, other: "MetricValue") -> None:
        if self.kind == UNDEFINED_KIND or other.kind == UNDEFINED_KIND:
            raise ValueError("undefined values are not ordered")

    def __lt__(self, other: "MetricValue") -> bool:
        self._order_check(other)
        if self == other:
            return False
        if self.kind == NEGATIVE_INFINITY or other.kind == POSITIVE_INFINITY:
            return True
        if self.kind == POSITIVE_INFINITY or other.kind == NEGATIVE_INFINITY:
            return False
        ss, so = self.sign, other.sign
        if ss != so:
            return ss < so
        # same sign, both finite, not equal: compare squared magnitudes
        if ss >= 0:
            return self.square() < other.square()
        return self.square() > other.square()

    def __le__(self, other: "MetricValue") -> bool:
        return self == other or self < other

    def __gt__(self, other: "MetricValue") -> bool:
        self._order_check(other)
        return other < self

    def __ge__(self, other: "MetricValue") -> bool:
        return self == other or other < self

    # -- conversion --------------------------------------------------

    def __float__(self) -> float:
        if self.kind == RATIONAL:
            return self.num / self.den
        if self.kind == SQRT:
            return self.sign * math.sqrt(self.num / self.den)
        if self.kind == POSITIVE_INFINITY:
            return math.inf
        if self.kind == NEGATIVE_INFINITY:
            return -math.inf
        return math.nan

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.kind == RATIONAL:
            return f"MetricValue({self.num}/{self.den})"
        if self.kind == SQRT:
            s = "-" if self.sign < 0 else "+"
            return f"MetricValue({s}sqrt({self.num}/{self.den}))"
        return f"MetricValue({self.kind})"


def _sign_of(f: Fraction) -> int:
    if f > 0:
        return 1
    if f < 0:
        return -1
    return 0


def rational(value: RationalLike) -> MetricValue:
    return MetricValue.of(value)


def signed_sqrt(sign: int, square: Fraction) -> MetricValue:
    return MetricValue.sqrt_value(sign, square)


POS_INF = MetricValue(POSITIVE_INFINITY)
NEG_INF = MetricValue(NEGATIVE_INFINITY)
UNDEFINED = MetricValue(UNDEFINED_KIND)
ZERO = MetricValue(RATIONAL, 0, 1, 0)
ONE = MetricValue(RATIONAL, 1, 1, 1)

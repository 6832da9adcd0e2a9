"""Discrete geometry of the confusion-matrix lattice.

Matrices with total count N form the integer points of a 3-simplex with
C(N+3, 3) elements.  Fixing the class sizes p (real positives) and
n (real negatives) selects a rectangular slice indexed by (a, d) =
(true positives, true negatives); point (a, d) is matrix
(a, n - d, p - a, d).  Three exact projections to 3-space are provided,
plus the ROC-to-precision-recall map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from .errors import DomainError
from .matrices import ConfusionMatrix

__all__ = [
    "count_matrices",
    "enumerate_matrices",
    "enumerate_slice",
    "slice_point_to_matrix",
    "project_tetrahedral",
    "project_simplex",
    "project_barycentric",
    "PrPoint",
    "roc_to_pr",
]

Triple = Tuple[Fraction, Fraction, Fraction]


def _check_count(name: str, value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {value!r}")
    return value


def count_matrices(total: int) -> int:
    """Number of confusion matrices with the given total count: C(N+3, 3)."""
    _check_count("total", total)
    return math.comb(total + 3, 3)


def enumerate_matrices(total: int) -> Iterator[ConfusionMatrix]:
    """Stream all matrices with the given total, in (tp, fp, fn) lexicographic order."""
    _check_count("total", total)
    for a in range(total + 1):
        for b in range(total - a + 1):
            for c in range(total - a - b + 1):
                yield ConfusionMatrix(a, b, c, total - a - b - c)


def slice_point_to_matrix(a: int, d: int, p: int, n: int) -> ConfusionMatrix:
    """Matrix for lattice point (a, d) on the (p, n) slice."""
    if not (0 <= a <= p and 0 <= d <= n):
        raise DomainError(f"point ({a}, {d}) outside the (p={p}, n={n}) slice")
    return ConfusionMatrix(a, n - d, p - a, d)


def enumerate_slice(p: int, n: int) -> Iterator[Tuple[int, int, ConfusionMatrix]]:
    """All (p+1) x (n+1) slice points, row-major: a ascending, then d ascending."""
    _check_count("p", p)
    _check_count("n", n)
    for a in range(p + 1):
        for d in range(n + 1):
            yield a, d, ConfusionMatrix(a, n - d, p - a, d)


# ---------------------------------------------------------------------------
# projections
# ---------------------------------------------------------------------------


def project_tetrahedral(m: ConfusionMatrix) -> Triple:
    """Normalized tetrahedron: (a/N, c/N, b/N).

    Vertices: all-TP -> (1,0,0), all-FN -> (0,1,0), all-FP -> (0,0,1),
    all-TN -> origin.  Not injective across totals (pure rates).
    """
    total = m.total
    if total == 0:
        raise DomainError("tetrahedral projection needs a non-empty matrix")
    return (
        Fraction(m.tp, total),
        Fraction(m.fn, total),
        Fraction(m.fp, total),
    )


def project_simplex(m: ConfusionMatrix) -> Triple:
    """Count simplex: (a - d/3, b - d/3, c - d/3).

    Isometric on unit transfers (moving one count between any two cells
    displaces the image by exactly sqrt(2)) and injective within each
    fixed total N.
    """
    shift = Fraction(m.tn, 3)
    return (m.tp - shift, m.fp - shift, m.fn - shift)


def project_barycentric(m: ConfusionMatrix) -> Triple:
    """Signed barycentric cube corners: ((a-b-c+d)/N, (a+b-c-d)/N, (a-b+c-d)/N)."""
    total = m.total
    if total == 0:
        raise DomainError("barycentric projection needs a non-empty matrix")
    a, b, c, d = m.counts()
    return (
        Fraction(a - b - c + d, total),
        Fraction(a + b - c - d, total),
        Fraction(a - b + c - d, total),
    )


PROJECTIONS = {
    "tetra": project_tetrahedral,
    "simplex": project_simplex,
    "bary": project_barycentric,
}


# ---------------------------------------------------------------------------
# ROC -> precision/recall
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PrPoint:
    """Precision-recall image of an ROC point; precision None where 0/0."""

    recall: Fraction
    precision: Optional[Fraction]

    @property
    def defined(self) -> bool:
        return self.precision is not None


def roc_to_pr(fpr, tpr, p: int, n: int) -> PrPoint:
    """Map an ROC point to precision-recall space for class sizes p, n.

    recall = tpr; precision = p*tpr / (p*tpr + n*fpr).  Precision is
    undefined (None) only when that ratio is 0/0, i.e. there are no
    predicted positives at all: tpr = 0 and fpr = 0 (or n = 0).
    """
    _check_count("n", n)
    _check_count("p", p)
    if p == 0:
        raise DomainError("roc_to_pr needs at least one real positive")
    fpr = Fraction(fpr)
    tpr = Fraction(tpr)
    for name, r in (("fpr", fpr), ("tpr", tpr)):
        if not 0 <= r <= 1:
            raise DomainError(f"{name} must lie in [0, 1], got {r}")
    den = p * tpr + n * fpr
    if den == 0:
        return PrPoint(recall=tpr, precision=None)
    return PrPoint(recall=tpr, precision=p * tpr / den)

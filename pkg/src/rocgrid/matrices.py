"""Binary confusion matrices, their rate forms, and benefit weightings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError

__all__ = ["ConfusionMatrix", "Rates", "BenefitMatrix"]


@dataclass(frozen=True, slots=True)
class ConfusionMatrix:
    """Counts (tp, fp, fn, tn), all non-negative integers."""

    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise DomainError(f"{name} must be a non-negative integer, got {v!r}")

    @property
    def pos(self) -> int:
        """Real positives p = tp + fn."""
        return self.tp + self.fn

    @property
    def neg(self) -> int:
        """Real negatives n = fp + tn."""
        return self.fp + self.tn

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def counts(self) -> tuple[int, int, int, int]:
        return (self.tp, self.fp, self.fn, self.tn)

    def rates(self) -> "Rates":
        """Exact rates; a rate whose denominator is zero comes back as None."""
        tpr = Fraction(self.tp, self.pos) if self.pos else None
        tnr = Fraction(self.tn, self.neg) if self.neg else None
        return Rates(
            tpr=tpr,
            tnr=tnr,
            fpr=1 - tnr if tnr is not None else None,
            fnr=1 - tpr if tpr is not None else None,
            prevalence=Fraction(self.pos, self.total) if self.total else None,
        )


@dataclass(frozen=True, slots=True)
class Rates:
    """Rate coordinates of a matrix as exact rationals, None where 0/0.

    tpr + fnr = 1 and tnr + fpr = 1 whenever the pair is defined.
    """

    tpr: Optional[Fraction]
    tnr: Optional[Fraction]
    fpr: Optional[Fraction]
    fnr: Optional[Fraction]
    prevalence: Optional[Fraction]


@dataclass(frozen=True, slots=True)
class BenefitMatrix:
    """Per-cell benefits (beta_tp, beta_fp, beta_fn, beta_tn).

    Contour plotting additionally requires beta_tp > beta_fn >= 0 and
    beta_tn > beta_fp >= 0 (correct decisions strictly out-benefit the
    corresponding errors); ``require_contour_ordering`` enforces that.
    """

    beta_tp: Fraction
    beta_fp: Fraction
    beta_fn: Fraction
    beta_tn: Fraction

    @staticmethod
    def of(beta_tp, beta_fp, beta_fn, beta_tn) -> "BenefitMatrix":
        return BenefitMatrix(
            Fraction(beta_tp), Fraction(beta_fp), Fraction(beta_fn), Fraction(beta_tn)
        )

    def cells(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.beta_tp, self.beta_fp, self.beta_fn, self.beta_tn)

    def require_contour_ordering(self) -> None:
        if not (self.beta_tp > self.beta_fn >= 0):
            raise DomainError("contour benefits need beta_tp > beta_fn >= 0")
        if not (self.beta_tn > self.beta_fp >= 0):
            raise DomainError("contour benefits need beta_tn > beta_fp >= 0")

    def normalized(self, total: int) -> "BenefitMatrix":
        """Shift-scale so the min cell is 0 and the max cell is 1/total."""
        if total <= 0:
            raise DomainError("normalization needs a positive total count")
        lo = min(self.cells())
        span = max(self.cells()) - lo
        if span == 0:
            raise DomainError("cannot normalize a constant benefit matrix")
        scale = Fraction(1, total) / span
        return BenefitMatrix(*((c - lo) * scale for c in self.cells()))

"""Exact pmfs of performance metrics induced by matrix distributions.

Pushing a joint pmf over slice points (a, d) through a metric groups
the lattice by exact canonical value: two points contribute to the same
entry exactly when the metric takes the same value on both.  Masses
stay rational throughout, so defined mass plus undefined mass is
exactly one.  Float summaries (mean, sd, credible interval, histogram)
are taken over display floats and are the only lossy step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import DomainError
from .matrices import BenefitMatrix
from .metrics import display_finite, display_range, eval_counts, render_float
from .uncertainty import JointPmf, check_grid_guard, uniform_joint
from .values import MetricValue

__all__ = [
    "MetricEntry",
    "MetricPmf",
    "metric_pmf",
    "multiplicity",
    "Summary",
    "summarize",
    "Histogram",
    "histogram",
]


@dataclass(frozen=True, slots=True)
class MetricEntry:
    """One distinct metric value with its probability mass and lattice count."""

    value: MetricValue
    mass: Fraction
    count: int


@dataclass(frozen=True)
class MetricPmf:
    """Exact pmf of a metric over a (p, n) slice, entries ascending by value."""

    metric_id: str
    p: int
    n: int
    entries: Tuple[MetricEntry, ...]
    undefined_mass: Fraction
    undefined_count: int
    benefits: Optional[BenefitMatrix] = None

    @property
    def defined_mass(self) -> Fraction:
        return sum((e.mass for e in self.entries), Fraction(0))

    @property
    def total_mass(self) -> Fraction:
        return self.defined_mass + self.undefined_mass

    def count_of(self, value: MetricValue) -> int:
        """Lattice points taking exactly this value (0 when never attained)."""
        for entry in self.entries:
            if entry.value == value:
                return entry.count
        return 0

    def map_value(self) -> MetricValue:
        """Highest-mass defined value; ties break toward the smaller value."""
        best: Optional[MetricEntry] = None
        for entry in self.entries:
            if best is None or entry.mass > best.mass:
                best = entry
        if best is None:
            raise DomainError(f"{self.metric_id} pmf has no defined values")
        return best.value

    def display_floats(self) -> List[float]:
        """Display floats of the defined entries, in entry order."""
        return [render_float(self.metric_id, e.value, self.p, self.n) for e in self.entries]


def metric_pmf(metric_id: str, joint: JointPmf, benefits: Optional[BenefitMatrix] = None) -> MetricPmf:
    """Push a joint slice pmf through a metric, grouping by exact value."""
    check_grid_guard(joint.p, joint.n)
    groups: Dict[MetricValue, List] = {}
    undefined_mass = Fraction(0)
    undefined_count = 0
    for a, mass_a in enumerate(joint.tp_margin):
        b_base = joint.n
        c = joint.p - a
        for d, mass_d in enumerate(joint.tn_margin):
            mass = mass_a * mass_d
            value = eval_counts(metric_id, a, b_base - d, c, d, benefits)
            if value.is_undefined:
                undefined_mass += mass
                undefined_count += 1
            else:
                slot = groups.get(value)
                if slot is None:
                    groups[value] = [mass, 1]
                else:
                    slot[0] += mass
                    slot[1] += 1
    entries = tuple(
        MetricEntry(value, mass, count)
        for value, (mass, count) in sorted(groups.items(), key=lambda kv: kv[0])
    )
    return MetricPmf(metric_id, joint.p, joint.n, entries, undefined_mass, undefined_count, benefits)


def multiplicity(
    metric_id: str, p: int, n: int, benefits: Optional[BenefitMatrix] = None
) -> MetricPmf:
    """Value counts over the whole (p, n) slice under the uniform joint.

    Each entry's count is the number of slice points attaining that
    value; its mass is count / ((p + 1) * (n + 1)).
    """
    return metric_pmf(metric_id, uniform_joint(p, n), benefits)


@dataclass(frozen=True, slots=True)
class Summary:
    """Float moments and narrowest credible interval of a metric pmf."""

    mean: float
    sd: float
    interval_low: float
    interval_high: float
    interval_mass: Fraction
    level: Fraction


def summarize(pmf: MetricPmf, level=Fraction(19, 20)) -> Summary:
    """Mean, sd and narrowest contiguous credible interval in display space.

    Rejects pmfs carrying undefined mass or values that display as
    infinities: moments would be meaningless there.  The interval is the
    narrowest contiguous run of entries holding at least ``level`` mass,
    leftmost on width ties.
    """
    level = Fraction(level)
    if not 0 < level < 1:
        raise DomainError(f"credible level must lie strictly inside (0, 1), got {level}")
    if pmf.undefined_count > 0:
        raise DomainError(f"{pmf.metric_id} pmf has undefined mass; no float summary")
    if not pmf.entries:
        raise DomainError(f"{pmf.metric_id} pmf is empty")
    for entry in pmf.entries:
        if not display_finite(pmf.metric_id, entry.value):
            raise DomainError(
                f"{pmf.metric_id} pmf reaches a value displaying as infinity; no float summary"
            )
    xs = pmf.display_floats()
    masses = [entry.mass for entry in pmf.entries]
    weights = [float(m) for m in masses]
    mean = math.fsum(w * x for w, x in zip(weights, xs))
    var = math.fsum(w * (x - mean) ** 2 for w, x in zip(weights, xs))
    sd = math.sqrt(max(var, 0.0))

    best: Optional[Tuple[float, int, int, Fraction]] = None
    acc = Fraction(0)
    j = 0
    for i in range(len(xs)):
        while acc < level and j < len(xs):
            acc += masses[j]
            j += 1
        if acc < level:
            break
        width = xs[j - 1] - xs[i]
        if best is None or width < best[0]:
            best = (width, i, j - 1, acc)
        acc -= masses[i]
    if best is None:
        raise DomainError(f"defined mass {pmf.defined_mass} is below the {level} level")
    _, lo_i, hi_i, mass = best
    return Summary(mean, sd, xs[lo_i], xs[hi_i], mass, level)


@dataclass(frozen=True, slots=True)
class Histogram:
    """Equal-width binning of a metric pmf over its display range.

    Bins are [edge_k, edge_{k+1}) with the final bin closed on the
    right; a value exactly on an interior edge lands in the upper bin.
    Undefined mass is reported alongside, never binned.
    """

    metric_id: str
    low: float
    high: float
    bin_masses: Tuple[Fraction, ...]
    bin_counts: Tuple[int, ...]
    undefined_mass: Fraction

    @property
    def bins(self) -> int:
        return len(self.bin_masses)

    def edges(self) -> List[float]:
        step = (self.high - self.low) / self.bins
        out = [self.low + k * step for k in range(self.bins)]
        out.append(self.high)
        return out


def histogram(pmf: MetricPmf, bins: int) -> Histogram:
    """Bin a metric pmf's display floats into equal-width bins."""
    if bins <= 0:
        raise DomainError(f"bins must be positive, got {bins}")
    rng = display_range(pmf.metric_id, pmf.p, pmf.n, pmf.benefits)
    if rng is None:
        raise DomainError(f"{pmf.metric_id} has no display range to bin over")
    low, high = rng
    if not high > low:
        raise DomainError(f"degenerate display range [{low}, {high}]")
    lo_f, hi_f = Fraction(low), Fraction(high)
    span = hi_f - lo_f
    bin_masses = [Fraction(0) for _ in range(bins)]
    bin_counts = [0 for _ in range(bins)]
    for entry, x in zip(pmf.entries, pmf.display_floats()):
        if not display_finite(pmf.metric_id, entry.value):
            raise DomainError(
                f"{pmf.metric_id} pmf reaches a value displaying as infinity; cannot bin"
            )
        # Fraction(float) is exact, so edge hits index exactly
        idx = math.floor((Fraction(x) - lo_f) * bins / span)
        idx = min(max(idx, 0), bins - 1)
        bin_masses[idx] += entry.mass
        bin_counts[idx] += entry.count
    return Histogram(pmf.metric_id, low, high, tuple(bin_masses), tuple(bin_counts), pmf.undefined_mass)

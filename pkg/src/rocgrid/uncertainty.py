"""Exact posterior-predictive distributions over future confusion matrices.

An observed matrix splits into independent TP and TN margins: future
true positives among p new real positives follow either a plug-in
binomial (rates fixed at the observed ones) or a beta-binomial
posterior predictive under a beta prior on each rate.  The joint over
(a, d) factorizes as the product of the two margins.

All masses are exact rationals.  Beta-binomial evaluation uses rising
factorials, B(alpha + k, beta + m - k) / B(alpha, beta) =
rf(alpha, k) * rf(beta, m - k) / rf(alpha + beta, m), which is rational
for any positive rational shapes, so pmfs sum to exactly one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, GuardError
from .matrices import ConfusionMatrix

__all__ = [
    "GRID_GUARD",
    "BetaPrior",
    "UNIFORM_PRIOR",
    "binomial_pmf",
    "beta_binomial_pmf",
    "posterior_params",
    "JointPmf",
    "joint_predictive",
    "uniform_joint",
    "marginals",
    "mc_oracle",
]

# largest p*n for materialized joint grids / metric distributions
GRID_GUARD = 10**6

BINOMIAL = "binomial"
BETA_BINOMIAL = "beta-binomial"
MODELS = (BINOMIAL, BETA_BINOMIAL)


@dataclass(frozen=True, slots=True)
class BetaPrior:
    """Beta(u, v) prior on a rate; shapes are positive rationals."""

    u: Fraction
    v: Fraction

    def __post_init__(self) -> None:
        if self.u <= 0 or self.v <= 0:
            raise DomainError(f"beta prior shapes must be positive, got ({self.u}, {self.v})")

    @staticmethod
    def of(u, v) -> "BetaPrior":
        return BetaPrior(Fraction(u), Fraction(v))


UNIFORM_PRIOR = BetaPrior(Fraction(1), Fraction(1))


def _check_trial(name: str, value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {value!r}")
    return value


def binomial_pmf(k: int, m: int, theta) -> Fraction:
    """P(K = k) for K ~ Binomial(m, theta), exact for rational theta."""
    _check_trial("m", m)
    theta = Fraction(theta)
    if not 0 <= theta <= 1:
        raise DomainError(f"theta must lie in [0, 1], got {theta}")
    if k < 0 or k > m:
        return Fraction(0)
    # 0^0 = 1 at the endpoints
    return math.comb(m, k) * theta**k * (1 - theta) ** (m - k)


def _rising(x: Fraction, count: int) -> Fraction:
    out = Fraction(1)
    for i in range(count):
        out *= x + i
    return out


def beta_binomial_pmf(k: int, m: int, alpha, beta) -> Fraction:
    """P(K = k) for K ~ BetaBinomial(m, alpha, beta), exact rational."""
    _check_trial("m", m)
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha <= 0 or beta <= 0:
        raise DomainError(f"shapes must be positive, got ({alpha}, {beta})")
    if k < 0 or k > m:
        return Fraction(0)
    return (
        math.comb(m, k)
        * _rising(alpha, k)
        * _rising(beta, m - k)
        / _rising(alpha + beta, m)
    )


def posterior_params(
    obs: ConfusionMatrix,
    prior_tp: BetaPrior = UNIFORM_PRIOR,
    prior_tn: BetaPrior = UNIFORM_PRIOR,
) -> Tuple[BetaPrior, BetaPrior]:
    """Posterior beta shapes for the TP and TN rates given observed counts.

    TP side: Beta(u + tp, v + fn); TN side: Beta(u + tn, v + fp).
    """
    return (
        BetaPrior(prior_tp.u + obs.tp, prior_tp.v + obs.fn),
        BetaPrior(prior_tn.u + obs.tn, prior_tn.v + obs.fp),
    )


@dataclass(frozen=True)
class JointPmf:
    """Factorized exact joint pmf over slice points (a, d).

    ``tp_margin[a]`` is the mass of a future true positives (0..p) and
    ``tn_margin[d]`` of d future true negatives (0..n); independence
    makes mass(a, d) their product.
    """

    model: str
    p: int
    n: int
    obs: ConfusionMatrix
    tp_margin: Tuple[Fraction, ...]
    tn_margin: Tuple[Fraction, ...]
    prior_tp: Optional[BetaPrior] = None
    prior_tn: Optional[BetaPrior] = None

    def mass(self, a: int, d: int) -> Fraction:
        if not (0 <= a <= self.p and 0 <= d <= self.n):
            raise DomainError(f"point ({a}, {d}) outside the (p={self.p}, n={self.n}) slice")
        return self.tp_margin[a] * self.tn_margin[d]

    def grid(self) -> List[Tuple[int, int, Fraction]]:
        """Materialized (a, d, mass) triples, row-major; guarded by GRID_GUARD."""
        check_grid_guard(self.p, self.n)
        return [
            (a, d, ta * td)
            for a, ta in enumerate(self.tp_margin)
            for d, td in enumerate(self.tn_margin)
        ]

    def tp_tail_mass(self, rate_threshold) -> Fraction:
        """Total mass with a/p >= the given rate threshold."""
        if self.p == 0:
            raise DomainError("tail mass over an empty positive margin")
        t = Fraction(rate_threshold)
        return sum(
            (mass for a, mass in enumerate(self.tp_margin) if Fraction(a, self.p) >= t),
            Fraction(0),
        )


def check_grid_guard(p: int, n: int) -> None:
    if p * n > GRID_GUARD:
        raise GuardError(
            f"slice {p} x {n} exceeds the {GRID_GUARD} point guard for materialized grids"
        )


def joint_predictive(
    model: str,
    obs: ConfusionMatrix,
    p: int,
    n: int,
    prior_tp: BetaPrior = UNIFORM_PRIOR,
    prior_tn: BetaPrior = UNIFORM_PRIOR,
) -> JointPmf:
    """Joint predictive pmf over the (p, n) slice given an observed matrix.

    model "binomial" plugs in the observed rates (a future margin with
    trials needs the matching observed margin to be non-empty);
    "beta-binomial" integrates the beta posteriors.
    """
    _check_trial("p", p)
    _check_trial("n", n)
    if model == BINOMIAL:
        if (p > 0 and obs.pos == 0) or (n > 0 and obs.neg == 0):
            raise DomainError("binomial model needs observed positives and negatives")
        theta_tp = Fraction(obs.tp, obs.pos) if obs.pos else Fraction(0)
        theta_tn = Fraction(obs.tn, obs.neg) if obs.neg else Fraction(0)
        tp_margin = tuple(binomial_pmf(a, p, theta_tp) for a in range(p + 1))
        tn_margin = tuple(binomial_pmf(d, n, theta_tn) for d in range(n + 1))
        return JointPmf(model, p, n, obs, tp_margin, tn_margin)
    if model == BETA_BINOMIAL:
        post_tp, post_tn = posterior_params(obs, prior_tp, prior_tn)
        tp_margin = tuple(beta_binomial_pmf(a, p, post_tp.u, post_tp.v) for a in range(p + 1))
        tn_margin = tuple(beta_binomial_pmf(d, n, post_tn.u, post_tn.v) for d in range(n + 1))
        return JointPmf(model, p, n, obs, tp_margin, tn_margin, prior_tp, prior_tn)
    raise DomainError(f"unknown model {model!r}; expected one of {MODELS}")


def uniform_joint(p: int, n: int) -> JointPmf:
    """Uniform joint pmf over the (p, n) slice (every point equally likely)."""
    _check_trial("p", p)
    _check_trial("n", n)
    tp_margin = tuple(Fraction(1, p + 1) for _ in range(p + 1))
    tn_margin = tuple(Fraction(1, n + 1) for _ in range(n + 1))
    return JointPmf("uniform", p, n, ConfusionMatrix(0, 0, 0, 0), tp_margin, tn_margin)


def marginals(
    joint: JointPmf,
) -> Tuple[List[Tuple[Fraction, Fraction]], List[Tuple[Fraction, Fraction]]]:
    """(tpr, mass) and (fpr, mass) lists, rates ascending.

    The fpr marginal re-indexes the TN margin by b = n - d.  Slices with
    p = 0 or n = 0 have no rate for the empty margin.
    """
    if joint.p == 0 or joint.n == 0:
        raise DomainError("rate marginals need non-empty future margins")
    tpr = [(Fraction(a, joint.p), mass) for a, mass in enumerate(joint.tp_margin)]
    fpr = [(Fraction(b, joint.n), joint.tn_margin[joint.n - b]) for b in range(joint.n + 1)]
    return tpr, fpr


def mc_oracle(
    model: str,
    obs: ConfusionMatrix,
    p: int,
    n: int,
    draws: int,
    seed: int,
    prior_tp: BetaPrior = UNIFORM_PRIOR,
    prior_tn: BetaPrior = UNIFORM_PRIOR,
) -> Dict[Tuple[int, int], int]:
    """Seeded Monte-Carlo counts over slice points; deterministic per seed.

    Draws (a, d) pairs from the same generative model as
    :func:`joint_predictive` and returns occurrence counts keyed by
    (a, d).  Intended as an independent oracle for the exact pmfs.
    """
    _check_trial("p", p)
    _check_trial("n", n)
    if draws <= 0:
        raise DomainError("draws must be positive")
    rng = np.random.default_rng(seed)
    if model == BINOMIAL:
        if obs.pos == 0 or obs.neg == 0:
            raise DomainError("binomial model needs observed positives and negatives")
        a_draws = rng.binomial(p, obs.tp / obs.pos, size=draws)
        d_draws = rng.binomial(n, obs.tn / obs.neg, size=draws)
    elif model == BETA_BINOMIAL:
        post_tp, post_tn = posterior_params(obs, prior_tp, prior_tn)
        theta_tp = rng.beta(float(post_tp.u), float(post_tp.v), size=draws)
        theta_tn = rng.beta(float(post_tn.u), float(post_tn.v), size=draws)
        a_draws = rng.binomial(p, theta_tp)
        d_draws = rng.binomial(n, theta_tn)
    else:
        raise DomainError(f"unknown model {model!r}; expected one of {MODELS}")
    counts: Dict[Tuple[int, int], int] = {}
    for a, d in zip(a_draws.tolist(), d_draws.tolist()):
        key = (a, d)
        counts[key] = counts.get(key, 0) + 1
    return counts

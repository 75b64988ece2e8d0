"""Loss channels on photon-number distributions and heralding inference.

A transmission eta acts on counting statistics as binomial thinning: each
photon survives independently with probability eta, so

    p'(N) = sum_{N' >= N}  C(N', N) eta^N (1-eta)^(N'-N) p(N').

Thinning composes multiplicatively in eta, maps the mean to eta*mean and the
variance to eta^2 V + eta(1-eta)*mean, and leaves g2 unchanged.

The heralding scenario: a twin beam with perfectly correlated photon numbers,
one beam monitored by a detector, the other sent to the sample. Loss before
the sample narrows what the sample sees (conditioning then thinning); loss in
front of the detector instead degrades what the detection tells us, handled
by Bayes' rule with the binomial detection likelihood

    p(N_det | N) = C(N, N_det) eta^N_det (1-eta)^(N-N_det).

A bucket detector only reports "at least one photon"; its posterior is the
detection-probability-weighted mixture over N_det >= 1.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .states import (
    PdcTwinBeam,
    PhotonDistribution,
    delta_distribution,
    geometric_n_max,
    pdc_marginal_pmf,
)


@dataclass(frozen=True)
class LossChannel:
    """Linear loss with transmissivity eta, acting as binomial thinning."""

    eta: float

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"transmissivity must lie in [0, 1], got {self.eta!r}")


class DetectorKind(enum.Enum):
    NUMBER_RESOLVING = "number-resolving"
    BUCKET = "bucket"


@dataclass(frozen=True)
class DetectorModel:
    kind: DetectorKind
    efficiency: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError(f"efficiency must lie in [0, 1], got {self.efficiency!r}")


def _thinning_matrix(n_max: int, eta: float) -> np.ndarray:
    """B[k, n] = P(k of n photons survive) = Binomial(n, eta) pmf at k."""
    k = np.arange(n_max + 1)[:, None]
    n = np.arange(n_max + 1)[None, :]
    return stats.binom.pmf(k, n, eta)


def apply_loss(d: PhotonDistribution, channel: LossChannel) -> PhotonDistribution:
    """Binomial thinning of a count distribution; support length unchanged."""
    if channel.eta == 1.0:
        return d
    thinned = _thinning_matrix(d.n_max, channel.eta) @ d.pmf
    return PhotonDistribution(thinned)


def condition_probe_number_resolving(state: PdcTwinBeam, n_det: int,
                                     probe_loss: LossChannel) -> PhotonDistribution:
    """Probe statistics after an ideal N_det count, with loss before the sample.

    Perfect twin-beam correlation plus a perfect counter pins the probe at
    exactly n_det photons; thinning then gives Binomial(n_det, eta). The
    sample can never see more than n_det photons.
    """
    if n_det < 0:
        raise ValueError("detected photon number must be >= 0")
    return apply_loss(delta_distribution(n_det), probe_loss)


def _bucket_conditioned_pmf(epsilon: float) -> PhotonDistribution:
    # p(N | at least one) = (1-eps) eps^(N-1) for N >= 1
    if not 0.0 <= epsilon < 1.0:
        raise ValueError(f"epsilon must satisfy 0 <= eps < 1, got {epsilon!r}")
    n_max = geometric_n_max(epsilon) + 1
    p = np.zeros(n_max + 1)
    n = np.arange(1, n_max + 1)
    p[1:] = (1.0 - epsilon) * epsilon ** (n - 1)
    return PhotonDistribution(p)


def condition_probe_bucket(state: PdcTwinBeam,
                           probe_loss: LossChannel) -> PhotonDistribution:
    """Probe statistics after an ideal bucket click, with loss before the sample.

    The click only rules out N = 0, leaving p(N) = (1-eps) eps^(N-1) on
    N >= 1, which is then thinned.
    """
    return apply_loss(_bucket_conditioned_pmf(state.epsilon), probe_loss)


def detector_count_distribution(state: PdcTwinBeam,
                                detector_loss: LossChannel) -> PhotonDistribution:
    """Counts at the monitoring detector: the thinned twin-beam marginal."""
    return apply_loss(pdc_marginal_pmf(state), detector_loss)


def _detection_likelihood(n: np.ndarray, n_det: int, eta: float) -> np.ndarray:
    # p(N_det | N): binomial detection of N_det out of N photons
    return stats.binom.pmf(n_det, n, eta)


def posterior_number_resolving(state: PdcTwinBeam, n_det: int,
                               detector_loss: LossChannel) -> PhotonDistribution:
    """What an imperfect N_det count implies about the conjugate beam.

    Bayes over the geometric prior with the binomial likelihood; every photon
    the detector missed is still present, so the support starts at n_det and
    extends upward. Renormalized on the truncated support.
    """
    if n_det < 0:
        raise ValueError("detected photon number must be >= 0")
    eta = detector_loss.eta
    prior = pdc_marginal_pmf(state)
    if n_det > prior.n_max:
        raise ValueError(
            f"N_det = {n_det} lies beyond the truncated prior support "
            f"(n_max = {prior.n_max}): observation impossible at this epsilon"
        )
    weights = prior.pmf * _detection_likelihood(prior.support, n_det, eta)
    total = weights.sum()
    if total <= 0.0:
        raise ValueError(
            f"P(N_det = {n_det}) = 0 at eta = {eta}: observation impossible"
        )
    return PhotonDistribution(weights / total)


def posterior_bucket(state: PdcTwinBeam,
                     detector_loss: LossChannel) -> PhotonDistribution:
    """What an imperfect bucket click implies about the conjugate beam.

    Mixture of the number-resolving posteriors weighted by the probability
    of each N_det >= 1, i.e. conditioning on "any click at all". Unlike the
    probe-loss case the tail above 1 survives: missed photons still reached
    the sample.
    """
    eps, eta = state.epsilon, detector_loss.eta
    if eps == 0.0 or eta == 0.0:
        raise ValueError(
            f"bucket click impossible: eps = {eps}, eta = {eta} gives "
            "P(N_det >= 1) = 0"
        )
    counts = detector_count_distribution(state, detector_loss)
    p_click = 1.0 - counts.pmf[0]
    mix = np.zeros(counts.n_max + 1)
    for n_det in range(1, counts.n_max + 1):
        w = counts.pmf[n_det]
        if w == 0.0:
            continue
        post = posterior_number_resolving(state, n_det, detector_loss)
        mix[: post.n_max + 1] += w * post.pmf
    return PhotonDistribution(mix / p_click)


def min_detectable_absorption(n_sig: float, heralded: bool) -> float:
    """Smallest resolvable absorption coefficient at unit signal-to-noise.

    A coherent probe resolves alpha ~ n_sig^(-1/2); an ideal heralded
    single-photon stream removes the source shot noise and reaches
    alpha ~ n_sig^(-1).
    """
    if n_sig <= 0:
        raise ValueError(f"n_sig must be > 0, got {n_sig!r}")
    return 1.0 / n_sig if heralded else 1.0 / math.sqrt(n_sig)

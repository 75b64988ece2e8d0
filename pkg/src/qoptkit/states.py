"""Quantum-state models and their photon-counting observables.

Everything here is a small immutable value type plus pure functions:
photon-number distributions (Poisson for coherent states, geometric for the
marginal of a down-conversion twin beam), Gaussian probe states described by
their quadrature variances, and the second-order coherence diagnostics built
on top of them.

Conventions:
  quadratures   X = a' + a,  Y = i(a' - a),  so vacuum variance is 1 and
                V(X) * V(Y) >= 1 for any state (equality: pure Gaussian).
  theta         angle between the ANTIsqueezed principal axis and the coherent
                amplitude. theta=0 is the phase-squeezed orientation (optimal
                for phase sensing), theta=pi/2 is amplitude squeezed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

# Normalization slack tolerated on any stored pmf. The geometric truncation
# rule keeps the analytic tail under 1e-16 so that downstream conditional
# pmfs stay within 1e-12 total variation of untruncated enumeration with
# orders of magnitude to spare.
NORM_TOL = 1e-9
TAIL_MASS = 1e-16


@dataclass(frozen=True)
class PhotonDistribution:
    """Probability mass over photon number N = 0..n_max.

    pmf[N] is the probability of counting N photons. Entries are stored
    unrenormalized (truncation tail simply missing), so the sum may fall
    short of 1 by up to the tail bound.
    """

    pmf: np.ndarray
    n_max: int = field(default=-1)

    def __post_init__(self):
        p = np.asarray(self.pmf, dtype=float)
        object.__setattr__(self, "pmf", p)
        if self.n_max < 0:
            object.__setattr__(self, "n_max", len(p) - 1)
        if len(p) != self.n_max + 1:
            raise ValueError(f"pmf length {len(p)} does not match n_max={self.n_max}")
        if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
            raise ValueError("pmf entries must be finite probabilities in [0, 1]")
        s = float(p.sum())
        if abs(s - 1.0) > NORM_TOL:
            raise ValueError(f"pmf sums to {s!r}, outside 1 +- {NORM_TOL}")

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.n_max + 1)

    def __eq__(self, other):
        if not isinstance(other, PhotonDistribution):
            return NotImplemented
        return self.n_max == other.n_max and np.array_equal(self.pmf, other.pmf)


def delta_distribution(n: int) -> PhotonDistribution:
    """Deterministic count: all mass at photon number n."""
    if n < 0:
        raise ValueError("photon number must be >= 0")
    p = np.zeros(n + 1)
    p[n] = 1.0
    return PhotonDistribution(p)


@dataclass(frozen=True)
class PdcTwinBeam:
    """Parametric down-conversion twin beam, interaction strength epsilon.

    Both marginals share the geometric distribution p(N) = (1-eps)*eps^N and
    the joint state is perfectly photon-number correlated.
    """

    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError(
                "epsilon must satisfy 0 <= eps < 1: p(N) = (1-eps)*eps^N is "
                "unnormalizable at eps >= 1"
            )

    @property
    def mean_photons(self) -> float:
        return self.epsilon / (1.0 - self.epsilon)


@dataclass(frozen=True)
class NoonSpec:
    """An N-photon path-entangled state repeated M independent times."""

    n: int
    m: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("NOON photon number must be an integer >= 1")
        if self.m < 1:
            raise ValueError("repetition count must be an integer >= 1")


@dataclass(frozen=True)
class GaussianProbe:
    """Bright squeezed or coherent probe state.

    alpha   coherent amplitude, real and >= 0 (a global phase carries no
            observable content for anything computed here)
    v_sqz   squeezed quadrature variance, vacuum units
    v_anti  antisqueezed quadrature variance
    theta   angle between the antisqueezed axis and alpha (see module notes)
    """

    alpha: float
    v_sqz: float = 1.0
    v_anti: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0 (real amplitude convention)")
        if self.v_sqz <= 0 or self.v_anti <= 0:
            raise ValueError("quadrature variances must be > 0")
        # Uncertainty product V(X)*V(Y) >= 1; small slack for pure states
        # constructed as (v, 1/v) in floating point.
        if self.v_sqz * self.v_anti < 1.0 - 1e-12:
            raise ValueError(
                f"v_sqz*v_anti = {self.v_sqz * self.v_anti} violates the "
                "uncertainty product V(X)*V(Y) >= 1"
            )

    def amplitude_axis_variance(self) -> float:
        """Quadrature variance along the coherent amplitude direction."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        return self.v_anti * c * c + self.v_sqz * s * s


def coherent_pmf(mean_n: float, n_max: int | None = None) -> PhotonDistribution:
    """Poisson photon statistics of a coherent state: p(N) = e^-n n^N / N!.

    Default truncation n_max = max(32, ceil(mean + 12*sqrt(mean))) keeps the
    missing tail below 1e-12.
    """
    if mean_n < 0:
        raise ValueError("mean photon number must be >= 0")
    if n_max is None:
        n_max = max(32, math.ceil(mean_n + 12.0 * math.sqrt(mean_n)))
    p = stats.poisson.pmf(np.arange(n_max + 1), mean_n)
    return PhotonDistribution(p)


def pdc_marginal_pmf(state: PdcTwinBeam, n_max: int | None = None) -> PhotonDistribution:
    """Geometric marginal of a twin beam: p(N) = (1-eps)*eps^N, mean eps/(1-eps)."""
    eps = state.epsilon
    if n_max is None:
        n_max = geometric_n_max(eps)
    n = np.arange(n_max + 1)
    return PhotonDistribution((1.0 - eps) * eps**n)


def geometric_n_max(epsilon: float) -> int:
    # eps^n_max <= TAIL_MASS, so the truncated tail sum eps^(n_max+1) is under it
    if epsilon == 0.0:
        return 0
    return math.ceil(math.log(TAIL_MASS) / math.log(epsilon))


def distribution_moments(d: PhotonDistribution) -> tuple[float, float]:
    """(mean, variance) by direct moment sums over the stored support."""
    n = d.support
    mean = float(np.dot(n, d.pmf))
    var = float(np.dot(n * n, d.pmf)) - mean * mean
    return mean, var


def g2_self(d: PhotonDistribution) -> float:
    """Second-order coherence g2 = 1 + V(n)/<n>^2 - 1/<n>.

    Equivalently <n(n-1)>/<n>^2. Coherent light gives 1, thermal 2, a single
    photon 0.
    """
    mean, var = distribution_moments(d)
    if mean <= 0:
        raise ValueError("g2 undefined for zero-mean distribution: divides by <n>")
    return 1.0 + var / mean**2 - 1.0 / mean


class BunchingClass(enum.Enum):
    NONCLASSICAL_ANTIBUNCHED = "nonclassical-antibunched"
    CLASSICAL_ALLOWED = "classical-allowed"


def classify_bunching(g2_zero: float) -> BunchingClass:
    """Classical fields obey g2(0) >= 1; anything below is antibunched."""
    if g2_zero < 0:
        raise ValueError("g2 is a ratio of nonnegative moments, must be >= 0")
    if g2_zero < 1.0:
        return BunchingClass.NONCLASSICAL_ANTIBUNCHED
    return BunchingClass.CLASSICAL_ALLOWED


def gaussian_mean_photons(probe: GaussianProbe) -> float:
    """<n> = |alpha|^2 + (V(X) + V(Y) - 2)/4.

    The variance term is the population of the squeezed fluctuations; it is
    independent of theta.
    """
    return probe.alpha**2 + (probe.v_sqz + probe.v_anti - 2.0) / 4.0


def gaussian_photon_variance(probe: GaussianProbe) -> float:
    """V(n) = |alpha|^2 [V(X)cos^2(th) + V(Y)sin^2(th)] + [V(X)^2 + V(Y)^2 - 2]/8

    with V(X)=v_anti, V(Y)=v_sqz the principal-axis variances. For squeezed
    vacuum (alpha=0, pure) this reduces to 2(<n>^2 + <n>).
    """
    quad = probe.amplitude_axis_variance()
    return probe.alpha**2 * quad + (probe.v_sqz**2 + probe.v_anti**2 - 2.0) / 8.0


def bright_squeezed_g2(probe: GaussianProbe) -> float:
    """Bright-limit coherence g2 = 1 + (V_amp - 1)/<n>.

    V_amp is the quadrature variance along the amplitude axis, so amplitude
    squeezed light (theta=pi/2, v_sqz<1) is antibunched. Requires the bright
    gate |alpha|^2 >= 100*v_anti; the expansion drops terms of relative order
    V/|alpha|^2.
    """
    if probe.alpha**2 < 100.0 * probe.v_anti:
        raise ValueError(
            "bright-limit g2 needs |alpha|^2 >= 100*v_anti "
            f"(got |alpha|^2 = {probe.alpha**2}, v_anti = {probe.v_anti})"
        )
    return 1.0 + (probe.amplitude_axis_variance() - 1.0) / gaussian_mean_photons(probe)


@dataclass(frozen=True)
class EtpaCoherence:
    """Cross-coherence of a weak twin beam and its classical-bound check."""

    g2_cross: float
    classical_bound: float
    violates_cauchy_schwarz: bool


def etpa_cross_coherence(state: PdcTwinBeam) -> EtpaCoherence:
    """Cross-beam coherence g2_12 = 1/eps of the truncated pair state.

    Valid for eps <= 0.1 where the two-photon-pair amplitude is negligible
    and the state is well approximated by sqrt(1-eps)|00> + sqrt(eps)|11>.
    The classical Cauchy-Schwarz bound g2_12 <= sqrt(g2_11 * g2_22) is
    evaluated from the marginals of the same truncated state.
    """
    eps = state.epsilon
    if eps == 0.0:
        raise ValueError("g2_12 = 1/eps diverges at eps = 0")
    if eps > 0.1:
        raise ValueError(
            f"eps = {eps} > 0.1: the two-term truncation behind g2_12 = 1/eps "
            "is not valid"
        )
    g12 = 1.0 / eps
    marginal = PhotonDistribution(np.array([1.0 - eps, eps]))
    g11 = g2_self(marginal)
    bound = math.sqrt(g11 * g11)  # both marginals identical
    return EtpaCoherence(g12, bound, g12 > bound)

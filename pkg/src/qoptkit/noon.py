"""Path-entangled N-photon (NOON) phase sensing with single-arm loss.

The probe arm transmits with efficiency eta while the reference arm, state
preparation, and detection are ideal. Everything is driven by the single-shot
precision

    dphi_1 = sqrt((eta^-N + 1)/2) / N

which reduces to the Heisenberg value 1/N at eta=1. Repeating the state M
times with the same sample exposure n_sig = M*N/2 gives

    dphi_M = (1/(2*sqrt(n_sig))) * sqrt((eta^-N + 1)/N)

so the enhancement over the sample-power shot-noise limit,
E = sqrt(N/(eta^-N + 1)), is independent of the exposure. E has an interior
maximum in N for every eta < 1; the maximizing N solves

    N*ln(eta) + eta^N + 1 = 0

(the continuous stationarity condition), with the physical optimum being the
best integer near that root.

eta^-N overflows double precision already at modest N for small eta, so all
evaluations of eta^-N + 1 go through logaddexp.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import Axis, FigureDataset
from .limits import PowerConstraint, loss_bound, sql_sample

# Integer search never ranges past this; above it eta^-N either underflows
# the enhancement to 0 or the optimum is far beyond any plotted regime.
N_SEARCH_MAX = 200
ROOT_TOL = 1e-10


@dataclass(frozen=True)
class NoonLossReport:
    """Repeated-NOON precision budget at fixed sample exposure."""

    n: float
    eta: float
    delta_phi_single: float
    delta_phi_m: float
    enhancement: float
    m_repetitions: float

    @property
    def integer_repetitions(self) -> bool:
        """False when M = 2*n_sig/N is a real-valued idealization."""
        return abs(self.m_repetitions - round(self.m_repetitions)) < 1e-9


def _check_eta(eta: float, allow_one: bool) -> None:
    hi_ok = eta <= 1.0 if allow_one else eta < 1.0
    if not (0.0 < eta and hi_ok):
        bracket = "(0, 1]" if allow_one else "(0, 1)"
        raise ValueError(f"eta must lie in {bracket}, got {eta!r}")


def _check_n(n: float, minimum: int = 1) -> None:
    if n < minimum or abs(n - round(n)) > 1e-9:
        raise ValueError(f"N must be an integer >= {minimum}, got {n!r}")


def _log1p_eta_negn(n: float, eta: float) -> float:
    """log(eta^-N + 1), overflow-safe."""
    return float(np.logaddexp(-n * math.log(eta), 0.0))


def _exp_or_inf(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def noon_single_shot(n: float, eta: float) -> float:
    """One-state precision sqrt((eta^-N + 1)/2)/N; equals 1/N at eta=1."""
    _check_n(n)
    _check_eta(eta, allow_one=True)
    return _exp_or_inf(0.5 * (_log1p_eta_negn(n, eta) - math.log(2.0))) / n


def noon_enhancement(n: float, eta: float) -> float:
    """Precision gain over the shot-noise limit: E = sqrt(N/(eta^-N + 1)).

    Exposure-independent: both the repeated-NOON precision and the shot-noise
    limit scale as 1/sqrt(n_sig). E > 1 is beyond-classical operation.
    """
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n!r}")
    _check_eta(eta, allow_one=True)
    return math.exp(0.5 * (math.log(n) - _log1p_eta_negn(n, eta)))


def _delta_phi_m(n: float, eta: float, n_sig: float) -> float:
    # real-valued core shared by the report path and the smooth curves
    return _exp_or_inf(
        0.5 * (_log1p_eta_negn(n, eta) - math.log(n))
    ) / (2.0 * math.sqrt(n_sig))


def noon_repeated(n: float, eta: float, n_sig: float) -> NoonLossReport:
    """Budget report for M = 2*n_sig/N repetitions of an N-photon state.

    Requires n_sig >= N/2 so at least one full state fits the exposure. M is
    left real-valued; the report flags when it is not a whole number.
    """
    _check_n(n)
    _check_eta(eta, allow_one=True)
    if n_sig < n / 2.0:
        raise ValueError(
            f"n_sig = {n_sig} cannot complete one N={n} state: need n_sig >= N/2"
        )
    m = 2.0 * n_sig / n
    return NoonLossReport(
        n=float(n),
        eta=eta,
        delta_phi_single=noon_single_shot(n, eta),
        delta_phi_m=_delta_phi_m(n, eta, n_sig),
        enhancement=noon_enhancement(n, eta),
        m_repetitions=m,
    )


def noon_threshold_efficiency(n: int) -> float:
    """Efficiency above which an N-photon state beats shot noise: (N-1)^(-1/N).

    Solves E = 1. Minimized over N at N=5 (eta ~ 0.758). N=2 returns 1.0,
    meaning no lossy two-photon advantage exists; warned because the returned
    "threshold" cannot be exceeded.
    """
    _check_n(n, minimum=2)
    if n == 2:
        warnings.warn(
            "N=2 threshold is eta=1: a two-photon state never beats shot noise "
            "under any loss",
            stacklevel=2,
        )
        return 1.0
    return (n - 1.0) ** (-1.0 / n)


def _stationarity(n: float, log_eta: float) -> float:
    # f(N) = N ln(eta) + eta^N + 1, strictly decreasing from f(0) = 2
    return n * log_eta + math.exp(n * log_eta) + 1.0


def _bisect_to_residual(f, lo: float, hi: float, tol: float) -> float:
    """Bisection driven by the residual |f|, not the bracket width."""
    flo = f(lo)
    for _ in range(20000):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if abs(fmid) < tol:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    raise ArithmeticError("bisection failed to reach the residual tolerance")


def noon_optimal_n(eta: float) -> tuple[int, float, float]:
    """Best integer photon number per state at efficiency eta.

    Returns (n_opt, enhancement, root) where root solves the continuous
    stationarity condition to |f| < 1e-10 and n_opt is the enhancement-argmax
    over the integers bracketing it (ties to the smaller N, floor at 1).
    """
    _check_eta(eta, allow_one=False)
    log_eta = math.log(eta)
    f = lambda n: _stationarity(n, log_eta)
    hi = 1.0
    while f(hi) > 0:
        hi *= 2.0
        if hi > 2**40:
            raise ArithmeticError("failed to bracket the stationarity root")
    root = _bisect_to_residual(f, hi / 2.0 if hi > 1.0 else 0.0, hi, ROOT_TOL)
    lo_n = max(1, math.floor(root) - 1)
    hi_n = min(N_SEARCH_MAX, math.ceil(root) + 1)
    if lo_n > hi_n:
        # root beyond the search bound; enhancement still rises up to the
        # root, so the best admissible integer is the bound itself
        lo_n = hi_n = N_SEARCH_MAX
    best_n, best_e = lo_n, -1.0
    for cand in range(lo_n, hi_n + 1):
        e = noon_enhancement(cand, eta)
        if e > best_e:  # strict: equal values keep the smaller N
            best_n, best_e = cand, e
    return best_n, best_e, root


def noon_flux_requirement(n: float, target_sql_n_sig: float,
                          constraint: PowerConstraint = PowerConstraint.SAMPLE,
                          ) -> float:
    """Trial rate at which N-photon states match a shot-noise-limited flux.

    SAMPLE budgeting equates 1/(N*sqrt(M)) with the sample-power shot-noise
    limit at n_sig photons/s, giving M = 4*n_sig/N^2 trials/s. TOTAL budgeting
    compares at equal total flux n photons/s, giving M = n/N^2 (the form
    behind order-of-magnitude source-rate estimates).
    """
    _check_n(n)
    if target_sql_n_sig <= 0:
        raise ValueError("target photon rate must be > 0")
    if constraint is PowerConstraint.SAMPLE:
        return 4.0 * target_sql_n_sig / (n * n)
    if constraint is PowerConstraint.TOTAL:
        return target_sql_n_sig / (n * n)
    raise ValueError(f"unknown power constraint {constraint!r}")


def noon_precision_curve(eta: float, n_sig_grid) -> FigureDataset:
    """Best NOON precision vs sample exposure, with its reference lines.

    Below the kink at n_sig = n_opt/2 a single state with N = 2*n_sig (real-
    valued idealization) beats any repetition strategy; above it, repeating
    the optimal integer-N state wins. Both branches evaluate identically at
    the kink. Columns: delta_phi, n_state (the N in play), sql_sample and
    loss_bound references. The loss reference is reported as 0 at eta=1.
    """
    _check_eta(eta, allow_one=True)
    grid = np.asarray(n_sig_grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise ValueError("n_sig grid must be a nonempty 1-d array")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("n_sig grid must be positive and strictly ascending")
    if eta < 1.0:
        n_opt, _, root = noon_optimal_n(eta)
        kink = n_opt / 2.0
    else:
        n_opt, root = math.inf, math.inf  # lossless: bigger N always helps
        kink = math.inf
    dphi = np.empty_like(grid)
    n_state = np.empty_like(grid)
    for i, ns in enumerate(grid):
        if ns <= kink:
            n_state[i] = 2.0 * ns
        else:
            n_state[i] = n_opt
        dphi[i] = _delta_phi_m(n_state[i], eta, ns)
    sql = np.array([sql_sample(ns).delta_phi for ns in grid])
    if eta < 1.0:
        floor = np.array([
            loss_bound(ns, eta, PowerConstraint.SAMPLE).delta_phi for ns in grid
        ])
    else:
        floor = np.zeros_like(grid)
    return FigureDataset(
        figure_id="noon-precision-curve",
        axes=(Axis("n_sig", grid, "log"),),
        columns={
            "delta_phi": dphi,
            "n_state": n_state,
            "sql_sample": sql,
            "loss_bound": floor,
        },
        metadata={
            "eta": eta,
            "n_opt": None if math.isinf(n_opt) else int(n_opt),
            "stationarity_root": None if math.isinf(root) else root,
            "kink_n_sig": None if math.isinf(kink) else kink,
        },
    )

"""Quantum-limited optical phase metrology toolkit.

Precision bounds (shot-noise, Heisenberg, loss floors, Fisher-information
routes), photon-counting statistics and their transformation under loss,
NOON-state and squeezed-light strategy optimization, Bayesian heralding
inference, and seeded Monte-Carlo experiments that check the closed forms.
"""
from .conditioning import (
    DetectorKind,
    DetectorModel,
    LossChannel,
    apply_loss,
    condition_probe_bucket,
    condition_probe_number_resolving,
    detector_count_distribution,
    min_detectable_absorption,
    posterior_bucket,
    posterior_number_resolving,
)
from .dataset import Axis, FigureDataset, parse_csv, write_text_atomic
from .figures import (
    fig_compare,
    fig_conditional,
    fig_limits,
    fig_noon_loss,
    fig_squeezed_loss,
)
from .limits import (
    BoundFamily,
    PowerConstraint,
    PrecisionResult,
    diffraction_limit,
    dipole_scattering_fraction,
    heisenberg,
    loss_bound,
    loss_transition_n0,
    oct_coherence_length,
    oct_sensitivity,
    qfi_phase,
    qnl,
    signal_mode_amplitude,
    sql_sample,
    sql_total,
    squeezed_vacuum_crb,
)
from .montecarlo import (
    DEFAULT_SEED,
    SimConfig,
    SimReport,
    simulate_coherent_mz,
    simulate_heralded_absorption,
    simulate_hom,
    simulate_homodyne_squeezed,
    simulate_noon_fringe,
)
from .noon import (
    NoonLossReport,
    noon_enhancement,
    noon_flux_requirement,
    noon_optimal_n,
    noon_precision_curve,
    noon_repeated,
    noon_single_shot,
    noon_threshold_efficiency,
)
from .squeezed import (
    SqueezedBudgetReport,
    default_eta_grid,
    default_n_sig_grid,
    noon_vs_squeezed_grid,
    optimal_squeezing,
    optimal_v_sqz,
    squeezed_precision,
    squeezed_precision_budget,
    squeezing_photon_cost,
)
from .states import (
    BunchingClass,
    EtpaCoherence,
    GaussianProbe,
    NoonSpec,
    PdcTwinBeam,
    PhotonDistribution,
    bright_squeezed_g2,
    classify_bunching,
    coherent_pmf,
    delta_distribution,
    distribution_moments,
    etpa_cross_coherence,
    g2_self,
    gaussian_mean_photons,
    gaussian_photon_variance,
    geometric_n_max,
    pdc_marginal_pmf,
)

__version__ = "0.1.0"

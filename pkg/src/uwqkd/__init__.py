"""Simulator for entanglement-based (BBM92) quantum key distribution over
underwater optical channels.

The package is organized in layers:

- ``quantum``: dense 2x2/4x4 complex linear algebra, density-matrix checks,
  generic Kraus-map application.
- ``channels``: photon-loss and depolarizing Kraus sets, their two-photon
  composition, and closed-form output states.
- ``environment``: Beer-Lambert attenuation, ambient-light noise counts, and
  water-type / ambient-light presets.
- ``analysis``: closed-form QBER and secret key rate of the protocol.
- ``montecarlo``: stochastic photon-pair simulation used to cross-check the
  closed forms.
- ``cli``: parameter sweeps, secure-distance solvers, CSV output.
"""

from uwqkd.analysis import (
    ErrorBudget,
    PerformanceResult,
    binary_entropy,
    coincidence_probability,
    evaluate_link,
    false_detection_probability,
    kraus_error_probability,
    nonmax_error_probability,
    qber,
    qber_root,
    signal_error,
    skr,
)
from uwqkd.channels import (
    ChannelParams,
    DampedCoefficients,
    DampingParams,
    DepolarizedCoefficients,
    DepolarizingParams,
    bipartite_set,
    closed_form_damped,
    closed_form_depolarized,
    damping_kraus,
    depolarizing_kraus,
    make_channel_params,
    propagate,
    state_from_coefficients,
)
from uwqkd.environment import (
    CLEAR,
    COASTAL,
    SCENARIO_PRESETS,
    TURBID,
    WATER_PRESETS,
    AtmosphericScenario,
    DetectorParams,
    LinkConfig,
    WaterType,
    arm_efficiencies,
    depolarization_probabilities,
    irradiance,
    loss_probabilities,
    make_link,
    noise_counts_y0,
    scenario_preset,
    transmittance,
    water_preset,
)
from uwqkd.montecarlo import (
    InsufficientStatisticsError,
    SimConfig,
    SimResult,
    born_sample,
    measurement_probabilities,
    predicted_qber,
    simulate,
)
from uwqkd.quantum import (
    BASIS_LABELS,
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    KrausSet,
    apply_kraus,
    check_density_matrix,
    expectation,
    initial_state,
    tensor_product,
)

__version__ = "0.1.0"

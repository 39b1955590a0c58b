"""Stochastic photon-pair simulation of the protocol.

Each emitted pair is traced through detection, sifting, and bit
comparison:

1. Each arm registers a signal click with its efficiency and,
   independently, a noise click with probability y0 (the expected noise
   count per gate, valid as a probability only while y0 stays small; a
   guard rejects y0 > 0.1).
2. A coincidence needs a click of either kind on both arms.
3. Both parties draw a measurement basis uniformly; only matching bases
   survive sifting.
4. Signal-only rounds sample the joint outcome from the propagated
   state's projector probabilities in the shared basis, then each
   detector flips its bit independently. A noise click overrides that
   party's bit with a fair coin, which is what makes noise coincidences
   err at rate 1/2.
5. A sifted round counts as an error when the two bits disagree.

Modeling notes, kept in sync with the closed-form layer:

- The per-detector flip probability is derived from the pair-level
  detection error rate e_det as (1 - sqrt(1 - 2 e_det)) / 2, so that the
  probability of the pair's parity flipping equals e_det exactly.
- Rectilinear rounds of the bare source state are error-free for any
  degree of entanglement, while diagonal rounds carry the correlation
  loss; the simulator averages over both bases as the physical protocol
  does. ``predicted_qber`` is the matching basis-averaged expectation
  and is the right analytic comparator for simulation output. The
  single-basis closed form in ``analysis`` intentionally differs.

Determinism: packet k draws from a dedicated stream seeded by
(master_seed, k), so results are bit-identical for any worker count.
Packets are a batching device for variance estimation only; the pooled
estimate is errors/sifted over the whole run.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from uwqkd.channels import closed_form_damped, closed_form_depolarized, state_from_coefficients
from uwqkd.environment import (
    LinkConfig,
    arm_efficiencies,
    depolarization_probabilities,
    loss_probabilities,
    noise_counts_y0,
)
from uwqkd.quantum import check_density_matrix

__all__ = [
    "MAX_NOISE_PROBABILITY",
    "InsufficientStatisticsError",
    "SimConfig",
    "SimResult",
    "born_sample",
    "measurement_probabilities",
    "predicted_qber",
    "simulate",
]

MAX_NOISE_PROBABILITY = 0.1

_HADAMARD_PAIR = np.kron(
    np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0),
    np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0),
)


class InsufficientStatisticsError(RuntimeError):
    """Raised when a run produces no sifted coincidences to estimate from."""


@dataclass(frozen=True)
class SimConfig:
    """One simulation run: link operating point, source angle, and sizes."""

    link: LinkConfig
    beta: float
    n_packets: int = 10000
    photons_per_packet: int = 1000
    master_seed: int = 1

    def __post_init__(self):
        if self.n_packets < 1 or self.photons_per_packet < 1:
            raise ValueError("packet count and packet size must be at least 1")
        if not 0.0 <= self.beta <= np.pi / 4:
            raise ValueError(f"beta must lie in [0, pi/4], got {self.beta}")


@dataclass(frozen=True)
class SimResult:
    """Counts and the pooled QBER estimate with its binomial standard error."""

    coincidences: int
    sifted: int
    errors: int
    qber_estimate: float
    std_error: float
    per_packet_qber: tuple = field(repr=False, default=())


def measurement_probabilities(rho) -> tuple[np.ndarray, np.ndarray]:
    """Projector probabilities of a two-photon state in both shared bases.

    Returns (rect, diag) arrays over outcomes (00, 01, 10, 11), where 0/1
    encode H/V in the rectilinear basis and +/- in the diagonal one.
    """
    rho = check_density_matrix(rho, psd_tol=-1e-10)
    rect = np.clip(np.diag(rho).real, 0.0, None)
    diag_rho = _HADAMARD_PAIR @ rho @ _HADAMARD_PAIR
    diag = np.clip(np.diag(diag_rho).real, 0.0, None)
    return rect, diag


def born_sample(rho, basis: str, rand: float) -> int:
    """Sample a joint outcome index (0..3) from one measurement basis.

    ``rand`` is a uniform draw in [0, 1); outcome bit order is
    (photon A, photon B).
    """
    rect, diag = measurement_probabilities(rho)
    if basis == "rect":
        probs = rect
    elif basis == "diag":
        probs = diag
    else:
        raise ValueError(f"basis must be 'rect' or 'diag', got {basis!r}")
    cum = np.cumsum(probs)
    cum[-1] = 1.0
    return int(np.searchsorted(cum, rand, side="right"))


def _pair_flip_probability(e_det: float) -> float:
    # Independent per-detector flips at rate f give a pair parity error of
    # 2 f (1 - f); invert that so the parity error equals e_det.
    if not 0.0 <= e_det <= 0.5:
        raise ValueError(f"detection error rate must lie in [0, 1/2], got {e_det}")
    return 0.5 * (1.0 - np.sqrt(1.0 - 2.0 * e_det))


def _link_quantities(link: LinkConfig, beta: float):
    eta_a, eta_b = arm_efficiencies(link)
    y0 = noise_counts_y0(link)
    if y0 > MAX_NOISE_PROBABILITY:
        raise ValueError(
            f"noise count y0 = {y0:.3g} is too large to treat as a probability"
        )
    p_a, p_b = loss_probabilities(link)
    q_a, q_b = depolarization_probabilities(link)
    coeffs = closed_form_depolarized(closed_form_damped(beta, p_a, p_b), q_a, q_b)
    rho = state_from_coefficients(coeffs)
    return eta_a, eta_b, y0, rho


def predicted_qber(link: LinkConfig, beta: float) -> float:
    """Expected value of the simulator's QBER estimate at one operating point.

    Averages the rectilinear and diagonal signal error rates of the
    propagated state, applies the detector parity error, and weighs
    signal-only coincidences against noise-involved ones using the exact
    click algebra (independent signal and noise clicks per arm).
    """
    eta_a, eta_b, y0, rho = _link_quantities(link, beta)
    rect, diag = measurement_probabilities(rho)
    e_rect = float(rect[1] + rect[2])
    e_diag = float(diag[1] + diag[2])
    e_det = link.detector.e_det
    err_signal = e_det + (1.0 - 2.0 * e_det) * 0.5 * (e_rect + e_diag)

    p_det_a = eta_a + y0 - eta_a * y0
    p_det_b = eta_b + y0 - eta_b * y0
    p_coin = p_det_a * p_det_b
    if p_coin <= 0.0:
        raise ValueError("undefined operating point: no coincidences possible")
    p_signal_only = eta_a * (1.0 - y0) * eta_b * (1.0 - y0)
    return (err_signal * p_signal_only + 0.5 * (p_coin - p_signal_only)) / p_coin


def _run_packet(args):
    (entropy, index, n, eta_a, eta_b, y0, cum_rect, cum_diag, flip_p) = args
    rng = np.random.default_rng(np.random.SeedSequence(entropy=entropy, spawn_key=(index,)))
    u = rng.random((11, n))

    sig_a = u[0] < eta_a
    sig_b = u[1] < eta_b
    noise_a = u[2] < y0
    noise_b = u[3] < y0
    coincidence = (sig_a | noise_a) & (sig_b | noise_b)

    rect_round = u[4] < 0.5
    sifted = coincidence & (rect_round == (u[5] < 0.5))

    out_rect = np.searchsorted(cum_rect, u[6], side="right")
    out_diag = np.searchsorted(cum_diag, u[6], side="right")
    outcome = np.where(rect_round, out_rect, out_diag)

    bit_a = ((outcome >> 1) & 1) ^ (u[7] < flip_p)
    bit_b = (outcome & 1) ^ (u[8] < flip_p)
    bit_a = np.where(noise_a, u[9] < 0.5, bit_a)
    bit_b = np.where(noise_b, u[10] < 0.5, bit_b)

    errors = sifted & (bit_a != bit_b)
    return int(coincidence.sum()), int(sifted.sum()), int(errors.sum())


def simulate(cfg: SimConfig, n_jobs: int = 1) -> SimResult:
    """Run the full pair-by-pair simulation described in the module docstring."""
    eta_a, eta_b, y0, rho = _link_quantities(cfg.link, cfg.beta)
    rect, diag = measurement_probabilities(rho)
    cum_rect = np.cumsum(rect)
    cum_diag = np.cumsum(diag)
    cum_rect[-1] = cum_diag[-1] = 1.0
    flip_p = _pair_flip_probability(cfg.link.detector.e_det)

    jobs = [
        (cfg.master_seed, k, cfg.photons_per_packet, eta_a, eta_b, y0, cum_rect, cum_diag, flip_p)
        for k in range(cfg.n_packets)
    ]
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            packet_counts = list(pool.map(_run_packet, jobs, chunksize=64))
    else:
        packet_counts = [_run_packet(job) for job in jobs]

    coincidences = sum(c for c, _, _ in packet_counts)
    sifted = sum(s for _, s, _ in packet_counts)
    errors = sum(e for _, _, e in packet_counts)
    if sifted == 0:
        raise InsufficientStatisticsError(
            "no sifted coincidences; increase the sample size or the efficiencies"
        )
    estimate = errors / sifted
    std_error = float(np.sqrt(estimate * (1.0 - estimate) / sifted))
    per_packet = tuple(
        (e / s) if s > 0 else float("nan") for _, s, e in packet_counts
    )
    return SimResult(
        coincidences=coincidences,
        sifted=sifted,
        errors=errors,
        qber_estimate=estimate,
        std_error=std_error,
        per_packet_qber=per_packet,
    )

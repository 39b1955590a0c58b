"""Closed-form QBER and secret key rate of the entanglement-based protocol.

Error model, per sifted coincidence:

- channel error   P_kraus   = 1/2 - k1            (loss of D/A-basis correlation)
- detector error  e_det                            (pair-level parity error)
- source error    P_nonmax  = (1 - sin(2 beta))/2  (imperfect entanglement)

The channel and detector errors combine into a signal error
e_sig = e_det + (1 - 2 e_det) P_kraus, which then XOR-combines with the
source error into the false-detection probability. True coincidences
carry that error rate; noise coincidences are uncorrelated and
contribute errors at rate 1/2:

    QBER = (P_false_det * P_true + P_false / 2) / P_coincidence

The key rate after error correction (code rate R_c) and privacy
amplification is

    SKR = (P_coincidence / 2) * max(0, 1 - (1 + (1 - R_c)/h(0.11)) h(QBER))

which reaches zero exactly at the QBER where the bracket vanishes
(~0.11 for R_c = 0.5); ``qber_root`` computes that root by bisection
instead of hard-coding it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from uwqkd.channels import closed_form_damped, closed_form_depolarized
from uwqkd.environment import (
    LinkConfig,
    arm_efficiencies,
    depolarization_probabilities,
    loss_probabilities,
    noise_counts_y0,
)

__all__ = [
    "SECURITY_QBER_LIMIT",
    "ErrorBudget",
    "PerformanceResult",
    "binary_entropy",
    "coincidence_probability",
    "evaluate_link",
    "false_detection_probability",
    "kraus_error_probability",
    "nonmax_error_probability",
    "qber",
    "qber_root",
    "signal_error",
    "skr",
]

SECURITY_QBER_LIMIT = 0.11
DEFAULT_CODE_RATE = 0.5

_PROB_GUARD = 1e-12


@dataclass(frozen=True)
class ErrorBudget:
    """Intermediate error probabilities feeding one QBER value."""

    p_kraus: float
    p_nonmax: float
    e_sig: float
    p_false_det: float


@dataclass(frozen=True)
class PerformanceResult:
    """QBER, key rate, and coincidence statistics at one operating point."""

    qber: float
    skr: float
    p_coincidence: float
    p_true: float
    p_false: float
    budget: ErrorBudget


def coincidence_probability(eta_a: float, eta_b: float, y0: float) -> tuple[float, float, float]:
    """Split the coincidence probability into its true and false parts.

    P_true = eta_A eta_B; P_false = y0 (eta_A + eta_B) + y0^2.
    Returns (p_true, p_false, p_coincidence).
    """
    if eta_a < 0.0 or eta_b < 0.0 or y0 < 0.0:
        raise ValueError("efficiencies and noise counts must be non-negative")
    p_true = eta_a * eta_b
    p_false = y0 * (eta_a + eta_b) + y0 * y0
    return p_true, p_false, p_true + p_false


def kraus_error_probability(k1: float) -> float:
    """Channel error probability 1/2 - k1 from the state's corner entry.

    k1 outside [-1/2, 1/2] cannot come from a valid state and signals a
    broken upstream computation, so it is rejected.
    """
    if not -0.5 <= k1 <= 0.5:
        raise ValueError(f"corner coefficient k1 out of range [-1/2, 1/2]: {k1}")
    return 0.5 - k1


def nonmax_error_probability(beta: float) -> float:
    """Source error probability (1 - sin(2 beta)) / 2 from imperfect entanglement."""
    if not 0.0 <= beta <= math.pi / 4:
        raise ValueError(f"beta must lie in [0, pi/4], got {beta}")
    return (1.0 - math.sin(2.0 * beta)) / 2.0


def signal_error(e_det: float, p_kraus: float) -> float:
    """Combined channel-plus-detector error: e_det + (1 - 2 e_det) P_kraus."""
    if not 0.0 <= e_det <= 1.0 or not 0.0 <= p_kraus <= 1.0:
        raise ValueError("probabilities must lie in [0, 1]")
    return e_det + (1.0 - 2.0 * e_det) * p_kraus


def false_detection_probability(e_sig: float, p_nonmax: float) -> float:
    """XOR combination of signal and source errors (a bit flips iff exactly one occurs)."""
    if not 0.0 <= e_sig <= 1.0 or not 0.0 <= p_nonmax <= 1.0:
        raise ValueError("probabilities must lie in [0, 1]")
    return e_sig * (1.0 - p_nonmax) + (1.0 - e_sig) * p_nonmax


def qber(p_false_det: float, p_true: float, p_false: float) -> float:
    """Quantum bit error rate over all coincidences.

    True coincidences err at p_false_det, noise coincidences at 1/2.
    A zero coincidence probability leaves the QBER undefined.
    """
    p_coincidence = p_true + p_false
    if p_coincidence <= 0.0:
        raise ValueError("undefined operating point: coincidence probability is zero")
    value = (p_false_det * p_true + 0.5 * p_false) / p_coincidence
    if value < 0.0:
        if value < -_PROB_GUARD:
            raise ValueError(f"QBER fell below 0 by more than the numeric guard: {value}")
        return 0.0
    if value > 1.0:
        if value > 1.0 + _PROB_GUARD:
            raise ValueError(f"QBER exceeded 1 by more than the numeric guard: {value}")
        return 1.0
    return value


def binary_entropy(x: float) -> float:
    """Binary entropy in bits, with 0 log 0 taken as 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy argument must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _key_fraction(qber_value: float, code_rate: float) -> float:
    # Error rates past 1/2 disclose everything; clamping onto [0, 1/2]
    # keeps the entropy penalty maximal there instead of shrinking again.
    x = min(max(qber_value, 0.0), 0.5)
    h_limit = binary_entropy(SECURITY_QBER_LIMIT)
    return 1.0 - (1.0 + (1.0 - code_rate) / h_limit) * binary_entropy(x)


@functools.lru_cache(maxsize=None)
def qber_root(code_rate: float = DEFAULT_CODE_RATE) -> float:
    """QBER above which the key fraction is non-positive, bisected to 1e-10."""
    if not 0.0 < code_rate <= 1.0:
        raise ValueError(f"code rate must lie in (0, 1], got {code_rate}")
    lo, hi = 0.0, 0.5
    if _key_fraction(hi, code_rate) > 0.0:
        return hi
    while hi - lo > 1e-10:
        mid = (lo + hi) / 2.0
        if _key_fraction(mid, code_rate) > 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def skr(qber_value: float, p_coincidence: float, code_rate: float = DEFAULT_CODE_RATE) -> float:
    """Secret key rate in bits per pulse: (P_coincidence / 2) * max(0, key fraction)."""
    if not 0.0 < code_rate <= 1.0:
        raise ValueError(f"code rate must lie in (0, 1], got {code_rate}")
    if p_coincidence < 0.0:
        raise ValueError("coincidence probability must be non-negative")
    return (p_coincidence / 2.0) * max(0.0, _key_fraction(qber_value, code_rate))


def evaluate_link(
    cfg: LinkConfig, beta: float, code_rate: float = DEFAULT_CODE_RATE
) -> PerformanceResult:
    """Full pipeline: geometry -> channel coefficients -> QBER and SKR.

    The corner coefficient k1 comes from the closed forms rather than a
    full operator-product application; equality of the two routes is a
    standing test.
    """
    eta_a, eta_b = arm_efficiencies(cfg)
    y0 = noise_counts_y0(cfg)
    p_a, p_b = loss_probabilities(cfg)
    q_a, q_b = depolarization_probabilities(cfg)

    damped = closed_form_damped(beta, p_a, p_b)
    depolarized = closed_form_depolarized(damped, q_a, q_b)

    p_kraus = kraus_error_probability(depolarized.k1)
    p_nonmax = nonmax_error_probability(beta)
    e_sig = signal_error(cfg.detector.e_det, p_kraus)
    p_false_det = false_detection_probability(e_sig, p_nonmax)

    p_true, p_false, p_coincidence = coincidence_probability(eta_a, eta_b, y0)
    qber_value = qber(p_false_det, p_true, p_false)
    skr_value = skr(qber_value, p_coincidence, code_rate)

    return PerformanceResult(
        qber=qber_value,
        skr=skr_value,
        p_coincidence=p_coincidence,
        p_true=p_true,
        p_false=p_false,
        budget=ErrorBudget(
            p_kraus=p_kraus, p_nonmax=p_nonmax, e_sig=e_sig, p_false_det=p_false_det
        ),
    )

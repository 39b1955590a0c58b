"""Kraus models of the seawater polarization channels.

Each photon of the pair passes through two noise processes applied in a
fixed physical order: photon loss first (amplitude damping with loss
probability p and thermal parameter xi), depolarization second
(probability q spread evenly over the three Pauli flips). The two
processes do not commute, so the order matters and is pinned here.

For xi = 0 the amplitude-damping set reduces to

    K0 = [[1, 0], [0, sqrt(1 - p)]],   K1 = [[0, sqrt(p)], [0, 0]]

and the depolarizing set is

    L0 = sqrt(1 - q) I,  L1 = sqrt(q/3) X,  L2 = sqrt(q/3) Y,  L3 = sqrt(q/3) Z.

The two-photon source state has support only on the diagonal plus the
|HH><VV| corner, and both channels preserve that shape, so the full
16-operator products admit closed forms:

- after damping, the diagonal is (a0, b0, c0, d0) with the corner f0:
      a0 = cos^2(beta) + pA pB sin^2(beta)
      b0 = pA (1 - pB) sin^2(beta)
      c0 = (1 - pA) pB sin^2(beta)
      d0 = (1 - pA)(1 - pB) sin^2(beta)
      f0 = sqrt((1 - pA)(1 - pB)) cos(beta) sin(beta)

- the depolarizing stage then mixes the diagonal with per-arm keep/swap
  weights and rescales the corner:
      keep n(q) = 1 - 2q/3,  swap s(q) = 2q/3,  corner factor f(q) = 1 - 4q/3.

The keep/swap pair must sum to one (trace preservation forces it); the
weights are re-derived from the operator set itself in the test suite
rather than trusted, and the brute-force 16-operator application is the
standing oracle for both closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from uwqkd.quantum import (
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    KrausSet,
    apply_kraus,
)

__all__ = [
    "ChannelParams",
    "DampedCoefficients",
    "DampingParams",
    "DepolarizedCoefficients",
    "DepolarizingParams",
    "bipartite_set",
    "closed_form_damped",
    "closed_form_depolarized",
    "damping_kraus",
    "depolarizing_kraus",
    "make_channel_params",
    "propagate",
    "state_from_coefficients",
]


@dataclass(frozen=True)
class DampingParams:
    """Photon-loss probability p in [0, 1] and thermal parameter xi in [0, 1/2]."""

    p: float
    xi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"loss probability p must lie in [0, 1], got {self.p}")
        if not 0.0 <= self.xi <= 0.5:
            raise ValueError(f"thermal parameter xi must lie in [0, 1/2], got {self.xi}")


@dataclass(frozen=True)
class DepolarizingParams:
    """Depolarization probability q in [0, 1]."""

    q: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"depolarization probability q must lie in [0, 1], got {self.q}")


@dataclass(frozen=True)
class ChannelParams:
    """Per-arm loss and depolarization parameters for the photon pair."""

    damp_a: DampingParams
    damp_b: DampingParams
    dep_a: DepolarizingParams
    dep_b: DepolarizingParams


def make_channel_params(p_a, p_b, q_a, q_b, xi=0.0) -> ChannelParams:
    """Convenience constructor from bare probabilities (shared xi)."""
    return ChannelParams(
        damp_a=DampingParams(p=p_a, xi=xi),
        damp_b=DampingParams(p=p_b, xi=xi),
        dep_a=DepolarizingParams(q=q_a),
        dep_b=DepolarizingParams(q=q_b),
    )


class DampedCoefficients(NamedTuple):
    """Nonzero entries of the state after the loss stage (diagonal + corner)."""

    a0: float
    b0: float
    c0: float
    d0: float
    f0: float


class DepolarizedCoefficients(NamedTuple):
    """Nonzero entries of the state after the depolarizing stage."""

    a1: float
    b1: float
    c1: float
    d1: float
    k1: float


def damping_kraus(params: DampingParams) -> KrausSet:
    """Single-photon amplitude-damping Kraus set.

    Returns two operators for xi = 0 (pure loss) and four otherwise, the
    extra pair accounting for thermal excitation back into the upper
    state. Zero operators at degenerate p are kept.
    """
    p, xi = params.p, params.xi
    sp = np.sqrt(p)
    sq = np.sqrt(1.0 - p)
    cold = np.sqrt(1.0 - xi)
    k0 = cold * np.array([[1.0, 0.0], [0.0, sq]], dtype=complex)
    k1 = cold * np.array([[0.0, sp], [0.0, 0.0]], dtype=complex)
    if xi == 0.0:
        return KrausSet([k0, k1])
    hot = np.sqrt(xi)
    k2 = hot * np.array([[0.0, 0.0], [sp, 0.0]], dtype=complex)
    k3 = hot * np.array([[sq, 0.0], [0.0, 1.0]], dtype=complex)
    return KrausSet([k0, k1, k2, k3])


def depolarizing_kraus(params: DepolarizingParams) -> KrausSet:
    """Single-photon depolarizing Kraus set {sqrt(1-q) I, sqrt(q/3) X/Y/Z}."""
    q = params.q
    keep = np.sqrt(1.0 - q)
    flip = np.sqrt(q / 3.0)
    return KrausSet([keep * IDENTITY_2, flip * PAULI_X, flip * PAULI_Y, flip * PAULI_Z])


def bipartite_set(set_a: KrausSet, set_b: KrausSet) -> KrausSet:
    """All pairwise tensor products A_i (x) B_j in (i, j) lexicographic order."""
    if set_a.dim != 2 or set_b.dim != 2:
        raise ValueError("bipartite_set expects two single-photon (2x2) sets")
    return KrausSet([np.kron(a, b) for a in set_a for b in set_b])


def propagate(rho, params: ChannelParams) -> np.ndarray:
    """Send a two-photon state through both arms: loss first, then depolarization."""
    damp = bipartite_set(damping_kraus(params.damp_a), damping_kraus(params.damp_b))
    dep = bipartite_set(depolarizing_kraus(params.dep_a), depolarizing_kraus(params.dep_b))
    return apply_kraus(apply_kraus(rho, damp), dep)


def closed_form_damped(beta: float, p_a: float, p_b: float) -> DampedCoefficients:
    """Closed-form output of the xi = 0 loss stage on the source state."""
    if not 0.0 <= beta <= np.pi / 4:
        raise ValueError(f"beta must lie in [0, pi/4], got {beta}")
    DampingParams(p=p_a)
    DampingParams(p=p_b)
    t_cap_a = 1.0 - p_a
    t_cap_b = 1.0 - p_b
    c2 = np.cos(beta) ** 2
    s2 = np.sin(beta) ** 2
    return DampedCoefficients(
        a0=c2 + p_a * p_b * s2,
        b0=p_a * t_cap_b * s2,
        c0=t_cap_a * p_b * s2,
        d0=t_cap_a * t_cap_b * s2,
        f0=np.sqrt(t_cap_a) * np.sqrt(t_cap_b) * np.cos(beta) * np.sin(beta),
    )


def closed_form_depolarized(
    damped: DampedCoefficients, q_a: float, q_b: float
) -> DepolarizedCoefficients:
    """Closed-form output of the depolarizing stage on a damped state.

    Diagonal entries mix with keep/swap weights (1 - 2q/3, 2q/3) per arm;
    the corner picks up a factor (1 - 4q/3) per arm. See the module
    docstring for why the keep weight is 1 - 2q/3.
    """
    DepolarizingParams(q=q_a)
    DepolarizingParams(q=q_b)
    n_a, s_a = 1.0 - 2.0 * q_a / 3.0, 2.0 * q_a / 3.0
    n_b, s_b = 1.0 - 2.0 * q_b / 3.0, 2.0 * q_b / 3.0
    f_a = 1.0 - 4.0 * q_a / 3.0
    f_b = 1.0 - 4.0 * q_b / 3.0
    a0, b0, c0, d0, f0 = damped
    return DepolarizedCoefficients(
        a1=n_a * n_b * a0 + n_a * s_b * b0 + s_a * n_b * c0 + s_a * s_b * d0,
        b1=n_a * s_b * a0 + n_a * n_b * b0 + s_a * s_b * c0 + s_a * n_b * d0,
        c1=s_a * n_b * a0 + s_a * s_b * b0 + n_a * n_b * c0 + n_a * s_b * d0,
        d1=s_a * s_b * a0 + s_a * n_b * b0 + n_a * s_b * c0 + n_a * n_b * d0,
        k1=f_a * f_b * f0,
    )


def state_from_coefficients(coeffs) -> np.ndarray:
    """Assemble the 4x4 state from (diag..., corner) coefficients.

    Accepts either coefficient tuple type; the last field is the
    |HH><VV| corner, the first four the diagonal.
    """
    a, b, c, d, corner = coeffs
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = a, b, c, d
    rho[0, 3] = rho[3, 0] = corner
    return rho

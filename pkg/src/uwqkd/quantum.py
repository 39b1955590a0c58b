"""Dense complex linear algebra for two-photon polarization states.

Everything here lives in fixed, tiny Hilbert spaces: single photons are
2x2 operators, photon pairs are 4x4. The bipartite basis order is
(HH, HV, VH, VV), with photon A always the left tensor factor. Matrices
are plain numpy complex128 arrays and are treated as immutable values:
nothing in this package mutates an array after it is created, so states
and channels can safely be shared across threads.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "BASIS_LABELS",
    "COMPLETENESS_TOL",
    "HERMITIAN_TOL",
    "IDENTITY_2",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "PSD_EIGENVALUE_TOL",
    "TRACE_TOL",
    "KrausSet",
    "apply_kraus",
    "check_density_matrix",
    "expectation",
    "initial_state",
    "tensor_product",
]

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_EIGENVALUE_TOL = -1e-12
COMPLETENESS_TOL = 1e-12

BASIS_LABELS = ("HH", "HV", "VH", "VV")

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def _as_square_complex(mat, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} entries must be finite")
    return arr


class KrausSet:
    """Ordered Kraus operators of one quantum channel.

    All operators must share a single square dimension and satisfy the
    completeness relation sum_j K_j^dag K_j = I to within 1e-12, which is
    exactly the condition for the represented map to be trace preserving.
    Zero operators are legal members (they arise at degenerate parameter
    values) and are kept so set sizes stay predictable.
    """

    __slots__ = ("operators",)

    def __init__(self, operators):
        ops = tuple(_as_square_complex(op, "Kraus operator") for op in operators)
        if not ops:
            raise ValueError("a Kraus set needs at least one operator")
        dim = ops[0].shape[0]
        if any(op.shape != (dim, dim) for op in ops):
            raise ValueError("all Kraus operators must share one dimension")
        total = sum(op.conj().T @ op for op in ops)
        defect = np.max(np.abs(total - np.eye(dim)))
        if defect > COMPLETENESS_TOL:
            raise ValueError(
                f"Kraus set violates completeness: |sum K^dag K - I|_max = {defect:.3e}"
            )
        self.operators = ops

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self) -> int:
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def __repr__(self) -> str:
        return f"KrausSet({len(self.operators)} operators, dim={self.dim})"


def initial_state(beta: float) -> np.ndarray:
    """Density matrix of the source state cos(beta)|HH> + sin(beta)|VV>.

    beta in [0, pi/4] sets the degree of entanglement: pi/4 gives the
    maximally entangled Bell state, 0 a product state.
    """
    if not 0.0 <= beta <= np.pi / 4:
        raise ValueError(f"beta must lie in [0, pi/4], got {beta}")
    psi = np.array([np.cos(beta), 0.0, 0.0, np.sin(beta)], dtype=complex)
    return np.outer(psi, psi.conj())


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two single-photon (2x2) operators.

    The first factor acts on photon A, matching the (HH, HV, VH, VV)
    basis order.
    """
    a = _as_square_complex(a, "left factor")
    b = _as_square_complex(b, "right factor")
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(
            f"tensor_product expects 2x2 factors, got {a.shape} and {b.shape}"
        )
    return np.kron(a, b)


def apply_kraus(rho, channel) -> np.ndarray:
    """Apply a channel to a state: rho -> sum_j K_j rho K_j^dag.

    ``channel`` may be a KrausSet or any iterable of equal-dimension
    square matrices; in the latter case completeness is validated first.
    """
    rho = _as_square_complex(rho, "state")
    if not isinstance(channel, KrausSet):
        channel = KrausSet(channel)
    if channel.dim != rho.shape[0]:
        raise ValueError(
            f"channel dimension {channel.dim} does not match state dimension {rho.shape[0]}"
        )
    out = np.zeros_like(rho)
    for op in channel:
        out += op @ rho @ op.conj().T
    return out


def expectation(rho, obs) -> float:
    """Expectation value Tr(rho * obs) of a Hermitian observable.

    The imaginary part (at most ~1e-12 for valid inputs) is discarded.
    """
    rho = _as_square_complex(rho, "state")
    obs = _as_square_complex(obs, "observable")
    if np.max(np.abs(obs - obs.conj().T)) > HERMITIAN_TOL:
        raise ValueError("observable must be Hermitian")
    if obs.shape != rho.shape:
        raise ValueError("observable and state dimensions differ")
    return float(np.trace(rho @ obs).real)


def check_density_matrix(mat, psd_tol: float = PSD_EIGENVALUE_TOL) -> np.ndarray:
    """Validate Hermiticity, unit trace, and positive semidefiniteness.

    Returns the validated array; raises ValueError naming the violated
    property otherwise. ``psd_tol`` is the most negative eigenvalue
    accepted (slightly looser tolerances are appropriate for states that
    went through long operator chains).
    """
    mat = _as_square_complex(mat, "density matrix")
    herm_defect = np.max(np.abs(mat - mat.conj().T))
    if herm_defect > HERMITIAN_TOL:
        raise ValueError(f"not Hermitian: |rho - rho^dag|_max = {herm_defect:.3e}")
    trace_defect = abs(np.trace(mat) - 1.0)
    if trace_defect > TRACE_TOL:
        raise ValueError(f"trace differs from 1 by {trace_defect:.3e}")
    min_eig = float(np.linalg.eigvalsh(mat)[0])
    if min_eig < psd_tol:
        raise ValueError(f"not positive semidefinite: min eigenvalue {min_eig:.3e}")
    return mat

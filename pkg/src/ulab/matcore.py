"""Dense linear algebra for two-qubit density matrices.

Every eigendecomposition routes through one cyclic Jacobi kernel (compiled or
pure Python, see ``backend``). Matrices here are at most 8x8, where Jacobi is
machine-precision accurate and needs nothing beyond numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import BadDim, BadIndex, NonHermitianInput, NotPSD

HERMITICITY_TOL = 1e-10
# Eigenvalues in [PSD_CLIP, 0) are treated as rounding noise and clipped to 0.
PSD_CLIP = -1e-10

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass
class EigenDecomposition:
    """Eigenvalues ascending; eigenvectors[:, k] belongs to eigenvalues[k]."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def pauli(index: int) -> np.ndarray:
    """Pauli matrix for index 1, 2, 3 (x, y, z)."""
    if index not in (1, 2, 3):
        raise BadIndex(f"Pauli index must be 1, 2 or 3, got {index!r}")
    return _PAULI[index - 1].copy()


def _square(mat) -> np.ndarray:
    A = np.asarray(mat, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise BadDim(f"expected a square matrix, got shape {A.shape}")
    return A


def hermitian_eig(H) -> EigenDecomposition:
    """Jacobi eigendecomposition of a Hermitian matrix."""
    A = _square(H)
    if not np.isfinite(A).all():
        raise NonHermitianInput("matrix has non-finite entries")
    dev = float(np.abs(A - A.conj().T).max())
    if dev > HERMITICITY_TOL:
        raise NonHermitianInput(
            f"max |H - H^dag| = {dev:.3e} exceeds {HERMITICITY_TOL:.0e}"
        )
    w, V = backend.jacobi_eigh(A)
    return EigenDecomposition(w, V)


SQRT_EIG_FLOOR = 1e-14


def matrix_sqrt_psd(rho) -> np.ndarray:
    """Unique PSD square root of a PSD Hermitian matrix."""
    eig = hermitian_eig(rho)
    w = eig.eigenvalues
    if w[0] < PSD_CLIP:
        raise NotPSD(f"eigenvalue {w[0]:.3e} below clip threshold {PSD_CLIP:.0e}")
    # eigenvalues at solver-noise level are exact zeros; sqrt would amplify
    # their O(1e-16) garbage to O(1e-8)
    w = np.where(w < SQRT_EIG_FLOOR, 0.0, w)
    V = eig.eigenvectors
    S = (V * np.sqrt(w)) @ V.conj().T
    return (S + S.conj().T) / 2


def kron(a, b) -> np.ndarray:
    """Kronecker product (row-major qubit ordering, subsystem A first)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _two_qubit(rho) -> np.ndarray:
    A = _square(rho)
    if A.shape != (4, 4):
        raise BadDim(f"expected a 4x4 matrix, got shape {A.shape}")
    return A


def partial_trace(rho, keep: str) -> np.ndarray:
    """Trace out one qubit of a two-qubit matrix; keep is 'A' or 'B'."""
    R = _two_qubit(rho).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("aibi->ab", R)
    if keep == "B":
        return np.einsum("aiaj->ij", R)
    raise BadIndex(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(rho, on: str) -> np.ndarray:
    """Partial transpose of a two-qubit matrix on subsystem 'A' or 'B'."""
    R = _two_qubit(rho).reshape(2, 2, 2, 2)
    if on == "A":
        return R.transpose(2, 1, 0, 3).reshape(4, 4)
    if on == "B":
        return R.transpose(0, 3, 2, 1).reshape(4, 4)
    raise BadIndex(f"on must be 'A' or 'B', got {on!r}")

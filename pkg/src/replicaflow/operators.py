"""Replica-space operators and superoperator constructors.

Conventions used throughout the package:

* Qubit basis: index 0 is the ground state, index 1 the excited state, so the
  lowering operator is sigma = |0><1|.
* Replica ordering: replica 1 is the leftmost Kronecker factor; an operator
  acting on replica k of M is I^(k-1) (x) op (x) I^(M-k).
* Vectorization is row-major: element (i, j) of a dim x dim matrix maps to
  vector index i*dim + j, and vec(A rho B) = (A (x) B^T) vec(rho).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "SIGMA",
    "SIGMA_DAG",
    "PAULI_X",
    "PAULI_Z",
    "lowering_on_replica",
    "raising_on_replica",
    "operator_on_replica",
    "vectorize",
    "devectorize",
    "sandwich_super",
    "commutator_super",
    "anticommutator_super",
]

SIGMA = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_DAG = SIGMA.conj().T
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def operator_on_replica(op: np.ndarray, k: int, M: int) -> np.ndarray:
    """Embed a single-qubit operator on replica k of M (1-based, leftmost first)."""
    if not 1 <= k <= M:
        raise ValueError(f"replica index k={k} out of range 1..{M}")
    left = np.eye(2 ** (k - 1), dtype=complex)
    right = np.eye(2 ** (M - k), dtype=complex)
    return np.kron(np.kron(left, op), right)


def lowering_on_replica(k: int, M: int) -> np.ndarray:
    """sigma acting on replica k: maps the replica's excited state to ground."""
    return operator_on_replica(SIGMA, k, M)


def raising_on_replica(k: int, M: int) -> np.ndarray:
    return operator_on_replica(SIGMA_DAG, k, M)


def vectorize(A: np.ndarray) -> np.ndarray:
    """Row-major stacking of a square matrix into a vector."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A.reshape(-1)


def devectorize(v: np.ndarray) -> np.ndarray:
    """Inverse of vectorize; the length must be 4**M for some M >= 0."""
    v = np.asarray(v)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    dim = round(len(v) ** 0.5)
    if dim * dim != len(v) or dim & (dim - 1):
        raise ValueError(f"length {len(v)} is not a power of 4")
    return v.reshape(dim, dim)


def _check_square_pair(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"operator dimension mismatch: {A.shape} vs {B.shape}")


def sandwich_super(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix K with K vec(rho) = vec(A rho B)."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    _check_square_pair(A, B)
    return np.kron(A, B.T)


def commutator_super(H: np.ndarray) -> np.ndarray:
    """Matrix K with K vec(rho) = vec(H rho - rho H)."""
    H = np.asarray(H, dtype=complex)
    I = np.eye(H.shape[0], dtype=complex)
    return np.kron(H, I) - np.kron(I, H.T)


def anticommutator_super(A: np.ndarray) -> np.ndarray:
    """Matrix K with K vec(rho) = vec(A rho + rho A)."""
    A = np.asarray(A, dtype=complex)
    I = np.eye(A.shape[0], dtype=complex)
    return np.kron(A, I) + np.kron(I, A.T)

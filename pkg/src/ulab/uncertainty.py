"""Entropic uncertainty relations with quantum memory.

Observables P and Q act on side A (2x2 Hermitian), side B is the memory.
Conditional entropies are S(X|B) = S(rho after measuring X on A) - S(rho_B).
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from . import matcore, measures, serialize
from .errors import DegenerateObservable, DimMismatch, NonHermitianInput

OBSERVABLE_GAP_TOL = 1e-10


def _eigenbasis(K) -> np.ndarray:
    Km = np.asarray(K, dtype=complex)
    if Km.shape != (2, 2):
        raise DimMismatch(f"side-A observable must be 2x2, got {Km.shape}")
    dev = float(np.abs(Km - Km.conj().T).max())
    if dev > matcore.HERMITICITY_TOL:
        raise NonHermitianInput(f"observable not Hermitian: deviation {dev:.3e}")
    eig = matcore.hermitian_eig(Km)
    gap = abs(eig.eigenvalues[1] - eig.eigenvalues[0])
    if gap < OBSERVABLE_GAP_TOL:
        raise DegenerateObservable(f"eigenvalue gap {gap:.3e} below {OBSERVABLE_GAP_TOL:.0e}")
    return eig.eigenvectors


def measured_conditional_entropy(rho, K) -> float:
    """S(K|B) after a projective measurement of K on side A."""
    A = np.asarray(rho, dtype=complex)
    if A.shape != (4, 4):
        raise DimMismatch(f"expected a 4x4 state, got {A.shape}")
    V = _eigenbasis(K)
    I2 = np.eye(2, dtype=complex)
    post = np.zeros((4, 4), dtype=complex)
    for k in range(2):
        proj = np.outer(V[:, k], V[:, k].conj())
        P = matcore.kron(proj, I2)
        post += P @ A @ P
    s_b = measures.von_neumann_entropy(matcore.partial_trace(A, keep="B"))
    return float(measures.von_neumann_entropy(post) - s_b)


def complementarity(P, Q) -> float:
    """Largest overlap magnitude max_ij |<p_i|q_j>| between the eigenbases."""
    VP = _eigenbasis(P)
    VQ = _eigenbasis(Q)
    return float(np.abs(VP.conj().T @ VQ).max())


def berta_bound(rho, P, Q) -> float:
    """Memory-assisted lower bound -2 log2 c + S(A|B)."""
    A = np.asarray(rho, dtype=complex)
    c = complementarity(P, Q)
    s_ab = measures.von_neumann_entropy(A)
    s_b = measures.von_neumann_entropy(matcore.partial_trace(A, keep="B"))
    return float(-2 * math.log2(c) + s_ab - s_b)


def pati_bound(rho, P, Q) -> float:
    """Berta bound tightened by max(0, D_A - J_A)."""
    A = np.asarray(rho, dtype=complex)
    j_a = measures.classical_correlation_JA(A)
    d_a = max(0.0, measures.mutual_information(A) - j_a)
    return float(berta_bound(A, P, Q) + max(0.0, d_a - j_a))


@dataclass
class UncertaintyReport:
    s_pb: float
    s_qb: float
    c: float
    berta: float
    pati: float
    gap: float

    def as_dict(self) -> dict:
        return {
            "s_pb": self.s_pb,
            "s_qb": self.s_qb,
            "c": self.c,
            "berta": self.berta,
            "pati": self.pati,
            "gap": self.gap,
        }

    def to_json(self) -> str:
        return serialize.dumps_json(self.as_dict())


def uncertainty_gap(rho, P, Q) -> UncertaintyReport:
    """Both measured entropies, both bounds, and the slack above the tighter one."""
    A = np.asarray(rho, dtype=complex)
    s_pb = measured_conditional_entropy(A, P)
    s_qb = measured_conditional_entropy(A, Q)
    c = complementarity(P, Q)
    berta = berta_bound(A, P, Q)
    j_a = measures.classical_correlation_JA(A)
    d_a = max(0.0, measures.mutual_information(A) - j_a)
    pati = berta + max(0.0, d_a - j_a)
    return UncertaintyReport(
        s_pb=float(s_pb),
        s_qb=float(s_qb),
        c=float(c),
        berta=float(berta),
        pati=float(pati),
        gap=float(s_pb + s_qb - pati),
    )

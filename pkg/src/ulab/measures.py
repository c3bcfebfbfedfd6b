"""Quantumness and correlation measures for two-qubit states.

All entropies and information quantities use base-2 logarithms. Measures that
are nonnegative by theory are clipped at zero to absorb rounding noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import backend, matcore, nm, serialize, states
from .errors import BadDim, DimMismatch, NonHermitianInput, NotADistribution, NotPSD

_TINY = 1e-300
DEGENERACY_TOL = 1e-9


def shannon_entropy(p) -> float:
    """Base-2 entropy of a probability vector; zero entries contribute zero."""
    q = np.asarray(p, dtype=float).ravel()
    if q.size and q.min() < -1e-12:
        raise NotADistribution(f"negative probability {q.min():.3e}")
    s = q.sum()
    if abs(s - 1.0) > 1e-9:
        raise NotADistribution(f"probabilities sum to {s:.12g}, not 1")
    q = q[q > _TINY]
    return float(-(q * np.log2(q)).sum()) if q.size else 0.0


def von_neumann_entropy(rho) -> float:
    """S(rho) = -tr rho log2 rho via the eigenvalue spectrum."""
    w = matcore.hermitian_eig(rho).eigenvalues
    if w[0] < matcore.PSD_CLIP:
        raise NotPSD(f"negative eigenvalue {w[0]:.3e}")
    w = w[w > _TINY]
    return float(-(w * np.log2(w)).sum()) if w.size else 0.0


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def skew_information(rho, K) -> float:
    """Wigner-Yanase skew information -(1/2) tr [sqrt(rho), K]^2."""
    A = np.asarray(rho, dtype=complex)
    Km = np.asarray(K, dtype=complex)
    if A.shape != Km.shape:
        raise DimMismatch(f"state is {A.shape}, observable is {Km.shape}")
    dev = float(np.abs(Km - Km.conj().T).max())
    if dev > matcore.HERMITICITY_TOL:
        raise NonHermitianInput(f"observable not Hermitian: deviation {dev:.3e}")
    S = matcore.matrix_sqrt_psd(A)
    C = S @ Km - Km @ S
    return float(max(0.0, -0.5 * np.trace(C @ C).real))


def hellinger_check(rho, n) -> float:
    """Squared Hellinger distance between rho and K rho K for K = (n.sigma) x I.

    Equals the skew information of K since K squares to the identity; n is a
    Bloch direction and is normalized on the way in.
    """
    A = np.asarray(rho, dtype=complex)
    v = np.asarray(n, dtype=float).ravel()
    v = v / np.linalg.norm(v)
    K = matcore.kron(
        v[0] * matcore.pauli(1) + v[1] * matcore.pauli(2) + v[2] * matcore.pauli(3),
        np.eye(2, dtype=complex),
    )
    S = matcore.matrix_sqrt_psd(A)
    return float(1.0 - np.trace(S @ K @ S @ K).real)


def w_matrix(rho) -> np.ndarray:
    """3x3 overlap matrix w_ij = tr sqrt(rho) (sigma_i x I) sqrt(rho) (sigma_j x I)."""
    A = np.asarray(rho, dtype=complex)
    if A.shape != (4, 4):
        raise BadDim(f"expected 4x4, got {A.shape}")
    S = matcore.matrix_sqrt_psd(A)
    I2 = np.eye(2, dtype=complex)
    C = [S @ matcore.kron(matcore.pauli(i), I2) for i in (1, 2, 3)]
    W = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            val = np.trace(C[i] @ C[j]).real
            W[i, j] = val
            W[j, i] = val
    return W


def lqu(rho) -> float:
    """Local quantum uncertainty on side A: 1 minus the largest w eigenvalue."""
    W = w_matrix(rho)
    wmax = matcore.hermitian_eig(W).eigenvalues[-1]
    return float(max(0.0, 1.0 - wmax))


def optimal_local_observable(rho) -> np.ndarray:
    """Bloch axis n of the side-A observable attaining the LQU minimum.

    Ties in the top w eigenspace are broken toward the z axis, then x, then y,
    and the sign is fixed by the first sizable component.
    """
    W = w_matrix(rho)
    eig = matcore.hermitian_eig(W)
    wmax = eig.eigenvalues[-1]
    cols = [k for k in range(3) if eig.eigenvalues[k] >= wmax - DEGENERACY_TOL]
    Q = eig.eigenvectors[:, cols].real
    n = None
    for axis in (2, 0, 1):
        e = np.zeros(3)
        e[axis] = 1.0
        v = Q @ (Q.T @ e)
        if np.linalg.norm(v) > DEGENERACY_TOL:
            n = v / np.linalg.norm(v)
            break
    if n is None:
        n = Q[:, 0] / np.linalg.norm(Q[:, 0])
    for comp in n:
        if abs(comp) > 1e-12:
            if comp < 0:
                n = -n
            break
    return n


def xstate_w_diagonal(params: states.XStateParams) -> tuple[float, float, float]:
    """Closed-form diagonal (w11, w22, w33) of the w matrix of an X state.

    The off-diagonal entries vanish identically for this family, so these are
    the eigenvalues.
    """
    p = params.validate()

    def block(d1: float, d2: float, c: float):
        half_sum = (d1 + d2) / 2
        half_dif = (d1 - d2) / 2
        r = math.sqrt(half_dif * half_dif + c * c)
        lam_hi = max(half_sum + r, 0.0)
        lam_lo = max(half_sum - r, 0.0)
        if lam_lo < matcore.SQRT_EIG_FLOOR:
            # cancellation garbage below solver noise; sqrt would amplify it
            lam_lo = 0.0
        if c <= 1e-150:
            # diagonal block: sqrt is entrywise
            return math.sqrt(max(d1, 0.0)), math.sqrt(max(d2, 0.0)), 0.0
        w_hi = (d1 - d2 + lam_hi - lam_lo) / (2 * c)
        w_lo = (d1 - d2 - lam_hi + lam_lo) / (2 * c)
        s_hi = math.sqrt(lam_hi) / (w_hi * w_hi + 1)
        s_lo = math.sqrt(lam_lo) / (w_lo * w_lo + 1)
        a_top = s_hi * w_hi * w_hi + s_lo * w_lo * w_lo
        a_bot = s_hi + s_lo
        a_off = s_hi * w_hi + s_lo * w_lo
        return a_top, a_bot, a_off

    alpha1, alpha4, alpha5 = block(p.a11, p.a44, p.a14)
    alpha2, alpha3, alpha6 = block(p.a22, p.a33, p.a23)
    cross = 2 * (alpha1 * alpha3 + alpha2 * alpha4)
    w11 = cross + 4 * alpha5 * alpha6
    w22 = cross - 4 * alpha5 * alpha6
    w33 = (
        alpha1 * alpha1 + alpha2 * alpha2 + alpha3 * alpha3 + alpha4 * alpha4
        - 2 * alpha5 * alpha5 - 2 * alpha6 * alpha6
    )
    return w11, w22, w33


def lqu_xstate_closed_form(params: states.XStateParams) -> float:
    w11, w22, w33 = xstate_w_diagonal(params)
    return max(0.0, 1.0 - max(w11, w22, w33))


def negativity(rho) -> float:
    """Trace norm of the partial transpose minus one; 1 on Bell states."""
    pt = matcore.partial_transpose(rho, on="B")
    w = matcore.hermitian_eig(pt).eigenvalues
    return float(max(0.0, np.abs(w).sum() - 1.0))


def concurrence(rho) -> float:
    """Spin-flip concurrence, computed through the Hermitian product
    sqrt(rho) rho_tilde sqrt(rho) to stay on symmetric eigensolvers."""
    A = np.asarray(rho, dtype=complex)
    sy = matcore.pauli(2)
    Y = matcore.kron(sy, sy)
    rho_t = Y @ A.conj() @ Y
    S = matcore.matrix_sqrt_psd(A)
    M = S @ rho_t @ S
    M = (M + M.conj().T) / 2
    w = matcore.hermitian_eig(M).eigenvalues
    r = np.sqrt(np.clip(w, 0.0, None))
    return float(max(0.0, r[3] - r[2] - r[1] - r[0]))


def eof(rho) -> float:
    """Entanglement of formation from the concurrence."""
    c = concurrence(rho)
    return _binary_entropy((1 + math.sqrt(max(0.0, 1 - c * c))) / 2)


def geometric_discord(rho) -> float:
    """Hilbert-Schmidt geometric discord on side A (factor 1/4 normalization)."""
    bf = states.to_bloch(rho)
    x = bf.x
    T = bf.T
    K = np.outer(x, x) + T @ T.T
    lam = matcore.hermitian_eig(K).eigenvalues[-1]
    return float(max(0.0, (float(x @ x) + float((T * T).sum()) - lam) / 4))


def geometric_discord_xstate(params: states.XStateParams) -> float:
    """Geometric discord of an X state from its parameters.

    The Bloch vector and correlation matrix are both diagonal here, so the
    largest eigenvalue is a max over three squares.
    """
    p = params
    x3 = p.a11 + p.a22 - p.a33 - p.a44
    t1 = 2 * (p.a14 + p.a23)
    t2 = 2 * (p.a23 - p.a14)
    t3 = p.a11 - p.a22 - p.a33 + p.a44
    total = x3 * x3 + t1 * t1 + t2 * t2 + t3 * t3
    lam = max(t1 * t1, t2 * t2, x3 * x3 + t3 * t3)
    return max(0.0, (total - lam) / 4)


# ---------------------------------------------------------------------------
# Measurement-side quantities: classical correlation and discord


class _ProjectiveKernel:
    """Conditional entropy of B after a projective measurement on A.

    Uses tr_A[(P x I) rho (P x I)] = tr_A[(P x I) rho] for projectors P, so
    the two outcome blocks are affine in the Bloch direction. Offers a
    vectorized grid path and a scalar path for simplex refinement.
    """

    def __init__(self, rho):
        A = np.asarray(rho, dtype=complex)
        if A.shape != (4, 4):
            raise BadDim(f"expected 4x4, got {A.shape}")
        R = A.reshape(2, 2, 2, 2)
        self.rho_b = matcore.partial_trace(A, keep="B")
        self.G = np.stack(
            [np.einsum("xa,ayxz->yz", matcore.pauli(i), R) for i in (1, 2, 3)]
        )
        rb = self.rho_b
        self._b = (rb[0, 0].real, rb[0, 1], rb[1, 1].real)
        self._g = [
            (self.G[i, 0, 0].real, self.G[i, 0, 1], self.G[i, 1, 1].real)
            for i in range(3)
        ]

    def cond_entropy_many(self, ms) -> np.ndarray:
        ms = np.asarray(ms, dtype=float)
        K = np.tensordot(ms, self.G, axes=(1, 0))
        out = np.zeros(ms.shape[0])
        for sign in (1.0, -1.0):
            M = (self.rho_b[None, :, :] + sign * K) / 2
            t = (M[:, 0, 0] + M[:, 1, 1]).real
            d = (M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]).real
            r = np.sqrt(np.maximum(t * t - 4 * d, 0.0))
            for mu in ((t + r) / 2, (t - r) / 2):
                safe = (mu > _TINY) & (t > _TINY)
                ratio = np.where(safe, mu / np.where(t > _TINY, t, 1.0), 1.0)
                out -= np.where(safe, mu * np.log2(np.where(safe, ratio, 1.0)), 0.0)
        return out

    def cond_entropy(self, m1: float, m2: float, m3: float) -> float:
        b00, b01, b11 = self._b
        g1, g2, g3 = self._g
        k00 = m1 * g1[0] + m2 * g2[0] + m3 * g3[0]
        k01 = m1 * g1[1] + m2 * g2[1] + m3 * g3[1]
        k11 = m1 * g1[2] + m2 * g2[2] + m3 * g3[2]
        total = 0.0
        for sign in (1.0, -1.0):
            a00 = (b00 + sign * k00) / 2
            a11 = (b11 + sign * k11) / 2
            a01 = (b01 + sign * k01) / 2
            t = a00 + a11
            det = a00 * a11 - (a01.real * a01.real + a01.imag * a01.imag)
            disc = t * t - 4 * det
            r = math.sqrt(disc) if disc > 0.0 else 0.0
            for mu in ((t + r) / 2, (t - r) / 2):
                if mu > _TINY and t > _TINY:
                    total -= mu * math.log2(mu / t)
        return total


N_AZIMUTH = 72
N_POLAR = 36
_REFINE_FROM = 3


def _min_cond_entropy(rho) -> float:
    kern = _ProjectiveKernel(rho)
    thetas = (np.arange(N_POLAR) + 0.5) * math.pi / N_POLAR
    phis = 2 * math.pi * np.arange(N_AZIMUTH) / N_AZIMUTH
    TH, PH = np.meshgrid(thetas, phis, indexing="ij")
    ms = np.stack(
        [np.sin(TH) * np.cos(PH), np.sin(TH) * np.sin(PH), np.cos(TH)], axis=-1
    ).reshape(-1, 3)
    vals = kern.cond_entropy_many(ms)
    angles = np.column_stack([TH.ravel(), PH.ravel()])
    order = np.argsort(vals, kind="stable")

    def f(ang):
        st = math.sin(ang[0])
        return kern.cond_entropy(
            st * math.cos(ang[1]), st * math.sin(ang[1]), math.cos(ang[0])
        )

    best = float(vals[order[0]])
    step = np.array([math.pi / (2 * N_POLAR), math.pi / N_AZIMUTH])
    for k in order[:_REFINE_FROM]:
        _, fx, _ = nm.nelder_mead(f, angles[k], step=step, diam_tol=1e-9, max_iter=400)
        if fx < best:
            best = fx
    return best


def classical_correlation_JA(rho) -> float:
    """Classical correlation J_A: S(B) minus the best projective measurement's
    conditional entropy of B, optimized over the Bloch sphere."""
    rho_b = matcore.partial_trace(rho, keep="B")
    s_b = von_neumann_entropy(rho_b)
    return float(max(0.0, s_b - _min_cond_entropy(rho)))


def mutual_information(rho) -> float:
    A = np.asarray(rho, dtype=complex)
    s_a = von_neumann_entropy(matcore.partial_trace(A, keep="A"))
    s_b = von_neumann_entropy(matcore.partial_trace(A, keep="B"))
    return float(s_a + s_b - von_neumann_entropy(A))


def quantum_discord_DA(rho) -> float:
    """Quantum discord D_A = I(A:B) - J_A with measurements on side A."""
    return float(max(0.0, mutual_information(rho) - classical_correlation_JA(rho)))


def dissonance_rank2(rho) -> float:
    """Discord of a rank-<=2 state through its purification: the formation
    entanglement across B:C replaces the measurement optimization. For a
    separable state this is the dissonance (all quantumness, no entanglement).
    """
    A = np.asarray(rho, dtype=complex)
    psi = states.purify_rank2(A)
    rho_bc = states.ancilla_marginal(psi)
    s_a = von_neumann_entropy(matcore.partial_trace(A, keep="A"))
    s_ab = von_neumann_entropy(A)
    return float(s_a - s_ab + eof(rho_bc))


# ---------------------------------------------------------------------------
# Aggregate report


@dataclass
class MeasureReport:
    state_fingerprint: str
    measures: dict
    meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "state_fingerprint": self.state_fingerprint,
            "measures": self.measures,
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return serialize.dumps_json(self.as_dict())


def measure_report(rho) -> MeasureReport:
    """All scalar measures of a validated two-qubit state in one pass."""
    A = states.validate_density_matrix(rho)
    if A.shape != (4, 4):
        raise BadDim(f"expected 4x4, got {A.shape}")
    s_a = von_neumann_entropy(matcore.partial_trace(A, keep="A"))
    s_b = von_neumann_entropy(matcore.partial_trace(A, keep="B"))
    s_ab = von_neumann_entropy(A)
    j_a = classical_correlation_JA(A)
    mi = s_a + s_b - s_ab
    measures = {
        "lqu": lqu(A),
        "gd": geometric_discord(A),
        "negativity": negativity(A),
        "concurrence": concurrence(A),
        "eof": eof(A),
        "s_a": s_a,
        "s_b": s_b,
        "s_ab": s_ab,
        "mutual_information": mi,
        "classical_correlation": j_a,
        "discord": max(0.0, mi - j_a),
    }
    return MeasureReport(
        state_fingerprint=states.state_fingerprint(A),
        measures=measures,
        meta={"backend": backend.backend_name()},
    )

"""Two-qubit state constructors, parameterizations, and JSON I/O.

Basis ordering is |ab> with subsystem A first (index 2a + b). X-shaped states
are stored by their six real parameters after local phase removal.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import matcore, serialize
from .errors import (
    BadDim,
    InvalidParams,
    NonHermitianInput,
    NotPSD,
    OutOfRange,
    RankTooHigh,
    Unphysical,
)

PARAM_SLACK = 1e-12
SEPARABILITY_EIG_TOL = -1e-10


@dataclass
class XStateParams:
    """Six real parameters of an X-shaped density matrix.

    a11..a44 are the diagonal probabilities, a14 and a23 the two (phase-removed,
    nonnegative) coherences on the anti-diagonal.
    """

    a11: float
    a22: float
    a33: float
    a44: float
    a14: float
    a23: float

    def validate(self) -> "XStateParams":
        vals = (self.a11, self.a22, self.a33, self.a44, self.a14, self.a23)
        names = ("a11", "a22", "a33", "a44", "a14", "a23")
        for name, v in zip(names, vals):
            if not (v >= -PARAM_SLACK):
                raise InvalidParams(f"{name} must be nonnegative, got {v}")
        s = self.a11 + self.a22 + self.a33 + self.a44
        if abs(s - 1.0) > PARAM_SLACK:
            raise InvalidParams(f"diagonal must sum to 1, got {s}")
        if self.a11 * self.a44 - self.a14 ** 2 < -PARAM_SLACK:
            raise InvalidParams("positivity violated: a11*a44 >= a14^2 fails")
        if self.a22 * self.a33 - self.a23 ** 2 < -PARAM_SLACK:
            raise InvalidParams("positivity violated: a22*a33 >= a23^2 fails")
        return self

    def canonical(self) -> "XStateParams":
        """Representative with a11 >= a44, via the sigma_x (x) sigma_x swap."""
        if self.a11 >= self.a44:
            return XStateParams(*self.as_tuple())
        return XStateParams(self.a44, self.a33, self.a22, self.a11, self.a14, self.a23)

    def ppt(self) -> bool:
        """Partial-transpose positivity from the dual pair of inequalities."""
        return (
            self.a11 * self.a44 - self.a23 ** 2 >= -PARAM_SLACK
            and self.a22 * self.a33 - self.a14 ** 2 >= -PARAM_SLACK
        )

    def as_tuple(self) -> tuple[float, ...]:
        return (self.a11, self.a22, self.a33, self.a44, self.a14, self.a23)

    def as_dict(self) -> dict[str, float]:
        return {
            "a11": self.a11, "a22": self.a22, "a33": self.a33,
            "a44": self.a44, "a14": self.a14, "a23": self.a23,
        }


@dataclass
class BellDiagonalParams:
    """Correlation-tensor diagonal (t1, t2, t3) of a Bell-diagonal state."""

    t1: float
    t2: float
    t3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.t1, self.t2, self.t3)

    def as_dict(self) -> dict[str, float]:
        return {"t1": self.t1, "t2": self.t2, "t3": self.t3}


@dataclass
class BlochForm:
    """Local Bloch vectors x (A side), y (B side) and correlation matrix T."""

    x: np.ndarray
    y: np.ndarray
    T: np.ndarray


def validate_density_matrix(rho) -> np.ndarray:
    """Check Hermiticity, unit trace, PSD; report the first violated invariant."""
    A = np.asarray(rho, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise BadDim(f"density matrix must be square, got shape {A.shape}")
    dev = float(np.abs(A - A.conj().T).max())
    if dev > 1e-10:
        raise NonHermitianInput(f"not Hermitian: max |rho - rho^dag| = {dev:.3e}")
    tr = complex(np.trace(A))
    if abs(tr - 1.0) > 1e-9:
        raise Unphysical(f"trace must be 1, got {tr.real:.12g}")
    w = matcore.hermitian_eig(A).eigenvalues
    if w[0] < matcore.PSD_CLIP:
        raise NotPSD(f"negative eigenvalue {w[0]:.3e}")
    return A


def x_state(params: XStateParams) -> np.ndarray:
    """Density matrix of an X-shaped state from validated parameters."""
    p = params.validate()
    return np.array(
        [
            [p.a11, 0, 0, p.a14],
            [0, p.a22, p.a23, 0],
            [0, p.a23, p.a33, 0],
            [p.a14, 0, 0, p.a44],
        ],
        dtype=complex,
    )


def x_params_from_matrix(rho) -> XStateParams:
    """Read the six X parameters back off a (real-coherence) X-shaped matrix."""
    A = np.asarray(rho, dtype=complex)
    return XStateParams(
        A[0, 0].real, A[1, 1].real, A[2, 2].real, A[3, 3].real,
        A[0, 3].real, A[1, 2].real,
    )


def rho_star() -> np.ndarray:
    """The extremal separable X state: LQU attains 1/2 on it."""
    u = (math.sqrt(2) + 1) / (4 * math.sqrt(2))
    v = (math.sqrt(2) - 1) / (4 * math.sqrt(2))
    c = 1 / (4 * math.sqrt(2))
    return x_state(XStateParams(u, u, v, v, c, c))


def rho_star_params() -> XStateParams:
    u = (math.sqrt(2) + 1) / (4 * math.sqrt(2))
    v = (math.sqrt(2) - 1) / (4 * math.sqrt(2))
    c = 1 / (4 * math.sqrt(2))
    return XStateParams(u, u, v, v, c, c)


_BELL_VECTORS = {
    "phi_plus": np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2),
    "phi_minus": np.array([1, 0, 0, -1], dtype=complex) / math.sqrt(2),
    "psi_plus": np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2),
    "psi_minus": np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2),
}


def bell_state(kind: str) -> np.ndarray:
    """Projector onto one of the four Bell states."""
    if kind not in _BELL_VECTORS:
        raise OutOfRange(f"unknown Bell state {kind!r}; choices: {sorted(_BELL_VECTORS)}")
    v = _BELL_VECTORS[kind]
    return np.outer(v, v.conj())


def maximally_mixed() -> np.ndarray:
    return np.eye(4, dtype=complex) / 4


def werner(p: float) -> np.ndarray:
    """p |psi-><psi-| + (1-p) I/4."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"werner parameter must be in [0, 1], got {p}")
    return p * bell_state("psi_minus") + (1 - p) * maximally_mixed()


def chi_state(eps: float) -> np.ndarray:
    """eps rho* + (1-eps) |phi+><phi+|, entrywise affine in eps."""
    if not 0.0 <= eps <= 1.0:
        raise OutOfRange(f"eps must be in [0, 1], got {eps}")
    return eps * rho_star() + (1 - eps) * bell_state("phi_plus")


def noisy_star(p: float) -> np.ndarray:
    """p rho* + (1-p) I/4, entrywise affine in p."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must be in [0, 1], got {p}")
    return p * rho_star() + (1 - p) * maximally_mixed()


def bell_diagonal(params: BellDiagonalParams) -> np.ndarray:
    """(1/4)(I + sum_i t_i sigma_i (x) sigma_i); raises Unphysical if not PSD."""
    rho = np.eye(4, dtype=complex)
    for t, i in zip(params.as_tuple(), (1, 2, 3)):
        s = matcore.pauli(i)
        rho = rho + t * matcore.kron(s, s)
    rho = rho / 4
    w = matcore.hermitian_eig(rho).eigenvalues
    if w[0] < matcore.PSD_CLIP:
        raise Unphysical(f"Bell-diagonal eigenvalue {w[0]:.6g} is negative for t={params.as_tuple()}")
    return rho


def to_bloch(rho) -> BlochForm:
    """Bloch vectors and correlation matrix; imaginary parts are rounding noise."""
    A = np.asarray(rho, dtype=complex)
    if A.shape != (4, 4):
        raise BadDim(f"expected 4x4, got {A.shape}")
    x = np.zeros(3)
    y = np.zeros(3)
    T = np.zeros((3, 3))
    I2 = np.eye(2, dtype=complex)
    for i in (1, 2, 3):
        si = matcore.pauli(i)
        x[i - 1] = np.trace(A @ matcore.kron(si, I2)).real
        y[i - 1] = np.trace(A @ matcore.kron(I2, si)).real
        for j in (1, 2, 3):
            T[i - 1, j - 1] = np.trace(A @ matcore.kron(si, matcore.pauli(j))).real
    return BlochForm(x, y, T)


RANK2_TOL = 1e-8


def purify_rank2(rho) -> np.ndarray:
    """Purification of a rank-<=2 two-qubit state with a single ancilla qubit.

    Returns the 8-amplitude vector ordered (a, b, c) -> 4a + 2b + c where c is
    the ancilla; tracing the ancilla out recovers rho.
    """
    A = validate_density_matrix(rho)
    if A.shape != (4, 4):
        raise BadDim(f"expected 4x4, got {A.shape}")
    eig = matcore.hermitian_eig(A)
    w = eig.eigenvalues[::-1]
    V = eig.eigenvectors[:, ::-1]
    if w[2] > RANK2_TOL:
        raise RankTooHigh(f"third eigenvalue {w[2]:.3e} exceeds {RANK2_TOL:.0e}")
    lam0, lam1 = max(w[0], 0.0), max(w[1], 0.0)
    psi = np.zeros(8, dtype=complex)
    psi[0::2] = math.sqrt(lam0) * V[:, 0]
    psi[1::2] = math.sqrt(lam1) * V[:, 1]
    return psi


def ancilla_marginal(psi) -> np.ndarray:
    """rho_BC of a purification vector (traces out qubit A)."""
    M = np.asarray(psi, dtype=complex).reshape(2, 4)
    return M[0, :, None] * M[0, None, :].conj() + M[1, :, None] * M[1, None, :].conj()


def trace_out_ancilla(psi) -> np.ndarray:
    """rho_AB of a purification vector (traces out the ancilla qubit C)."""
    M = np.asarray(psi, dtype=complex).reshape(4, 2)
    return M @ M.conj().T


def random_separable(seed, k: int = 3) -> np.ndarray:
    """Random mixture of k product states; seed is an int or a numpy Generator.

    Weights are a flat simplex draw, local states are isotropic qubit purestates
    (normalized complex Gaussians) from numpy's PCG64 stream.
    """
    if k < 1:
        raise OutOfRange(f"k must be >= 1, got {k}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(k))
    rho = np.zeros((4, 4), dtype=complex)
    for j in range(k):
        za = rng.normal(size=2) + 1j * rng.normal(size=2)
        zb = rng.normal(size=2) + 1j * rng.normal(size=2)
        za /= np.linalg.norm(za)
        zb /= np.linalg.norm(zb)
        v = np.kron(za, zb)
        rho += w[j] * np.outer(v, v.conj())
    return rho


def is_separable(rho) -> bool:
    """Positive partial transpose; exact for two qubits."""
    pt = matcore.partial_transpose(rho, on="B")
    w = matcore.hermitian_eig(pt).eigenvalues
    return bool(w[0] >= SEPARABILITY_EIG_TOL)


# ---------------------------------------------------------------------------
# JSON interchange


def state_to_dict(rho) -> dict:
    # full precision so written states re-ingest within 1e-12
    A = np.asarray(rho, dtype=complex)
    return {
        "dim": int(A.shape[0]),
        "re": A.real.tolist(),
        "im": A.imag.tolist(),
    }


def state_fingerprint(rho) -> str:
    return serialize.fingerprint(state_to_dict(rho))


def x_params_from_dict(d: dict) -> tuple[XStateParams, dict]:
    """Parse an x_params mapping; complex coherences are phase-canonicalized.

    Returns (params, metadata) where metadata records the local phases removed.
    """
    def _complex(v):
        if isinstance(v, (list, tuple)) and len(v) == 2:
            return complex(v[0], v[1])
        if isinstance(v, dict):
            return complex(v.get("re", 0.0), v.get("im", 0.0))
        return complex(v)

    try:
        diag = [float(d[k]) for k in ("a11", "a22", "a33", "a44")]
        c14 = _complex(d.get("a14", 0.0))
        c23 = _complex(d.get("a23", 0.0))
    except (KeyError, TypeError) as exc:
        raise InvalidParams(f"malformed x_params: {exc}") from exc
    phi14 = cmath.phase(c14) if abs(c14) > 0 else 0.0
    phi23 = cmath.phase(c23) if abs(c23) > 0 else 0.0
    params = XStateParams(*diag, abs(c14), abs(c23)).validate()
    meta = {"phase_a14": phi14, "phase_a23": phi23}
    return params, meta


def state_from_dict(d: dict) -> np.ndarray:
    """Rebuild a density matrix from its JSON form, validating on the way in."""
    if "x_params" in d:
        params, _ = x_params_from_dict(d["x_params"])
        return x_state(params)
    try:
        dim = int(d["dim"])
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParams(f"malformed state JSON: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise BadDim(f"re/im must be {dim}x{dim} arrays")
    return validate_density_matrix(re + 1j * im)


def save_state(rho, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(serialize.dumps_json_full(state_to_dict(rho)))


def load_state(path: str) -> np.ndarray:
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidParams(f"not valid JSON: {exc}") from exc
    return state_from_dict(payload)

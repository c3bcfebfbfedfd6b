"""One-shot verification of the package's headline numerical claims.

Each group re-derives a published or derived value from scratch and compares
at a stated tolerance. tol_scale multiplies every tolerance (0 is a negative
control that must fail), seed drives every random draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore, measures, optimize, states, uncertainty
from .errors import OutOfRange

GOLDEN_DISSONANCE = 0.20175
GOLDEN_S_A = 0.60088
GOLDEN_CROSSING = 0.714


@dataclass
class ClaimResult:
    name: str
    passed: bool
    computed: str
    expected: str
    tol: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" tol={self.tol:g}" if self.tol is not None else ""
        return f"{status} {self.name}: computed={self.computed} expected={self.expected}{tail}"


def _close(name: str, computed: float, expected: float, tol: float) -> ClaimResult:
    return ClaimResult(
        name,
        bool(abs(computed - expected) <= tol),
        f"{computed:.12g}",
        f"{expected:.12g}",
        tol,
    )


def _flag(name: str, ok: bool, computed, expected) -> ClaimResult:
    return ClaimResult(name, bool(ok), str(computed), str(expected), None)


def _random_mixed(rng, dim: int = 4) -> np.ndarray:
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    M = G @ G.conj().T
    return M / np.trace(M).real


def _haar_unitary(rng, dim: int = 2) -> np.ndarray:
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def _random_x_params(rng) -> states.XStateParams:
    z = rng.dirichlet(np.ones(4))
    f1, f2 = rng.random(2)
    return states.XStateParams(
        z[0], z[1], z[2], z[3],
        f1 * math.sqrt(z[0] * z[3]), f2 * math.sqrt(z[1] * z[2]),
    )


def _claims_bell_lqu(s: float, seed: int) -> list[ClaimResult]:
    out = []
    for kind in ("phi_plus", "phi_minus", "psi_plus", "psi_minus"):
        out.append(_close(f"bell_lqu.{kind}", measures.lqu(states.bell_state(kind)), 1.0, 1e-8 * s))
    out.append(_close("bell_lqu.maximally_mixed", measures.lqu(states.maximally_mixed()), 0.0, 1e-8 * s))
    return out


def _claims_separable_x(s: float, seed: int) -> list[ClaimResult]:
    res = optimize.maximize_lqu_separable_x(n_starts=64, seed=seed)
    target = states.rho_star_params()
    dev = max(
        abs(res.best_params[k] - v) for k, v in target.as_dict().items()
    )
    red = optimize.solve_reduced_family()
    return [
        _close("separable_x.max_value", res.best_value, 0.5, 1e-4 * s),
        _flag("separable_x.feasible", res.feasible, res.feasible, True),
        _close("separable_x.argmax_params", dev, 0.0, 1e-3 * s),
        _flag(
            "separable_x.reduced_a11_exact",
            red.best_params["a11"] == optimize.REDUCED_OPT_A11,
            f"{red.best_params['a11']!r}",
            f"{optimize.REDUCED_OPT_A11!r}",
        ),
        _close("separable_x.reduced_w_sigma_x", red.extras["w_sigma_x"], 0.5, 1e-12 * s),
        _close("separable_x.reduced_w_sigma_z", red.extras["w_sigma_z"], 0.5, 1e-12 * s),
    ]


def _claims_closed_form(s: float, seed: int) -> list[ClaimResult]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(1000):
        p = _random_x_params(rng)
        dev = abs(measures.lqu_xstate_closed_form(p) - measures.lqu(states.x_state(p)))
        worst = max(worst, dev)
    return [_close("closed_form.max_dev_1000", worst, 0.0, 1e-7 * s)]


def _line_formula(t: float) -> float:
    return 1.0 - 0.5 * math.sqrt(1 + t) * (math.sqrt(1 + t) + math.sqrt(1 - 3 * t))


def _claims_bell_diagonal(s: float, seed: int) -> list[ClaimResult]:
    worst = 0.0
    for t in np.linspace(-1 / 3, 1 / 3, 41):
        rho = states.bell_diagonal(states.BellDiagonalParams(t, t, t))
        worst = max(worst, abs(measures.lqu(rho) - _line_formula(float(t))))
    res = optimize.maximize_lqu_bell_diagonal_separable(grid=21, seed=seed)
    return [
        _close("bell_diagonal.line_formula_max_dev", worst, 0.0, 1e-8 * s),
        _close("bell_diagonal.separable_max", res.best_value, 1 / 3, 1e-5 * s),
        _flag("bell_diagonal.feasible", res.feasible, res.feasible, True),
    ]


def _claims_dissonance(s: float, seed: int) -> list[ClaimResult]:
    rho = states.rho_star()
    s_a = measures.von_neumann_entropy(matcore.partial_trace(rho, keep="A"))
    s_ab = measures.von_neumann_entropy(rho)
    psi = states.purify_rank2(rho)
    ef_bc = measures.eof(states.ancilla_marginal(psi))
    diss = measures.dissonance_rank2(rho)
    return [
        _close("dissonance.s_a", s_a, GOLDEN_S_A, 1e-4 * s),
        _close("dissonance.s_ab", s_ab, 1.0, 1e-9 * s),
        _close("dissonance.ef_bc_vs_s_a", ef_bc, s_a, 1e-4 * s),
        _close("dissonance.value", diss, GOLDEN_DISSONANCE, 5e-4 * s),
        _close(
            "dissonance.matches_measured_discord",
            diss,
            measures.quantum_discord_DA(rho),
            1e-5 * s,
        ),
    ]


_SQ2 = math.sqrt(2)


def _chi_spb_formula(eps: float) -> float:
    a = (2 - _SQ2) * eps / 8
    b = (4 - (2 - _SQ2) * eps) / 8
    return measures.shannon_entropy([a, a, b, b]) - 1.0


def _chi_sqb_formula(eps: float) -> float:
    a = (2 - _SQ2) * eps / 8
    b = (2 + _SQ2) * eps / 8
    c = (4 - (2 + _SQ2) * eps) / 8
    d = (4 - (2 - _SQ2) * eps) / 8
    return measures.shannon_entropy([a, b, c, d]) - 1.0


def _claims_chi(s: float, seed: int) -> list[ClaimResult]:
    table = optimize.chi_sweep(101)
    eps = [r[0] for r in table.rows]
    spb = [r[1] for r in table.rows]
    sqb = [r[2] for r in table.rows]
    cs = [r[3] for r in table.rows]
    gap = [r[6] for r in table.rows]
    neg = [r[7] for r in table.rows]
    dev_p = max(abs(v - _chi_spb_formula(e)) for e, v in zip(eps, spb))
    dev_q = max(abs(v - _chi_sqb_formula(e)) for e, v in zip(eps, sqb))
    dev_c = max(abs(v - 1 / _SQ2) for v in cs)
    min_gap_step = min(b - a for a, b in zip(gap, gap[1:]))
    max_neg_step = max(b - a for a, b in zip(neg, neg[1:]))
    return [
        _close("chi.s_pb_formula_max_dev", dev_p, 0.0, 1e-9 * s),
        _close("chi.s_qb_formula_max_dev", dev_q, 0.0, 1e-9 * s),
        _close("chi.complementarity", dev_c, 0.0, 1e-12 * s),
        _flag(
            "chi.gap_nondecreasing",
            min_gap_step >= -1e-8 * s,
            f"{min_gap_step:.3e}",
            ">= -1e-08*scale",
        ),
        _flag(
            "chi.gap_peak_at_one",
            table.meta["gap_max_eps"] == 1.0,
            table.meta["gap_max_eps"],
            1.0,
        ),
        _flag(
            "chi.negativity_nonincreasing",
            max_neg_step <= 1e-10 * s,
            f"{max_neg_step:.3e}",
            "<= 1e-10*scale",
        ),
        _close("chi.crossing_eps", table.meta["crossing_eps"], GOLDEN_CROSSING, 0.01 * s),
    ]


def _claims_noisy(s: float, seed: int) -> list[ClaimResult]:
    table = optimize.noisy_sweep(101)
    neg_max = max(r[7] for r in table.rows)
    return [
        _flag("noisy.all_separable", table.meta["all_separable"], table.meta["all_separable"], True),
        _close("noisy.negativity_zero", neg_max, 0.0, 1e-10 * s),
        _flag(
            "noisy.gap_peak_at_one",
            table.meta["gap_max_eps"] == 1.0,
            table.meta["gap_max_eps"],
            1.0,
        ),
        _flag(
            "noisy.gap_positive_at_one",
            table.rows[-1][6] >= 1e-3,
            f"{table.rows[-1][6]:.6g}",
            ">= 0.001",
        ),
    ]


def _claims_gd(s: float, seed: int) -> list[ClaimResult]:
    direct = measures.geometric_discord(states.rho_star())
    res_gd = optimize.maximize_gd_separable_x(n_starts=64, seed=seed)
    res_lqu = optimize.maximize_lqu_separable_x(n_starts=64, seed=seed)
    dev = max(
        abs(res_gd.best_params[k] - res_lqu.best_params[k])
        for k in res_gd.best_params
    )
    return [
        _close("gd.rho_star_value", direct, 0.125, 1e-9 * s),
        _close("gd.separable_max", res_gd.best_value, 0.125, 1e-6 * s),
        _close("gd.argmax_matches_lqu_argmax", dev, 0.0, 1e-3 * s),
        _flag("gd.feasible", res_gd.feasible, res_gd.feasible, True),
    ]


def _claims_properties(s: float, seed: int) -> list[ClaimResult]:
    rng = np.random.default_rng(seed)
    out = []

    worst = 0.0
    for _ in range(100):
        rho = _random_mixed(rng)
        U = matcore.kron(_haar_unitary(rng), _haar_unitary(rng))
        rotated = U @ rho @ U.conj().T
        worst = max(worst, abs(measures.lqu(rho) - measures.lqu(rotated)))
    out.append(_close("properties.local_unitary_invariance", worst, 0.0, 1e-8 * s))

    worst = 0.0
    I2 = np.eye(2, dtype=complex)
    for _ in range(1000):
        rho = _random_mixed(rng)
        n = rng.standard_normal(3)
        n /= np.linalg.norm(n)
        K = matcore.kron(
            n[0] * matcore.pauli(1) + n[1] * matcore.pauli(2) + n[2] * matcore.pauli(3),
            I2,
        )
        dh2 = measures.hellinger_check(rho, n)
        worst = max(worst, abs(dh2 - measures.skew_information(rho, K)))
    out.append(_close("properties.hellinger_identity", worst, 0.0, 1e-9 * s))

    worst = 0.0
    for _ in range(100):
        z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        z /= np.linalg.norm(z)
        rho = np.outer(z, z.conj())
        ra = matcore.partial_trace(rho, keep="A")
        linear = 2 * (1 - np.trace(ra @ ra).real)
        worst = max(worst, abs(measures.lqu(rho) - linear))
    out.append(_close("properties.pure_state_linear_entropy", worst, 0.0, 1e-8 * s))

    worst = 0.0
    for _ in range(200):
        W = measures.w_matrix(states.x_state(_random_x_params(rng)))
        off = W - np.diag(np.diagonal(W))
        worst = max(worst, float(np.abs(off).max()))
    out.append(_close("properties.x_state_w_offdiagonal", worst, 0.0, 1e-9 * s))

    P = matcore.pauli(1)
    Q = matcore.pauli(3)
    min_pati_minus_berta = math.inf
    min_slack = math.inf
    for _ in range(1000):
        rho = _random_mixed(rng)
        rep = uncertainty.uncertainty_gap(rho, P, Q)
        min_pati_minus_berta = min(min_pati_minus_berta, rep.pati - rep.berta)
        min_slack = min(min_slack, rep.s_pb + rep.s_qb - rep.pati)
    out.append(
        _flag(
            "properties.pati_ge_berta",
            min_pati_minus_berta >= 0.0,
            f"{min_pati_minus_berta:.3e}",
            ">= 0",
        )
    )
    out.append(
        _flag(
            "properties.measured_sum_ge_pati",
            min_slack >= -1e-8 * s,
            f"{min_slack:.3e}",
            ">= -1e-08*scale",
        )
    )
    return out


def _claims_conjecture(s: float, seed: int) -> list[ClaimResult]:
    probe = optimize.conjecture_probe(samples=10000, k_max=4, seed=seed)
    with_star = optimize.conjecture_probe(
        samples=2000, k_max=4, seed=seed, include_rho_star=True
    )
    return [
        _flag(
            "conjecture.random_max_below_half",
            probe["max_lqu"] < 0.5,
            f"{probe['max_lqu']:.12g}",
            "< 0.5",
        ),
        _flag("conjecture.no_violations", probe["violations"] == 0, probe["violations"], 0),
        _close("conjecture.pool_with_star_attains", with_star["max_lqu"], 0.5, 1e-12 * s),
    ]


CLAIM_GROUPS = {
    "bell_lqu": _claims_bell_lqu,
    "separable_x": _claims_separable_x,
    "closed_form": _claims_closed_form,
    "bell_diagonal": _claims_bell_diagonal,
    "dissonance": _claims_dissonance,
    "chi": _claims_chi,
    "noisy": _claims_noisy,
    "gd": _claims_gd,
    "properties": _claims_properties,
    "conjecture": _claims_conjecture,
}


def run_claims(only=None, tol_scale: float = 1.0, seed: int = 7) -> list[ClaimResult]:
    """Run claim groups (all by default) and return their results in order."""
    if tol_scale < 0:
        raise OutOfRange(f"tol_scale must be >= 0, got {tol_scale}")
    if only is None:
        names = list(CLAIM_GROUPS)
    else:
        names = list(only)
        for n in names:
            if n not in CLAIM_GROUPS:
                raise OutOfRange(f"unknown claim group {n!r}; choices: {sorted(CLAIM_GROUPS)}")
    results = []
    for n in names:
        results.extend(CLAIM_GROUPS[n](float(tol_scale), int(seed)))
    return results

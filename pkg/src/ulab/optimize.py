"""Constrained searches over separable families and parameter sweeps.

Optimizers are deterministic for a fixed seed: fixed start lists, seeded
PCG64 streams per start, and simplex refability with stable tie-breaks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import matcore, measures, nm, serialize, states, uncertainty
from .errors import OutOfRange

PENALTY = 1e3
FEASIBILITY_TOL = 1e-9

# location of the reduced-family optimum on the a11 axis
REDUCED_OPT_A11 = (math.sqrt(2) + 1) / (4 * math.sqrt(2))


def _thread_count() -> int:
    raw = os.environ.get("ULAB_THREADS", "").strip()
    if raw in ("", "0"):
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise OutOfRange(f"ULAB_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise OutOfRange(f"ULAB_THREADS must be >= 0, got {n}")
    return max(1, n)


def parallel_map(fn, items) -> list:
    """Ordered map honoring ULAB_THREADS (0 or unset runs serially)."""
    items = list(items)
    n = _thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass
class OptimizationResult:
    best_params: dict
    best_value: float
    feasible: bool
    max_violation: float
    n_starts: int
    seed: int | None
    trace: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "best_params": self.best_params,
            "best_value": self.best_value,
            "feasible": self.feasible,
            "max_violation": self.max_violation,
            "n_starts": self.n_starts,
            "seed": self.seed,
            "trace": self.trace,
            "extras": self.extras,
        }

    def to_json(self) -> str:
        return serialize.dumps_json(self.as_dict())


@dataclass
class SweepTable:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
            "meta": self.meta,
        }

    def to_csv(self) -> str:
        return serialize.format_csv(self.columns, self.rows)

    def to_json(self) -> str:
        return serialize.dumps_json(self.as_dict())


# ---------------------------------------------------------------------------
# Separable X-state searches

# Coordinates: 4 simplex weights for the diagonal plus 2 coherence fractions.
# Coherences are scaled into min(sqrt(a11 a44), sqrt(a22 a33)), which makes
# every image both positive semidefinite and PPT by construction.


def _coords_to_xparams(x) -> states.XStateParams | None:
    z = np.maximum(np.asarray(x[:4], dtype=float), 0.0)
    s = z.sum()
    if s <= 1e-12:
        return None
    z = z / s
    f1 = min(max(float(x[4]), 0.0), 1.0)
    f2 = min(max(float(x[5]), 0.0), 1.0)
    bound = min(math.sqrt(z[0] * z[3]), math.sqrt(z[1] * z[2]))
    return states.XStateParams(z[0], z[1], z[2], z[3], f1 * bound, f2 * bound)


def _xparams_to_coords(p: states.XStateParams) -> np.ndarray:
    bound = min(math.sqrt(p.a11 * p.a44), math.sqrt(p.a22 * p.a33))
    f1 = p.a14 / bound if bound > 1e-15 else 0.0
    f2 = p.a23 / bound if bound > 1e-15 else 0.0
    return np.array([p.a11, p.a22, p.a33, p.a44, min(f1, 1.0), min(f2, 1.0)])


def _xparams_violation(p: states.XStateParams) -> float:
    worst = abs(p.a11 + p.a22 + p.a33 + p.a44 - 1.0)
    worst = max(worst, -min(p.a11, p.a22, p.a33, p.a44, 0.0))
    worst = max(worst, p.a14 ** 2 - p.a11 * p.a44)
    worst = max(worst, p.a23 ** 2 - p.a22 * p.a33)
    worst = max(worst, p.a23 ** 2 - p.a11 * p.a44)
    worst = max(worst, p.a14 ** 2 - p.a22 * p.a33)
    return max(0.0, worst)


def _reduced_optimum_params() -> states.XStateParams:
    u = REDUCED_OPT_A11
    v = 0.5 - u
    c = math.sqrt(u * v)
    return states.XStateParams(u, u, v, v, c, c)


def _multistart_x(objective, value_of, n_starts: int, seed: int, initial):
    """Shared driver: NM from deterministic plus seeded random coordinates."""

    def run(start):
        idx, x0 = start
        x, fx, _ = nm.nelder_mead(objective, x0, step=0.08, diam_tol=1e-10, max_iter=2000)
        return idx, x, fx

    if initial is not None:
        start_list = [(0, _xparams_to_coords(initial.validate()))]
    else:
        n_starts = max(int(n_starts), 2)
        anchor = _reduced_optimum_params()
        mirror = states.XStateParams(
            anchor.a33, anchor.a44, anchor.a11, anchor.a22, anchor.a14, anchor.a23
        )
        start_list = [
            (0, _xparams_to_coords(anchor)),
            (1, _xparams_to_coords(mirror)),
        ]
        for i in range(2, n_starts):
            rng = np.random.default_rng(seed ^ i)
            x0 = np.concatenate([rng.random(4), rng.random(2)])
            start_list.append((i, x0))

    results = parallel_map(run, start_list)
    trace = []
    best = None
    for idx, x, fx in results:
        trace.append({"start": idx, "value": -fx})
        if best is None or fx < best[2]:
            best = (idx, x, fx)
    params = _coords_to_xparams(best[1])
    params = params.canonical().validate()
    value = value_of(params)
    violation = _xparams_violation(params)
    return params, value, violation, len(start_list), trace


def maximize_lqu_separable_x(n_starts: int = 64, seed: int = 7, initial=None) -> OptimizationResult:
    """Maximize LQU over separable (PPT) X states.

    Multistart simplex search in a feasible-by-construction parameterization;
    the reported value is recomputed numerically from the density matrix.
    """

    def objective(x):
        p = _coords_to_xparams(x)
        if p is None:
            return PENALTY
        return -measures.lqu_xstate_closed_form(p)

    params, value, violation, n_run, trace = _multistart_x(
        objective, lambda p: measures.lqu(states.x_state(p)), n_starts, seed, initial
    )
    w11, w22, w33 = measures.xstate_w_diagonal(params)
    names = ("w11", "w22", "w33")
    return OptimizationResult(
        best_params=params.as_dict(),
        best_value=value,
        feasible=violation <= FEASIBILITY_TOL,
        max_violation=violation,
        n_starts=n_run,
        seed=seed,
        trace=trace,
        extras={
            "closed_form_value": measures.lqu_xstate_closed_form(params),
            "w_diagonal": [w11, w22, w33],
            "active_w": names[int(np.argmax([w11, w22, w33]))],
        },
    )


def maximize_gd_separable_x(n_starts: int = 64, seed: int = 7, initial=None) -> OptimizationResult:
    """Maximize geometric discord over separable (PPT) X states."""

    def objective(x):
        p = _coords_to_xparams(x)
        if p is None:
            return PENALTY
        return -measures.geometric_discord_xstate(p)

    params, value, violation, n_run, trace = _multistart_x(
        objective,
        lambda p: measures.geometric_discord(states.x_state(p)),
        n_starts,
        seed,
        initial,
    )
    return OptimizationResult(
        best_params=params.as_dict(),
        best_value=value,
        feasible=violation <= FEASIBILITY_TOL,
        max_violation=violation,
        n_starts=n_run,
        seed=seed,
        trace=trace,
        extras={"lqu_at_optimum": measures.lqu(states.x_state(params))},
    )


def solve_reduced_family() -> OptimizationResult:
    """Closed-form optimum of the symmetric two-parameter subfamily.

    On the slice a11 = a22 = u, a33 = a44 = 1/2 - u with maximal coherences,
    the two active w eigenvalues cross where 4 u v = (u - v)^2, giving
    u = (sqrt(2) + 1) / (4 sqrt(2)) and LQU exactly 1/2.
    """
    params = _reduced_optimum_params()
    u, v = params.a11, params.a33
    value = measures.lqu_xstate_closed_form(params)
    return OptimizationResult(
        best_params=params.as_dict(),
        best_value=value,
        feasible=True,
        max_violation=_xparams_violation(params),
        n_starts=0,
        seed=None,
        trace=[],
        extras={
            "a11": u,
            "w_sigma_x": 16 * u * v,
            "w_sigma_z": 4 * (u - v) ** 2,
            "numeric_value": measures.lqu(states.x_state(params)),
        },
    )


# ---------------------------------------------------------------------------
# Bell-diagonal search

_BELL_ORDER = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")
_BELL_SIGNS = np.array(
    [
        [1.0, -1.0, 1.0],
        [-1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0],
        [-1.0, -1.0, -1.0],
    ]
)


def _weights_to_t(p) -> np.ndarray:
    return np.asarray(p, dtype=float) @ _BELL_SIGNS


def _t_to_weights(t) -> np.ndarray:
    return (1.0 + _BELL_SIGNS @ np.asarray(t, dtype=float)) / 4


def _rho_from_weights(p) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    for w, name in zip(p, _BELL_ORDER):
        rho += w * states.bell_state(name)
    return rho


def _bell_feasibility(rho) -> float:
    """Positive part of the worst PSD or PPT eigenvalue deficit."""
    w_rho = matcore.hermitian_eig(rho).eigenvalues[0]
    w_pt = matcore.hermitian_eig(matcore.partial_transpose(rho, on="B")).eigenvalues[0]
    return max(0.0, -w_rho, -w_pt)


def maximize_lqu_bell_diagonal_separable(grid: int = 21, seed: int = 7) -> OptimizationResult:
    """Maximize LQU over separable Bell-diagonal states.

    Cube scan over the correlation diagonal with numeric PSD and PPT checks,
    then simplex refinement in Bell-weight space from the best scan points.
    """
    if grid < 2:
        raise OutOfRange(f"grid must be >= 2, got {grid}")
    axis = np.linspace(-1.0, 1.0, grid)
    best_pts = []
    for t1 in axis:
        for t2 in axis:
            for t3 in axis:
                p = _t_to_weights((t1, t2, t3))
                rho = _rho_from_weights(p)
                if _bell_feasibility(rho) > -matcore.PSD_CLIP:
                    continue
                val = measures.lqu(rho)
                best_pts.append((val, (t1, t2, t3)))
    if not best_pts:
        raise ArithmeticError("no feasible grid point; use a finer grid")
    best_pts.sort(key=lambda item: -item[0])

    def objective(pvec):
        q = np.maximum(np.asarray(pvec, dtype=float), 0.0)
        s = q.sum()
        if s <= 1e-12:
            return PENALTY
        q = q / s
        rho = _rho_from_weights(q)
        bad = _bell_feasibility(rho)
        if bad > -matcore.PSD_CLIP:
            return PENALTY + 1e4 * bad
        return -measures.lqu(rho)

    trace = []
    best_val, best_t = best_pts[0]
    for rank, (val, t) in enumerate(best_pts[:3]):
        p0 = _t_to_weights(t)
        x, fx, _ = nm.nelder_mead(objective, p0, step=0.05, diam_tol=1e-10, max_iter=2000)
        trace.append({"start": rank, "value": -fx})
        if -fx > best_val:
            q = np.maximum(x, 0.0)
            q = q / q.sum()
            best_val = -fx
            best_t = tuple(_weights_to_t(q))
    weights = _t_to_weights(best_t)
    rho = _rho_from_weights(weights)
    value = measures.lqu(rho)
    violation = _bell_feasibility(rho)
    return OptimizationResult(
        best_params={"t1": best_t[0], "t2": best_t[1], "t3": best_t[2]},
        best_value=value,
        feasible=violation <= FEASIBILITY_TOL,
        max_violation=violation,
        n_starts=min(3, len(best_pts)),
        seed=seed,
        trace=trace,
        extras={"bell_weights": [float(w) for w in weights]},
    )


# ---------------------------------------------------------------------------
# Sweeps

UNCERTAINTY_COLUMNS = ("eps", "s_pb", "s_qb", "c", "berta", "pati", "gap", "negativity")


def region_sweep(n: int = 501) -> SweepTable:
    """Scan of the reduced family's two competing w entries over a11.

    Columns keep the quadratic entry under w11 and the product entry under
    w33; lambda_max is their maximum either way. The minimum is attained at
    the two grid points nearest the symmetric pair of analytic optima.
    """
    if n < 3:
        raise OutOfRange(f"n must be >= 3, got {n}")
    rows = []
    best = None
    for u in np.linspace(0.0, 0.5, n):
        v = 0.5 - u
        w11 = 4 * (u - v) ** 2
        w33 = 16 * u * v
        lam = max(w11, w33)
        rows.append((float(u), float(w11), float(w33), float(lam)))
        if best is None or lam < best[1]:
            best = (float(u), float(lam))
    meta = {
        "argmin_a11": best[0],
        "min_lambda_max": best[1],
        "analytic_a11": REDUCED_OPT_A11,
        "analytic_a11_mirror": 0.5 - REDUCED_OPT_A11,
    }
    return SweepTable(columns=["a11", "w11", "w33", "lambda_max"], rows=rows, meta=meta)


def _uncertainty_row(eps: float, rho) -> tuple:
    P = matcore.pauli(1)
    Q = matcore.pauli(3)
    rep = uncertainty.uncertainty_gap(rho, P, Q)
    return (
        float(eps),
        rep.s_pb,
        rep.s_qb,
        rep.c,
        rep.berta,
        rep.pati,
        rep.gap,
        measures.negativity(rho),
    )


def _bisect_crossing(f, lo: float, hi: float, tol: float = 1e-4) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ArithmeticError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def chi_sweep(n: int = 101) -> SweepTable:
    """Uncertainty bounds along the mixing path from the Bell state to the
    separable extremal state, with the gap-vs-half-negativity crossing."""
    if n < 11:
        raise OutOfRange(f"n must be >= 11, got {n}")
    grid = np.linspace(0.0, 1.0, n)
    rows = parallel_map(lambda e: _uncertainty_row(e, states.chi_state(e)), grid)

    def height(e):
        row = _uncertainty_row(e, states.chi_state(e))
        return row[6] - row[7] / 2

    crossing = _bisect_crossing(height, 0.5, 0.9, tol=1e-4)
    gap_idx = max(range(len(rows)), key=lambda k: rows[k][6])
    meta = {
        "crossing_eps": crossing,
        "gap_max_eps": rows[gap_idx][0],
        "gap_max": rows[gap_idx][6],
    }
    return SweepTable(columns=list(UNCERTAINTY_COLUMNS), rows=rows, meta=meta)


def noisy_sweep(n: int = 101) -> SweepTable:
    """Same bounds along the white-noise path; the whole path is separable."""
    if n < 11:
        raise OutOfRange(f"n must be >= 11, got {n}")
    grid = np.linspace(0.0, 1.0, n)
    rows = parallel_map(lambda p: _uncertainty_row(p, states.noisy_star(p)), grid)
    all_sep = all(states.is_separable(states.noisy_star(p)) for p in grid)
    gap_idx = max(range(len(rows)), key=lambda k: rows[k][6])
    meta = {
        "all_separable": bool(all_sep),
        "gap_max_eps": rows[gap_idx][0],
        "gap_max": rows[gap_idx][6],
    }
    return SweepTable(columns=list(UNCERTAINTY_COLUMNS), rows=rows, meta=meta)


# ---------------------------------------------------------------------------
# Random separable probing


def conjecture_probe(samples: int = 2000, k_max: int = 4, seed: int = 11,
                     include_rho_star: bool = False) -> dict:
    """Sample random separable states and track the LQU ceiling.

    Mixtures of up to k_max product states; counts how many exceed 1/2 plus
    slack (expected none). Optionally appends the extremal state itself.
    """
    if samples < 1:
        raise OutOfRange(f"samples must be >= 1, got {samples}")
    if k_max < 1:
        raise OutOfRange(f"k_max must be >= 1, got {k_max}")
    rng = np.random.default_rng(seed)
    max_lqu = -1.0
    total = 0.0
    violations = 0
    for _ in range(samples):
        k = int(rng.integers(1, k_max + 1))
        rho = states.random_separable(rng, k)
        val = measures.lqu(rho)
        total += val
        if val > max_lqu:
            max_lqu = val
        if val > 0.5 + 1e-9:
            violations += 1
    n_total = samples
    if include_rho_star:
        val = measures.lqu(states.rho_star())
        total += val
        n_total += 1
        if val > max_lqu:
            max_lqu = val
        if val > 0.5 + 1e-9:
            violations += 1
    return {
        "samples": n_total,
        "k_max": k_max,
        "seed": seed,
        "include_rho_star": bool(include_rho_star),
        "max_lqu": max_lqu,
        "mean_lqu": total / n_total,
        "violations": violations,
        "all_below_half": violations == 0,
    }

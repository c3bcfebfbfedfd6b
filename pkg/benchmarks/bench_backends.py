"""Timing comparison of the compiled and pure-Python eigensolver backends.

Run from the repository root:

    python3 benchmarks/bench_backends.py [--eig-calls N] [--lqu-states N]
"""

import argparse
import time

import numpy as np

from ulab import backend, matcore, measures, states


def _hermitian_batch(rng, n, dim=4):
    out = []
    for _ in range(n):
        G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        out.append((G + G.conj().T) / 2)
    return out


def _state_batch(rng, n):
    out = []
    for _ in range(n):
        z = rng.dirichlet(np.ones(4))
        f1, f2 = rng.random(2)
        p = states.XStateParams(
            z[0], z[1], z[2], z[3],
            f1 * np.sqrt(z[0] * z[3]), f2 * np.sqrt(z[1] * z[2]),
        )
        out.append(states.x_state(p))
    return out


def bench_eig(mats):
    t0 = time.perf_counter()
    for H in mats:
        backend.jacobi_eigh(H)
    dt = time.perf_counter() - t0
    return dt / len(mats) * 1e6


def bench_sqrt(rhos):
    t0 = time.perf_counter()
    for rho in rhos:
        matcore.matrix_sqrt_psd(rho)
    dt = time.perf_counter() - t0
    return dt / len(rhos) * 1e6


def bench_lqu(rhos):
    t0 = time.perf_counter()
    for rho in rhos:
        measures.lqu(rho)
    dt = time.perf_counter() - t0
    return len(rhos) / dt


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--eig-calls", type=int, default=2000)
    parser.add_argument("--lqu-states", type=int, default=400)
    args = parser.parse_args()

    rng = np.random.default_rng(1)
    mats = _hermitian_batch(rng, args.eig_calls)
    rhos = _state_batch(rng, args.lqu_states)

    names = backend.available_backends()
    print(f"backends available: {', '.join(names)}")
    print(f"{'backend':<10} {'eigh 4x4 us':>12} {'sqrt 4x4 us':>12} {'lqu calls/s':>12}")
    original = backend.backend_name()
    try:
        for name in names:
            backend.use_backend(name)
            # warm up once so import/jit costs stay out of the numbers
            backend.jacobi_eigh(mats[0])
            eig_us = bench_eig(mats)
            sqrt_us = bench_sqrt(rhos)
            lqu_rate = bench_lqu(rhos)
            print(f"{name:<10} {eig_us:>12.1f} {sqrt_us:>12.1f} {lqu_rate:>12.0f}")
    finally:
        backend.use_backend(original)


if __name__ == "__main__":
    main()

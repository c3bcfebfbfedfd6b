"""Cyclic Jacobi eigensolver for small Hermitian matrices, pure-Python twin.

Keep this rotation-for-rotation identical to ``_jacobi.pyx`` so the two
backends agree to rounding error.
"""

from __future__ import annotations

import math

import numpy as np

# Convergence threshold on the off-diagonal Frobenius mass.
OFF_TOL = 1e-14

_MAX_SWEEPS = 100


def jacobi_eigh(H):
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    A = np.array(H, dtype=np.complex128)
    n = A.shape[0]
    a = [[complex(A[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    converged = False

    def off_mass():
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    z = a[p][q]
                    off += z.real * z.real + z.imag * z.imag
        return math.sqrt(off)

    for _ in range(_MAX_SWEEPS):
        if off_mass() < OFF_TOL:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app = a[p][p].real
                aqq = a[q][q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ph_c = phase * c
                ph_s = phase * s
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = akp * ph_c - akq * s
                    a[k][q] = akp * ph_s + akq * c
                    a[p][k] = a[k][p].conjugate()
                    a[q][k] = a[k][q].conjugate()
                a[p][p] = complex(app - t * mag)
                a[q][q] = complex(aqq + t * mag)
                a[p][q] = 0j
                a[q][p] = 0j
                for k in range(n):
                    vkp = v[k][p]
                    vkq = v[k][q]
                    v[k][p] = vkp * ph_c - vkq * s
                    v[k][q] = vkp * ph_s + vkq * c
    if not converged and off_mass() >= OFF_TOL:
        raise ArithmeticError("Jacobi sweep limit reached without convergence")
    evals = np.array([a[i][i].real for i in range(n)])
    V = np.array(v, dtype=np.complex128)
    order = np.argsort(evals, kind="stable")
    return evals[order], V[:, order]

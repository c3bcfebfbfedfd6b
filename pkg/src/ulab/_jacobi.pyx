# cython: language_level=3
"""Cyclic Jacobi eigensolver for small Hermitian matrices, compiled twin.

Keep this rotation-for-rotation identical to ``_jacobi_py`` so the two
backends agree to rounding error.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

# Convergence threshold on the off-diagonal Frobenius mass.
OFF_TOL = 1e-14

DEF _OFF_TOL = 1e-14
DEF _MAX_SWEEPS = 100


def jacobi_eigh(H):
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    A = np.array(H, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = A
    cdef double complex[:, ::1] v = V
    cdef Py_ssize_t p, q, k, sweep
    cdef double off, mag, app, aqq, tau, t, c, s
    cdef double complex apq, phase, ph_c, ph_s, akp, akq
    cdef bint converged = False

    for sweep in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
        if sqrt(off) < _OFF_TOL:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                ph_c = phase * c
                ph_s = phase * s
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * ph_c - akq * s
                    a[k, q] = akp * ph_s + akq * c
                    a[p, k] = a[k, p].conjugate()
                    a[q, k] = a[k, q].conjugate()
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0
                a[q, p] = 0
                for k in range(n):
                    akp = v[k, p]
                    akq = v[k, q]
                    v[k, p] = akp * ph_c - akq * s
                    v[k, q] = akp * ph_s + akq * c
    if not converged:
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
        if sqrt(off) >= _OFF_TOL:
            raise ArithmeticError("Jacobi sweep limit reached without convergence")
    evals = np.ascontiguousarray(np.diagonal(A).real)
    order = np.argsort(evals, kind="stable")
    return evals[order], V[:, order]

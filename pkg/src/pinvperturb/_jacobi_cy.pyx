# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled one-sided Jacobi column-orthogonalization kernel.

Behavior matches ``_jacobi_py.orthogonalize_columns`` bit-for-bit in exact
arithmetic; both run behind the same driver and contract tests.  Arrays must
be Fortran-ordered complex128.
"""

from libc.math cimport sqrt


def orthogonalize_columns(double complex[::1, :] w, double complex[::1, :] v,
                          double eps=2.220446049250313e-16, int max_sweeps=60):
    """Sweep over column pairs of ``w`` rotating each pair orthogonal.

    Returns the number of sweeps used, or -1 if the pass limit was reached
    before a sweep completed with no rotations.
    """
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t n = w.shape[1]
    cdef Py_ssize_t nv = v.shape[0]
    cdef Py_ssize_t i, j, k, sweep
    cdef double alpha, beta, mag, tau, t, c, s
    cdef double complex gamma, phase, gp, gq, wi, wj
    cdef bint rotated

    for sweep in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(m):
                    wi = w[k, i]
                    wj = w[k, j]
                    alpha += wi.real * wi.real + wi.imag * wi.imag
                    beta += wj.real * wj.real + wj.imag * wj.imag
                    gamma += wi.conjugate() * wj
                mag = abs(gamma)
                if mag <= eps * sqrt(alpha * beta):
                    continue
                rotated = True
                # unitary 2x2 that diagonalizes the Gram block [[alpha, gamma], [conj(gamma), beta]]
                phase = gamma / mag
                tau = (beta - alpha) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                gp = -s * phase.conjugate()
                gq = c * phase.conjugate()
                for k in range(m):
                    wi = w[k, i]
                    wj = w[k, j]
                    w[k, i] = c * wi + gp * wj
                    w[k, j] = s * wi + gq * wj
                for k in range(nv):
                    wi = v[k, i]
                    wj = v[k, j]
                    v[k, i] = c * wi + gp * wj
                    v[k, j] = s * wi + gq * wj
        if not rotated:
            return sweep + 1
    return -1

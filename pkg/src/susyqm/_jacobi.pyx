# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclic Jacobi sweep kernel for complex Hermitian matrices.

Mirrored one-to-one by ``susyqm._jacobi_py``; ``susyqm.spectral`` picks
whichever is available at import time.

The iterate stays exactly Hermitian: each rotation recombines the two
affected rows (contiguous memory) and restores the matching columns by
conjugation, and the rotation product is accumulated as ``V^dag`` whose
update is also row-wise.  Complex entries are handled as interleaved
(re, im) doubles so the inner loops compile to straight-line scalar
floating point.
"""

import numpy as np

from libc.math cimport sqrt


cdef double _offdiag_sq(double[:, ::1] ar, Py_ssize_t n) noexcept nogil:
    # Summed directly over off-diagonal entries: subtracting the diagonal
    # from the total Frobenius norm would cancel catastrophically once the
    # matrix is nearly diagonal.
    cdef double total = 0.0
    cdef double re, im
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                re = ar[i, 2 * j]
                im = ar[i, 2 * j + 1]
                total += re * re + im * im
    return total


cdef (int, double) _sweep_loop(double[:, ::1] ar, double[:, ::1] vr,
                               Py_ssize_t n, double tol_off, int max_sweeps,
                               bint track_vectors) noexcept nogil:
    cdef Py_ssize_t p, q, i
    cdef int sweeps = 0
    cdef double tol_sq = tol_off * tol_off
    cdef double skip = tol_off / (2.0 * n) if n > 0 else 0.0
    cdef double off_sq, app, aqq, r, re, im, tau, t, c, ts
    cdef double sr, si, xr, xi, yr, yi

    off_sq = _offdiag_sq(ar, n)
    while off_sq > tol_sq and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                re = ar[p, 2 * q]
                im = ar[p, 2 * q + 1]
                r = sqrt(re * re + im * im)
                # Entries at or below `skip` cannot keep the off-norm
                # above tol_off on their own; skipping them leaves the
                # convergence test decisive.
                if r <= skip:
                    continue
                app = ar[p, 2 * p]
                aqq = ar[q, 2 * q]
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                ts = t * c / r
                sr = ts * re
                si = ts * im
                for i in range(n):
                    xr = ar[p, 2 * i]
                    xi = ar[p, 2 * i + 1]
                    yr = ar[q, 2 * i]
                    yi = ar[q, 2 * i + 1]
                    ar[p, 2 * i] = c * xr - (sr * yr - si * yi)
                    ar[p, 2 * i + 1] = c * xi - (sr * yi + si * yr)
                    ar[q, 2 * i] = sr * xr + si * xi + c * yr
                    ar[q, 2 * i + 1] = sr * xi - si * xr + c * yi
                for i in range(n):
                    if i != p and i != q:
                        ar[i, 2 * p] = ar[p, 2 * i]
                        ar[i, 2 * p + 1] = -ar[p, 2 * i + 1]
                        ar[i, 2 * q] = ar[q, 2 * i]
                        ar[i, 2 * q + 1] = -ar[q, 2 * i + 1]
                ar[p, 2 * p] = app - t * r
                ar[p, 2 * p + 1] = 0.0
                ar[q, 2 * q] = aqq + t * r
                ar[q, 2 * q + 1] = 0.0
                ar[p, 2 * q] = 0.0
                ar[p, 2 * q + 1] = 0.0
                ar[q, 2 * p] = 0.0
                ar[q, 2 * p + 1] = 0.0
                if track_vectors:
                    for i in range(n):
                        xr = vr[p, 2 * i]
                        xi = vr[p, 2 * i + 1]
                        yr = vr[q, 2 * i]
                        yi = vr[q, 2 * i + 1]
                        vr[p, 2 * i] = c * xr - (sr * yr - si * yi)
                        vr[p, 2 * i + 1] = c * xi - (sr * yi + si * yr)
                        vr[q, 2 * i] = sr * xr + si * xi + c * yr
                        vr[q, 2 * i + 1] = sr * xi - si * xr + c * yi
        off_sq = _offdiag_sq(ar, n)
        sweeps += 1
    return sweeps, sqrt(off_sq)


def jacobi_sweeps(a, vt, double tol_off, int max_sweeps, bint track_vectors):
    """Drive ``a`` toward diagonal form with cyclic 2x2 unitary rotations.

    ``a`` must be exactly Hermitian, C-contiguous ``complex128``, and is
    modified in place.  When ``track_vectors`` is true the rotations
    accumulate into ``vt`` so that on exit ``a_in = vt^dag a_out vt`` up
    to rounding (``vt`` holds the adjoint of the eigenvector matrix).
    Returns ``(sweeps, off)`` with ``off`` the final off-diagonal
    Frobenius norm; the caller decides whether ``off`` met its target.
    """
    cdef double[:, ::1] ar = a.view(np.float64)
    cdef double[:, ::1] vr = vt.view(np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef int sweeps
    cdef double off
    with nogil:
        sweeps, off = _sweep_loop(ar, vr, n, tol_off, max_sweeps,
                                  track_vectors)
    return sweeps, off

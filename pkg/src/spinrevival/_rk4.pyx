# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-step RK4 for i*hbar dpsi/dt = H psi with constant H."""
import numpy as np
from libc.math cimport fabs, sqrt


cdef inline void _deriv(const double complex[:, ::1] A, const double complex* y,
                        double complex* out, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t a, b
    cdef double complex acc
    for a in range(d):
        acc = 0
        for b in range(d):
            acc = acc + A[a, b] * y[b]
        out[a] = acc


def rk4_propagate(H, psi0, double dt, long n_steps, long record_every,
                  double hbar=1.0, double norm_tol=1e-6):
    """Same contract as :func:`spinrevival._rk4_py.rk4_propagate`."""
    cdef double complex[:, ::1] A = np.ascontiguousarray(-1j * np.asarray(H, dtype=complex) / hbar)
    cdef Py_ssize_t d = A.shape[0]
    cdef long n_rec = n_steps // record_every + 1
    if n_steps % record_every:
        n_rec += 1
    out_np = np.empty((n_rec, d), dtype=complex)
    steps_np = np.empty(n_rec, dtype=np.int64)
    cdef double complex[:, ::1] out = out_np
    cdef long long[::1] steps = steps_np

    work_np = np.zeros((6, d), dtype=complex)
    cdef double complex[:, ::1] w = work_np
    cdef double complex* y = &w[0, 0]
    cdef double complex* k1 = &w[1, 0]
    cdef double complex* k2 = &w[2, 0]
    cdef double complex* k3 = &w[3, 0]
    cdef double complex* k4 = &w[4, 0]
    cdef double complex* tmp = &w[5, 0]

    cdef Py_ssize_t a
    cdef long step, rec = 0, failed = -1
    cdef double half = 0.5 * dt, sixth = dt / 6.0, nrm2
    cdef const double complex[::1] p0 = np.ascontiguousarray(psi0, dtype=complex)

    for a in range(d):
        y[a] = p0[a]
        out[0, a] = y[a]
    steps[0] = 0
    rec = 1

    with nogil:
        for step in range(1, n_steps + 1):
            _deriv(A, y, k1, d)
            for a in range(d):
                tmp[a] = y[a] + half * k1[a]
            _deriv(A, tmp, k2, d)
            for a in range(d):
                tmp[a] = y[a] + half * k2[a]
            _deriv(A, tmp, k3, d)
            for a in range(d):
                tmp[a] = y[a] + dt * k3[a]
            _deriv(A, tmp, k4, d)
            nrm2 = 0.0
            for a in range(d):
                y[a] = y[a] + sixth * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a])
                nrm2 = nrm2 + y[a].real * y[a].real + y[a].imag * y[a].imag
            if fabs(sqrt(nrm2) - 1.0) > norm_tol:
                failed = step
                break
            if step % record_every == 0 or step == n_steps:
                for a in range(d):
                    out[rec, a] = y[a]
                steps[rec] = step
                rec += 1

    return out_np[:rec], steps_np[:rec], failed

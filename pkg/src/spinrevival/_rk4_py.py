"""Pure numpy RK4 kernel; used when the compiled extension is absent."""
from __future__ import annotations

import numpy as np


def rk4_propagate(H, psi0, dt, n_steps, record_every, hbar=1.0, norm_tol=1e-6):
    """Fixed-step classical RK4 for ``dpsi/dt = -(i/hbar) H psi``.

    Records step 0, every ``record_every``-th step and the final step.
    Returns ``(states, step_indices, failed_step)``; ``failed_step`` is -1
    on success, otherwise the first step whose norm left ``1 +- norm_tol``
    (states recorded before it are still returned).
    """
    A = -1j * np.asarray(H, dtype=complex) / hbar
    y = np.array(psi0, dtype=complex)
    n_rec = n_steps // record_every + 1 + (1 if n_steps % record_every else 0)
    out = np.empty((n_rec, y.size), dtype=complex)
    steps = np.empty(n_rec, dtype=np.int64)
    out[0] = y
    steps[0] = 0
    rec = 1
    half, sixth = 0.5 * dt, dt / 6.0
    for step in range(1, n_steps + 1):
        k1 = A @ y
        k2 = A @ (y + half * k1)
        k3 = A @ (y + half * k2)
        k4 = A @ (y + dt * k3)
        y = y + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if abs(np.sqrt((y.real ** 2 + y.imag ** 2).sum()) - 1.0) > norm_tol:
            return out[:rec], steps[:rec], step
        if step % record_every == 0 or step == n_steps:
            out[rec] = y
            steps[rec] = step
            rec += 1
    return out[:rec], steps[:rec], -1

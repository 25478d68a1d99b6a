"""Transverse-field dynamics, tunneling-time detection and first-order
perturbation theory.

H = -S_z*bz - k*S_z^2 - S_x*bx, integrated with fixed-step classical RK4.
At ``bz/k = N`` integer two neighbouring S_z levels are degenerate and a
small ``bx`` drives coherent population transfer between them.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy.signal import find_peaks

from ._kernels import get_kernel
from .exact_evolution import DiagonalModel, Trajectory, energies, trajectory_from_states
from .spin_algebra import HBAR, HalfIntegerSpin, SpinState, expectation_rows, ladder_elements, spin_matrices

NORM_DRIFT_LIMIT = 1e-6
RESONANCE_THRESHOLD = 1e-8
# extrema smaller than this fraction of the signal's range are ripple
PROMINENCE_FRACTION = 0.1


class NormDriftError(RuntimeError):
    pass


class ExtremumNotFoundError(ValueError):
    pass


class ResonanceWarning(UserWarning):
    pass


@dataclass(frozen=True)
class FullModel:
    spin: HalfIntegerSpin
    bz: float
    k: float
    bx: float

    def __post_init__(self):
        if not all(np.isfinite(float(v)) for v in (self.bz, self.k, self.bx)):
            raise ValueError("bz, k and bx must be finite")

    def diagonal(self) -> DiagonalModel:
        return DiagonalModel(self.spin, float(self.bz), float(self.k))

    def hamiltonian(self, hbar: float = HBAR) -> np.ndarray:
        return build_hamiltonian(self, hbar)


def build_hamiltonian(model: FullModel, hbar: float = HBAR) -> np.ndarray:
    sx, _, sz = (op.entries for op in spin_matrices(model.spin, hbar))
    return -float(model.bz) * sz - float(model.k) * (sz @ sz) - float(model.bx) * sx


@dataclass(frozen=True)
class IntegratorConfig:
    t_end: float
    dt: float = 1e-2
    record_every: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not self.t_end >= 0:
            raise ValueError(f"t_end must be >= 0, got {self.t_end}")
        if self.t_end > 0 and self.dt > self.t_end:
            raise ValueError(f"dt = {self.dt} exceeds t_end = {self.t_end}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError(f"record_every must be a positive integer, got {self.record_every}")

    def n_steps(self) -> int:
        """Step count; the step is shrunk slightly so the grid ends on t_end."""
        if self.t_end == 0:
            return 0
        return max(1, math.ceil(self.t_end / self.dt - 1e-9))

    def step(self) -> float:
        n = self.n_steps()
        return self.t_end / n if n else self.dt


def integrate(
    psi0: SpinState,
    model: FullModel,
    cfg: IntegratorConfig,
    hbar: float = HBAR,
    backend: str | None = None,
) -> Trajectory:
    """Integrate the Schroedinger equation with classical RK4.

    States are never renormalized.  A norm drift beyond 1e-6 aborts with
    :class:`NormDriftError`.
    """
    if psi0.spin != model.spin:
        raise ValueError(f"state is spin {psi0.spin}, model is spin {model.spin}")
    n_steps = cfg.n_steps()
    if n_steps == 0:
        return trajectory_from_states(np.zeros(1), psi0.amplitudes[None, :], model.spin, hbar)
    h = cfg.step()
    kernel = get_kernel(backend)
    states, steps, failed = kernel(
        build_hamiltonian(model, hbar), psi0.amplitudes, h, n_steps, int(cfg.record_every),
        hbar, NORM_DRIFT_LIMIT,
    )
    if failed >= 0:
        raise NormDriftError(
            f"norm drifted by more than {NORM_DRIFT_LIMIT:g} at t = {failed * h:.6g}; "
            f"use a smaller dt (current {h:.3g})"
        )
    times = steps.astype(float) * h
    times[-1] = cfg.t_end if steps[-1] == n_steps else times[-1]
    return trajectory_from_states(times, states, model.spin, hbar)


def energy_series(traj: Trajectory, model: FullModel, hbar: float = HBAR) -> np.ndarray:
    return expectation_rows(build_hamiltonian(model, hbar), traj.states)


# -- extremum detection ------------------------------------------------------

def _vertex(times: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Three-point parabola through samples ``i-1, i, i+1``."""
    if i <= 0 or i >= len(y) - 1:
        return float(times[i]), float(y[i])
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    curv = y0 - 2.0 * y1 + y2
    if curv == 0.0 or y1 in (y0, y2):  # flat or plateau edge
        return float(times[i]), float(y1)
    offset = 0.5 * (y0 - y2) / curv
    h = 0.5 * (times[i + 1] - times[i - 1])
    return float(times[i] + offset * h), float(y1 - 0.25 * (y0 - y2) * offset)


def _extrema(traj: Trajectory, kind: str) -> list[tuple[float, float]]:
    y = np.asarray(traj.sz, dtype=float)
    span = float(np.ptp(y)) if y.size else 0.0
    if span == 0.0:
        return []
    signal = y if kind == "max" else -y
    peaks, props = find_peaks(signal, prominence=PROMINENCE_FRACTION * span, plateau_size=1)
    # earliest sample of a plateau
    idx = props["left_edges"] if len(peaks) else peaks
    return [_vertex(traj.times, y, int(i)) for i in idx]


def detect_mqt_time(traj: Trajectory) -> float:
    """Time to the first <S_z> extremum opposite to the starting one."""
    y = traj.sz
    if len(y) < 3:
        raise ExtremumNotFoundError("trajectory too short for extremum detection; increase t_end")
    mid = 0.5 * (float(np.max(y)) + float(np.min(y)))
    kind = "max" if y[0] < mid else "min"
    found = _extrema(traj, kind)
    if not found:
        raise ExtremumNotFoundError(f"no {kind}imum of <S_z> in trajectory; increase t_end")
    return found[0][0] - float(traj.times[0])


def _two_minima(traj: Trajectory) -> list[tuple[float, float]]:
    found = _extrema(traj, "min")
    if len(found) < 2:
        raise ExtremumNotFoundError(
            f"need two minima of <S_z>, found {len(found)}; increase t_end"
        )
    return found[:2]


def detect_q_evrt(traj: Trajectory) -> float:
    """Time between the first two minima of <S_z>."""
    (t1, _), (t2, _) = _two_minima(traj)
    return t2 - t1


def minima_gap(traj: Trajectory) -> float:
    """<S_z> at the first minimum minus <S_z> at the second."""
    (_, v1), (_, v2) = _two_minima(traj)
    return v1 - v2


# -- perturbation theory -----------------------------------------------------

def _coupling(model: FullModel, hbar: float) -> float:
    """``|bx * (S_x)_{1,2}|``"""
    return abs(float(model.bx) * float(ladder_elements(model.spin, hbar)[0]))


def _response(delta: float, t: float, hbar: float) -> tuple[complex, bool]:
    """``(1 - exp(-i*delta*t/hbar)) / delta`` with its resonant limit."""
    if abs(delta) * abs(t) / hbar < RESONANCE_THRESHOLD:
        return 1j * t / hbar, True
    return (1.0 - np.exp(-1j * delta * t / hbar)) / delta, False


def golden_rule_probability(model: FullModel, t: float, hbar: float = HBAR) -> float:
    """First-order probability of reaching ``|m = s>`` from ``|m = s-1>``."""
    e = energies(model.diagonal())
    delta = e[1] - e[0]
    v = float(model.bx) * ladder_elements(model.spin, hbar)[0]
    if abs(delta) * abs(t) / hbar < RESONANCE_THRESHOLD:
        return float((v * t / hbar) ** 2)
    return float(v * v * (math.sin(delta * t / (2.0 * hbar)) / (delta / 2.0)) ** 2)


@dataclass(frozen=True)
class FirstOrderResult:
    sigma: np.ndarray
    resonant: tuple[tuple[int, int], ...]


def first_order_sigma(model: FullModel, psi0: SpinState, t: float, hbar: float = HBAR) -> FirstOrderResult:
    """First-order interaction-picture corrections for every level.

    Level ``j`` is fed by its neighbours ``l = j +- 1``:
    ``sigma1_j = bx * sum_l (S_x)_{j,l} sigma_l(0) (1 - exp(-i(E_l - E_j)t/hbar)) / (E_l - E_j)``.
    Degenerate pairs are evaluated in the t-linear limit and listed in
    ``resonant`` as ``(j, l)`` index pairs.
    """
    if psi0.spin != model.spin:
        raise ValueError(f"state is spin {psi0.spin}, model is spin {model.spin}")
    e = energies(model.diagonal())
    c = ladder_elements(model.spin, hbar)
    s0 = psi0.amplitudes
    d = model.spin.dimension()
    sigma = np.zeros(d, dtype=complex)
    resonant = []
    bx = float(model.bx)
    for j in range(d):
        for l in (j - 1, j + 1):
            if not 0 <= l < d:
                continue
            g, hit = _response(e[l] - e[j], t, hbar)
            if hit and t != 0:
                resonant.append((j, l))
            sigma[j] += bx * c[min(j, l)] * s0[l] * g
    sigma.setflags(write=False)
    return FirstOrderResult(sigma, tuple(resonant))


def validity_bound(model: FullModel, hbar: float = HBAR) -> float:
    """Time below which the first-order transition probability stays <= 1."""
    v = _coupling(model, hbar)
    if v == 0.0:
        raise ValueError("bx = 0: first-order theory is exact (bound is infinite)")
    return float(hbar / v)


def _check_tunneling_condition(model: FullModel) -> None:
    k = float(model.k)
    ratio = float(model.bz) / k if k else math.inf
    near = round(ratio) if math.isfinite(ratio) else None
    if near is None or abs(ratio - near) > 1e-9 * max(1.0, abs(ratio)) or near > model.spin.twice_s:
        warnings.warn(
            f"bz/k = {ratio:g} is not an integer <= 2s = {model.spin.twice_s}; "
            "tunneling-time prediction may not apply",
            ResonanceWarning,
            stacklevel=3,
        )


def predicted_tmqt(model: FullModel, hbar: float = HBAR) -> float:
    """``pi*hbar / (2*|bx*(S_x)_{1,2}|)``"""
    v = _coupling(model, hbar)
    if v == 0.0:
        raise ValueError("bx = 0: no tunneling, predicted time is infinite")
    _check_tunneling_condition(model)
    return float(math.pi * hbar / (2.0 * v))


@dataclass(frozen=True)
class TunnelingReport:
    t_mqt_measured: float
    t_mqt_predicted: float
    t_q_evrt: float
    minima_gap: float
    validity_t: float
    ratio_q_evrt_over_mqt: float

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def ratio_mqt_over_validity(self) -> float:
        return self.t_mqt_measured / self.validity_t


def tunneling_report(traj: Trajectory, model: FullModel, hbar: float = HBAR) -> TunnelingReport:
    t_mqt = detect_mqt_time(traj)
    t_q = detect_q_evrt(traj)
    return TunnelingReport(
        t_mqt_measured=t_mqt,
        t_mqt_predicted=predicted_tmqt(model, hbar),
        t_q_evrt=t_q,
        minima_gap=minima_gap(traj),
        validity_t=validity_bound(model, hbar),
        ratio_q_evrt_over_mqt=t_q / t_mqt,
    )

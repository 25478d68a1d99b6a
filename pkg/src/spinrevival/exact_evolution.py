"""Exact time evolution for H = -S_z*bz - k*S_z^2.

The Hamiltonian is diagonal in the S_z basis, so each amplitude only picks
up a phase.  Expectation values of S_x and S_y then reduce to a Fourier
series over the 2s neighbour-level energy differences.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spin_algebra import (
    HBAR,
    HalfIntegerSpin,
    SpinState,
    expectation_rows,
    ladder_elements,
    spin_matrices,
)


@dataclass(frozen=True)
class DiagonalModel:
    spin: HalfIntegerSpin
    bz: float
    k: float

    def __post_init__(self):
        if not (np.isfinite(self.bz) and np.isfinite(self.k)):
            raise ValueError("bz and k must be finite")

    def energies(self) -> np.ndarray:
        return energies(self)


def energies(model: DiagonalModel) -> np.ndarray:
    """Diagonal energies ``-m*bz - k*m^2`` for ``m = s, ..., -s``."""
    m = model.spin.m_array()
    return -m * float(model.bz) - float(model.k) * m * m


def evolve_exact(psi0: SpinState, model: DiagonalModel, t: float, hbar: float = HBAR) -> SpinState:
    """Phase-only propagation ``phi_j(t) = phi_j(0) exp(-i E_j t / hbar)``.

    Phases are evaluated from ``t`` directly, never accumulated.
    """
    if psi0.spin != model.spin:
        raise ValueError(f"state is spin {psi0.spin}, model is spin {model.spin}")
    phases = np.exp(-1j * energies(model) * (float(t) / hbar))
    return SpinState(psi0.spin, psi0.amplitudes * phases)


@dataclass(frozen=True)
class FourierTerm:
    """One harmonic of <S_x>(t) and <S_y>(t).

    ``<S_x> += alpha*cos(omega t) + beta*sin(omega t)`` and
    ``<S_y> += alpha_y*sin(omega t) + beta_y*cos(omega t)``.
    """

    omega: float
    alpha: float
    beta: float
    alpha_y: float
    beta_y: float


@dataclass(frozen=True)
class FourierSpectrum:
    terms: tuple[FourierTerm, ...]
    constant_sz: float

    @property
    def omegas(self) -> np.ndarray:
        return np.array([term.omega for term in self.terms])

    def __len__(self) -> int:
        return len(self.terms)


def characteristic_frequencies(model: DiagonalModel, hbar: float = HBAR) -> np.ndarray:
    """``omega_i = (-bz - (2s - (2i - 1)) k) / hbar`` for ``i = 1 .. 2s``."""
    two_s = model.spin.twice_s
    i = np.arange(1, two_s + 1, dtype=float)
    return (-float(model.bz) - (two_s - (2.0 * i - 1.0)) * float(model.k)) / hbar


def fourier_spectrum(psi0: SpinState, model: DiagonalModel, hbar: float = HBAR) -> FourierSpectrum:
    if psi0.spin != model.spin:
        raise ValueError(f"state is spin {psi0.spin}, model is spin {model.spin}")
    phi = psi0.amplitudes
    c = ladder_elements(model.spin, hbar)
    omegas = characteristic_frequencies(model, hbar)
    upper, lower = phi[:-1], phi[1:]  # phi_{s-(i-1)}, phi_{s-i}
    alpha = 2.0 * c * (upper.real * lower.real + upper.imag * lower.imag)
    beta = 2.0 * c * (-upper.real * lower.imag + upper.imag * lower.real)
    terms = tuple(
        FourierTerm(float(w), float(a), float(b), float(a), float(-b))
        for w, a, b in zip(omegas, alpha, beta)
    )
    constant_sz = float(np.sum(hbar * model.spin.m_array() * np.abs(phi) ** 2))
    return FourierSpectrum(terms, constant_sz)


def eval_series(spectrum: FourierSpectrum, t):
    """Evaluate ``(sx, sy, sz)`` at time ``t`` (scalar or array)."""
    t = np.asarray(t, dtype=float)
    sx = np.zeros_like(t)
    sy = np.zeros_like(t)
    for term in spectrum.terms:
        wt = term.omega * t
        cos, sin = np.cos(wt), np.sin(wt)
        sx = sx + term.alpha * cos + term.beta * sin
        sy = sy + term.alpha_y * sin + term.beta_y * cos
    sz = np.full_like(t, spectrum.constant_sz)
    if t.ndim == 0:
        return float(sx), float(sy), float(sz)
    return sx, sy, sz


def spin1_reference(psi0: SpinState, model: DiagonalModel, t: float, hbar: float = HBAR):
    """Hand-expanded spin-1 expectation values, used as an independent oracle.

    Written with the two frequencies ``(-bz - k)`` and ``(bz - k)`` and all
    real/imaginary products spelled out.
    """
    if psi0.spin.twice_s != 2:
        raise ValueError(f"spin1_reference needs s = 1, got s = {psi0.spin}")
    p1, p0, pm = psi0.amplitudes
    bz, k = float(model.bz), float(model.k)
    nu1 = (-bz - k) * t / hbar
    nu2 = (bz - k) * t / hbar
    pref = 2.0 * hbar / np.sqrt(2.0)

    re1 = p1.real * p0.real + p1.imag * p0.imag
    im1 = p1.real * p0.imag - p1.imag * p0.real
    re2 = p0.real * pm.real + p0.imag * pm.imag
    im2 = p0.real * pm.imag - p0.imag * pm.real

    sx = pref * (
        re1 * np.cos(nu1) - im1 * np.sin(nu1) + re2 * np.cos(nu2) + im2 * np.sin(nu2)
    )
    sy = pref * (
        re1 * np.sin(nu1) + im1 * np.cos(nu1) - re2 * np.sin(nu2) + im2 * np.cos(nu2)
    )
    sz = hbar * (abs(p1) ** 2 - abs(pm) ** 2)
    return float(sx), float(sy), float(sz)


@dataclass(frozen=True)
class Trajectory:
    """Sampled time series; ``states`` holds one amplitude row per sample."""

    times: np.ndarray = field(repr=False)
    states: np.ndarray = field(repr=False)
    sx: np.ndarray = field(repr=False)
    sy: np.ndarray = field(repr=False)
    sz: np.ndarray = field(repr=False)
    norm: np.ndarray = field(repr=False)
    spin: HalfIntegerSpin | None = None

    def __post_init__(self):
        n = len(self.times)
        for name in ("states", "sx", "sy", "sz", "norm"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} has length {len(getattr(self, name))}, expected {n}")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)


def trajectory_from_states(
    times: np.ndarray, states: np.ndarray, spin: HalfIntegerSpin, hbar: float = HBAR
) -> Trajectory:
    sx, sy, sz = (op.entries for op in spin_matrices(spin, hbar))
    states = np.asarray(states, dtype=complex)
    return Trajectory(
        times=np.asarray(times, dtype=float),
        states=states,
        sx=expectation_rows(sx, states),
        sy=expectation_rows(sy, states),
        sz=expectation_rows(sz, states),
        norm=np.linalg.norm(states, axis=1),
        spin=spin,
    )


def sample_exact(
    psi0: SpinState, model: DiagonalModel, t_end: float, n_samples: int, hbar: float = HBAR
) -> Trajectory:
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    if not t_end > 0:
        raise ValueError(f"t_end must be > 0, got {t_end}")
    if psi0.spin != model.spin:
        raise ValueError(f"state is spin {psi0.spin}, model is spin {model.spin}")
    times = np.linspace(0.0, float(t_end), int(n_samples))
    phases = np.exp(-1j * np.outer(times, energies(model)) / hbar)
    states = phases * psi0.amplitudes[None, :]
    return trajectory_from_states(times, states, model.spin, hbar)

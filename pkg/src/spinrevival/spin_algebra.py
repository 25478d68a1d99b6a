"""Spin operator matrices, spin states and expectation values.

Basis ordering is descending in magnetic quantum number: amplitude index
``j`` corresponds to ``m = s - j``, so index 0 is ``|m = +s>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

#: Reduced Planck constant in the package's arbitrary units.
HBAR = 1.0

NORM_TOL = 1e-12
IMAG_TOL = 1e-12


@dataclass(frozen=True)
class HalfIntegerSpin:
    """Spin quantum number stored as ``2s`` so half-integers stay exact."""

    twice_s: int

    def __post_init__(self):
        if isinstance(self.twice_s, bool) or not isinstance(self.twice_s, (int, np.integer)):
            raise TypeError(f"twice_s must be an integer, got {self.twice_s!r}")
        if self.twice_s < 1:
            raise ValueError(f"twice_s must be >= 1, got {self.twice_s}")
        object.__setattr__(self, "twice_s", int(self.twice_s))

    @classmethod
    def parse(cls, text: str | int | float | Fraction) -> "HalfIntegerSpin":
        """Build from ``"3/2"``, ``"1"``, ``1.5`` or ``Fraction(3, 2)``."""
        if isinstance(text, str):
            value = Fraction(text.strip())
        elif isinstance(text, float):
            if not float(2 * text).is_integer():
                raise ValueError(f"{text} is not a half-integer")
            value = Fraction(text)
        else:
            value = Fraction(text)
        twice = 2 * value
        if twice.denominator != 1:
            raise ValueError(f"{text} is not a half-integer")
        return cls(int(twice))

    @property
    def s(self) -> Fraction:
        return Fraction(self.twice_s, 2)

    def dimension(self) -> int:
        return self.twice_s + 1

    def is_integer_spin(self) -> bool:
        return self.twice_s % 2 == 0

    def m_values(self) -> list[Fraction]:
        """Magnetic quantum numbers ``s, s-1, ..., -s`` as exact fractions."""
        return [self.s - j for j in range(self.dimension())]

    def m_array(self) -> np.ndarray:
        return self.twice_s / 2.0 - np.arange(self.dimension(), dtype=float)

    def label(self) -> str:
        return str(self.s)

    def __str__(self) -> str:
        return self.label()


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpinState:
    """Normalized amplitude vector ``(phi_{+s}, ..., phi_{-s})``."""

    spin: HalfIntegerSpin
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != self.spin.dimension():
            raise ValueError(
                f"spin {self.spin} needs {self.spin.dimension()} amplitudes, got {amps.shape[0]}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (sum |phi|^2 = {norm2!r})")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def basis(cls, spin: HalfIntegerSpin, m: Fraction | int | float) -> "SpinState":
        """The eigenstate ``|m>`` of S_z."""
        j = spin.s - Fraction(m)
        if j.denominator != 1 or not 0 <= j <= spin.twice_s:
            raise ValueError(f"m = {m} is not a level of spin {spin}")
        v = np.zeros(spin.dimension(), dtype=complex)
        v[int(j)] = 1.0
        return cls(spin, v)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class SpinOperatorMatrix:
    spin: HalfIntegerSpin
    axis: str
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.axis not in ("x", "y", "z"):
            raise ValueError(f"axis must be x, y or z, got {self.axis!r}")
        d = self.spin.dimension()
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got {m.shape}")
        object.__setattr__(self, "entries", _frozen(m))

    def __matmul__(self, other):
        other = other.entries if isinstance(other, SpinOperatorMatrix) else other
        return self.entries @ other


def ladder_elements(spin: HalfIntegerSpin, hbar: float = HBAR) -> np.ndarray:
    """Off-diagonal magnitudes ``(S_x)_{i,i+1}`` for ``i = 1 .. 2s``.

    ``(hbar/2) * sqrt((s+1)*2i - (i^2 + i))``, i.e. the general element
    formula with ``a = i``, ``b = i + 1``.
    """
    s = spin.twice_s / 2.0
    i = np.arange(1, spin.twice_s + 1, dtype=float)
    return 0.5 * hbar * np.sqrt((s + 1.0) * 2.0 * i - (i * i + i))


def spin_matrices(
    spin: HalfIntegerSpin, hbar: float = HBAR
) -> tuple[SpinOperatorMatrix, SpinOperatorMatrix, SpinOperatorMatrix]:
    """Return ``(S_x, S_y, S_z)`` for spin ``s`` in units of ``hbar``."""
    d = spin.dimension()
    c = ladder_elements(spin, hbar)
    sx = np.zeros((d, d), dtype=complex)
    sy = np.zeros((d, d), dtype=complex)
    idx = np.arange(d - 1)
    sx[idx, idx + 1] = c
    sx[idx + 1, idx] = c
    # -i above the diagonal, +i below: fixed by [S_x, S_y] = i hbar S_z
    sy[idx, idx + 1] = -1j * c
    sy[idx + 1, idx] = 1j * c
    sz = np.diag(hbar * spin.m_array()).astype(complex)
    return (
        SpinOperatorMatrix(spin, "x", sx),
        SpinOperatorMatrix(spin, "y", sy),
        SpinOperatorMatrix(spin, "z", sz),
    )


def _check_same_spin(a: HalfIntegerSpin, b: HalfIntegerSpin) -> None:
    if a.dimension() != b.dimension():
        raise ValueError(f"dimension mismatch: spin {a} vs spin {b}")


def expectation(op: SpinOperatorMatrix, state: SpinState) -> float:
    """``<psi|M|psi>`` for a Hermitian spin operator; returns the real part."""
    _check_same_spin(op.spin, state.spin)
    psi = state.amplitudes
    value = np.vdot(psi, op.entries @ psi)
    if abs(value.imag) >= IMAG_TOL:
        raise ValueError(f"expectation has imaginary part {value.imag:.3e}; operator not Hermitian?")
    return float(value.real)


def expectation_rows(matrix: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Real expectation values of ``matrix`` for each row of ``rows``.

    No normalization or Hermiticity checks; intended for sampled trajectories.
    """
    rows = np.atleast_2d(rows)
    return np.einsum("ij,ij->i", rows.conj(), rows @ np.asarray(matrix).T).real


def normalize(v: Sequence[complex] | np.ndarray, spin: HalfIntegerSpin) -> SpinState:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != spin.dimension():
        raise ValueError(f"spin {spin} needs {spin.dimension()} amplitudes, got {v.shape[0]}")
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n == 0.0:
        raise ValueError("cannot normalize a zero (or non-finite) vector")
    return SpinState(spin, v / n)


def commutator(a: SpinOperatorMatrix, b: SpinOperatorMatrix) -> np.ndarray:
    """``AB - BA`` as a plain complex array."""
    _check_same_spin(a.spin, b.spin)
    return a.entries @ b.entries - b.entries @ a.entries

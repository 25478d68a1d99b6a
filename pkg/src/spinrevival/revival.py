"""Exact revival times from characteristic frequencies.

All frequencies are expressed in units of ``K/hbar`` and the field enters
only through the ratio ``N = bz/K``.  A finite ``N`` is an exact
:class:`fractions.Fraction`; irrational ratios cannot be detected from
finite input and must be declared explicitly.

Revival times are returned as multiples of ``pi*hbar/K``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

import numpy as np

from .exact_evolution import FourierSpectrum
from .spin_algebra import HBAR, HalfIntegerSpin

Rational = Fraction


class DegenerateSpectrumError(ValueError):
    """Every characteristic frequency vanished; the signal is static."""


@dataclass(frozen=True)
class IntegerRatio:
    n: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.n)

    name = "integer"


@dataclass(frozen=True)
class NonIntegerRatio:
    a: int
    b: int

    def __post_init__(self):
        if self.b <= 1 or math.gcd(self.a, self.b) != 1:
            raise ValueError(f"{self.a}/{self.b} is not a reduced non-integer fraction")

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.b)

    name = "rational"


@dataclass(frozen=True)
class DeclaredIrrational:
    @property
    def value(self) -> None:
        return None

    name = "irrational"


RatioClass = Union[IntegerRatio, NonIntegerRatio, DeclaredIrrational]


def as_rational(x: Fraction | int | str) -> Fraction:
    """Exact conversion; floats are refused so no binary expansion sneaks in."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'a/b' string")
    return Fraction(x)


def classify_ratio(n: Fraction | int | str | None = None, irrational: bool = False) -> RatioClass:
    if irrational:
        return DeclaredIrrational()
    if n is None:
        raise ValueError("give a rational ratio or declare it irrational")
    q = as_rational(n)
    if q.denominator == 1:
        return IntegerRatio(q.numerator)
    return NonIntegerRatio(q.numerator, q.denominator)


@dataclass(frozen=True)
class FrequencySet:
    """Nonzero exact frequencies in units of ``K/hbar``."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if not vals:
            raise DegenerateSpectrumError("frequency set is empty")
        if any(v == 0 for v in vals):
            raise ValueError("frequency set may not contain zero")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_iterable(cls, values: Iterable[Fraction]) -> "FrequencySet":
        return cls(tuple(v for v in values if v != 0))

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


def evrt_frequencies(spin: HalfIntegerSpin, n: Fraction | int | str) -> FrequencySet:
    """``-N - (2s - (2i - 1))`` for ``i = 1 .. 2s``, zeros dropped."""
    n = as_rational(n)
    two_s = spin.twice_s
    vals = [-n - (two_s - (2 * i - 1)) for i in range(1, two_s + 1)]
    nonzero = [v for v in vals if v != 0]
    if not nonzero:
        raise DegenerateSpectrumError(f"spin {spin} with N = {n}: no oscillating component")
    return FrequencySet(tuple(nonzero))


def qrt_frequencies(spin: HalfIntegerSpin, n: Fraction | int | str) -> FrequencySet:
    """Eigenphase frequencies ``-m*N - m^2`` over all levels, zeros dropped."""
    n = as_rational(n)
    return FrequencySet.from_iterable(-m * n - m * m for m in spin.m_values())


def rational_gcd(freqs: FrequencySet | Iterable[Fraction]) -> Fraction:
    """Largest positive rational ``g`` with every ``value/g`` an integer.

    Clearing to the common denominator ``L = lcm(denominators)`` turns the
    set into integers; ``g = gcd(integers) / L``.
    """
    values = [Fraction(v) for v in freqs]
    if not values:
        raise DegenerateSpectrumError("gcd of an empty set")
    common = reduce(math.lcm, (v.denominator for v in values), 1)
    numer = reduce(math.gcd, (abs(v.numerator) * (common // v.denominator) for v in values), 0)
    if numer == 0:
        raise DegenerateSpectrumError("gcd of an all-zero set")
    return Fraction(numer, common)


@dataclass(frozen=True)
class RevivalTime:
    """``coefficient * pi*hbar/K``; ``coefficient is None`` means infinite."""

    coefficient: Fraction | None

    def __post_init__(self):
        if self.coefficient is not None and self.coefficient <= 0:
            raise ValueError("finite revival coefficient must be positive")

    @property
    def is_finite(self) -> bool:
        return self.coefficient is not None

    def value(self, k: float, hbar: float = HBAR) -> float:
        if self.coefficient is None:
            return math.inf
        return float(self.coefficient) * math.pi * hbar / float(k)

    def __str__(self) -> str:
        if self.coefficient is None:
            return "inf"
        return f"{self.coefficient}*pi*hbar/K"


INFINITE = RevivalTime(None)


def _check_k(k) -> None:
    if k == 0:
        raise ValueError("k = 0: revival times are measured in units of pi*hbar/K")


def revival_time(freqs: FrequencySet) -> RevivalTime:
    """``T = 2*pi / gcd`` expressed as a multiple of ``pi*hbar/K``."""
    return RevivalTime(Fraction(2) / rational_gcd(freqs))


def period(freqs: FrequencySet, k: float, hbar: float = HBAR) -> float:
    _check_k(k)
    return 2.0 * math.pi * hbar / (float(rational_gcd(freqs)) * abs(float(k)))


def _ratio(ratio: RatioClass | Fraction | int | str) -> RatioClass:
    if isinstance(ratio, (IntegerRatio, NonIntegerRatio, DeclaredIrrational)):
        return ratio
    return classify_ratio(ratio)


def _check_k_positive(k) -> None:
    _check_k(k)
    if k < 0:
        raise ValueError(f"k must be > 0, got {k}")


def evrt(spin: HalfIntegerSpin, ratio: RatioClass | Fraction | int | str, k: float = 1.0) -> RevivalTime:
    """Expectation-value revival time."""
    _check_k_positive(k)
    ratio = _ratio(ratio)
    if isinstance(ratio, DeclaredIrrational):
        return INFINITE
    return revival_time(evrt_frequencies(spin, ratio.value))


def qrt(spin: HalfIntegerSpin, ratio: RatioClass | Fraction | int | str, k: float = 1.0) -> RevivalTime:
    """Wave-function revival time, global phase included."""
    _check_k_positive(k)
    ratio = _ratio(ratio)
    if isinstance(ratio, DeclaredIrrational):
        return INFINITE
    return revival_time(qrt_frequencies(spin, ratio.value))


def revival_ratio(spin: HalfIntegerSpin, ratio: RatioClass | Fraction | int | str, k: float = 1.0) -> Fraction:
    """``QRT / EVRT`` as an exact fraction."""
    e = evrt(spin, ratio, k)
    q = qrt(spin, ratio, k)
    if not (e.is_finite and q.is_finite):
        raise ValueError("revival ratio is undefined for infinite revival times")
    return q.coefficient / e.coefficient


def brute_force_period(
    spectrum: FourierSpectrum | Iterable[float],
    t_max: float,
    tol: float = 1e-9,
    active_only: bool = False,
    amplitude_tol: float = 1e-14,
) -> float | None:
    """Smallest ``T`` in ``(0, t_max]`` at which every harmonic completes
    a whole number of cycles (to within ``tol`` cycles).

    Any common period is a multiple of the slowest harmonic's period, so
    the candidates ``j * 2*pi/|omega_min|`` are enumerated in order.  Works
    on floats only and never consults the rational gcd.

    ``active_only`` drops harmonics whose coefficients all vanish, giving the
    period of the signal actually produced by the initial state.
    """
    if not t_max > 0 or not tol > 0:
        raise ValueError("t_max and tol must be positive")
    if isinstance(spectrum, FourierSpectrum):
        terms = spectrum.terms
        if active_only:
            terms = [
                t for t in terms
                if max(abs(t.alpha), abs(t.beta), abs(t.alpha_y), abs(t.beta_y)) > amplitude_tol
            ]
        omegas = np.array([t.omega for t in terms], dtype=float)
    else:
        omegas = np.asarray(list(spectrum), dtype=float)
    omegas = np.abs(omegas[omegas != 0.0])
    if omegas.size == 0:
        return None
    slowest = omegas.min()
    base = 2.0 * math.pi / slowest
    ratios = omegas / slowest
    j_max = int(math.floor(t_max / base * (1.0 + 1e-12)))
    for j in range(1, j_max + 1):
        cycles = j * ratios
        if np.all(np.abs(cycles - np.rint(cycles)) <= tol):
            return j * base
    return None

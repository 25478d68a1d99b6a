"""Command-line front end.

Subcommands: ``evolve``, ``spectrum``, ``revival``, ``sweep``, ``tunnel``.
Time series go out as CSV (``%.12g`` floats); the tunneling report is JSON.
"""
from __future__ import annotations

import contextlib
import csv
import json
import re
import sys
from fractions import Fraction

import click
import numpy as np

from .exact_evolution import DiagonalModel, Trajectory, fourier_spectrum, sample_exact
from .perturbed import (
    ExtremumNotFoundError,
    FullModel,
    IntegratorConfig,
    NormDriftError,
    integrate,
    tunneling_report,
)
from .revival import (
    DeclaredIrrational,
    DegenerateSpectrumError,
    RevivalTime,
    classify_ratio,
    evrt,
    qrt,
)
from .spin_algebra import HalfIntegerSpin, SpinState, normalize

_EXACT = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")
PRESETS = ("top", "bottom", "uniform", "pair", "random")


def fmt(x: float) -> str:
    return "%.12g" % x


class Number:
    """A parsed numeric flag: ``exact`` is set only for ``a/b`` or integer input."""

    def __init__(self, text: str):
        self.text = text
        if _EXACT.match(text):
            self.exact = Fraction(text.replace(" ", ""))
            if self.exact.denominator == 0:
                raise ValueError(f"zero denominator in {text!r}")
            self.value = float(self.exact)
        else:
            self.exact = None
            self.value = float(text)

    def __repr__(self):
        return f"Number({self.text!r})"


class NumberType(click.ParamType):
    name = "number"

    def convert(self, value, param, ctx):
        if isinstance(value, Number):
            return value
        try:
            return Number(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a number or an a/b fraction", param, ctx)


class SpinType(click.ParamType):
    name = "spin"

    def convert(self, value, param, ctx):
        if isinstance(value, HalfIntegerSpin):
            return value
        try:
            return HalfIntegerSpin.parse(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a positive half-integer like 1/2, 1, 3/2", param, ctx)


NUMBER = NumberType()
SPIN = SpinType()


def parse_state(text: str, spin: HalfIntegerSpin, seed: int | None = None) -> SpinState:
    d = spin.dimension()
    name = text.strip().lower()
    if name == "top":
        v = np.eye(d)[0]
    elif name == "bottom":
        v = np.eye(d)[-1]
    elif name == "uniform":
        v = np.ones(d)
    elif name == "pair":
        v = np.zeros(d)
        v[:2] = 1.0
    elif name == "random":
        rng = np.random.default_rng(seed)
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
    else:
        try:
            v = [complex(part.strip().replace(" ", "")) for part in text.split(",")]
        except ValueError:
            raise click.BadParameter(
                f"expected one of {', '.join(PRESETS)} or {d} comma-separated amplitudes",
                param_hint="--state",
            ) from None
        if len(v) != d:
            raise click.BadParameter(f"spin {spin} needs {d} amplitudes, got {len(v)}", param_hint="--state")
    try:
        return normalize(v, spin)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--state") from None


def m_label(m: Fraction) -> str:
    if m == 0:
        return "0"
    return ("+" if m > 0 else "") + str(m)


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc.strerror}") from None
    with fh:
        yield fh


def write_trajectory_csv(traj: Trajectory, spin: HalfIntegerSpin, path: str) -> None:
    header = ["t", "sx", "sy", "sz", "norm"]
    for m in spin.m_values():
        header += [f"re_m{m_label(m)}", f"im_m{m_label(m)}"]
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for i in range(len(traj)):
            row = [traj.times[i], traj.sx[i], traj.sy[i], traj.sz[i], traj.norm[i]]
            amps = traj.states[i]
            for a in amps:
                row += [a.real, a.imag]
            w.writerow([fmt(x) for x in row])


def _summary_stream(out: str):
    """Human-readable extras go to stdout unless stdout carries the CSV."""
    return sys.stderr if out == "-" else sys.stdout


def _revival_line(label: str, t: RevivalTime, k: float) -> str:
    if not t.is_finite:
        return f"{label}: inf"
    return f"{label}: {t.coefficient}*pi*hbar/K = {fmt(t.value(k))}"


def _exact_ratio(bz: Number, k: Number) -> Fraction | None:
    if bz.exact is None or k.exact is None or k.exact == 0:
        return None
    return bz.exact / k.exact


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Revival times and magnetization tunneling of a single effective spin."""


@main.command()
@click.option("--spin", "spin", type=SPIN, required=True, help="Spin quantum number, e.g. 3/2.")
@click.option("--bz", type=NUMBER, required=True, help="Reduced field (a/b for exact).")
@click.option("--k", type=NUMBER, required=True, help="Uniaxial anisotropy (a/b for exact).")
@click.option("--state", default="uniform", show_default=True, help="Preset or amplitude list.")
@click.option("--t-end", type=float, required=True)
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=None, help="Seed for the 'random' state preset.")
@click.option("--out", default="-", show_default=True, help="CSV path, '-' for stdout.")
def evolve(spin, bz, k, state, t_end, samples, seed, out):
    """Exact evolution without transverse field, sampled to CSV."""
    psi0 = parse_state(state, spin, seed)
    model = DiagonalModel(spin, bz.value, k.value)
    try:
        traj = sample_exact(psi0, model, t_end, samples)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    write_trajectory_csv(traj, spin, out)
    n = _exact_ratio(bz, k)
    if n is not None and k.value > 0:
        stream = _summary_stream(out)
        ratio = classify_ratio(n)
        try:
            click.echo(_revival_line("evrt", evrt(spin, ratio, k.value), k.value), file=stream)
        except DegenerateSpectrumError:
            click.echo("evrt: static (no oscillating component)", file=stream)
        click.echo(_revival_line("qrt", qrt(spin, ratio, k.value), k.value), file=stream)


@main.command()
@click.option("--spin", "spin", type=SPIN, required=True)
@click.option("--bz", type=NUMBER, required=True)
@click.option("--k", type=NUMBER, required=True)
@click.option("--state", default="uniform", show_default=True)
@click.option("--seed", type=int, default=None)
def spectrum(spin, bz, k, state, seed):
    """Fourier harmonics of <S_x>(t) for the given initial state."""
    psi0 = parse_state(state, spin, seed)
    spec = fourier_spectrum(psi0, DiagonalModel(spin, bz.value, k.value))
    click.echo("i,omega,alpha,beta")
    for i, term in enumerate(spec.terms, start=1):
        click.echo(f"{i},{fmt(term.omega)},{fmt(term.alpha)},{fmt(term.beta)}")
    click.echo(f"constant_sz,{fmt(spec.constant_sz)}")


@main.command()
@click.option("--spin", "spin", type=SPIN, required=True)
@click.option("--n", "n", type=NUMBER, default=None, help="Exact ratio bz/K.")
@click.option("--bz", type=NUMBER, default=None, help="Exact field; N = bz/K.")
@click.option("--k", type=NUMBER, required=True, help="Anisotropy K > 0.")
@click.option("--irrational", is_flag=True, help="Declare bz/K irrational.")
def revival(spin, n, bz, k, irrational):
    """Exact EVRT, QRT and their ratio."""
    if not k.value > 0:
        raise click.ClickException("--k must be > 0")
    if irrational:
        ratio = DeclaredIrrational()
    else:
        if n is not None:
            if n.exact is None:
                raise click.ClickException("--n must be exact (integer or a/b), or pass --irrational")
            value = n.exact
        elif bz is not None:
            value = _exact_ratio(bz, k)
            if value is None:
                raise click.ClickException(
                    "--bz and --k must both be exact (integer or a/b), or pass --irrational"
                )
        else:
            raise click.ClickException("give --n, or --bz with --k, or --irrational")
        ratio = classify_ratio(value)
    e = _safe_evrt(spin, ratio, k.value)
    q = qrt(spin, ratio, k.value)
    click.echo(f"spin: {spin}")
    click.echo(f"ratio: {'irrational' if ratio.value is None else ratio.value}")
    click.echo(f"class: {ratio.name}")
    click.echo("evrt: static (no oscillating component)" if e is None else _revival_line("evrt", e, k.value))
    click.echo(_revival_line("qrt", q, k.value))
    if e is not None and e.is_finite and q.is_finite:
        click.echo(f"alpha: {q.coefficient / e.coefficient}")
    else:
        click.echo("alpha: undefined")


def _safe_evrt(spin, ratio, k) -> RevivalTime | None:
    try:
        return evrt(spin, ratio, k)
    except DegenerateSpectrumError:
        return None


def _parse_bz_values(bz_list: str | None, bz_range: str | None) -> list[Fraction]:
    values: list[Fraction] = []
    if bz_list:
        for part in bz_list.split(","):
            num = Number(part.strip())
            if num.exact is None:
                raise click.ClickException(f"sweep values must be exact, got {part.strip()!r}")
            values.append(num.exact)
    if bz_range:
        parts = bz_range.split(":")
        if len(parts) != 3:
            raise click.ClickException("--bz-range takes START:STOP:STEP")
        start, stop, step = (Number(p) for p in parts)
        if None in (start.exact, stop.exact, step.exact) or step.exact <= 0:
            raise click.ClickException("--bz-range needs exact values and a positive step")
        x = start.exact
        while x <= stop.exact:
            values.append(x)
            x += step.exact
    if not values:
        raise click.ClickException("give --bz or --bz-range")
    return values


@main.command()
@click.option("--spin", "spin", type=SPIN, required=True)
@click.option("--k", type=NUMBER, required=True, help="Exact anisotropy K > 0.")
@click.option("--bz", "bz_list", default=None, help="Comma-separated exact fields.")
@click.option("--bz-range", default=None, help="START:STOP:STEP, exact, inclusive.")
@click.option("--out", default="-", show_default=True)
def sweep(spin, k, bz_list, bz_range, out):
    """Revival table over a list of fields at fixed K."""
    if k.exact is None or not k.exact > 0:
        raise click.ClickException("--k must be an exact positive value for sweeps")
    values = _parse_bz_values(bz_list, bz_range)
    with _open_out(out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["bz", "n", "class", "evrt", "qrt", "alpha"])
        for bz in values:
            n = bz / k.exact
            ratio = classify_ratio(n)
            e = _safe_evrt(spin, ratio, k.value)
            q = qrt(spin, ratio, k.value)
            alpha = str(q.coefficient / e.coefficient) if e is not None else "nan"
            w.writerow([str(bz), str(n), ratio.name, fmt(e.value(k.value)) if e else "nan",
                        fmt(q.value(k.value)), alpha])


@main.command()
@click.option("--spin", "spin", type=SPIN, default="1", show_default=True)
@click.option("--bz", type=NUMBER, required=True)
@click.option("--k", type=NUMBER, required=True)
@click.option("--bx", type=float, required=True, help="Transverse field strength (nonzero).")
@click.option("--state", default="bottom", show_default=True)
@click.option("--t-end", type=float, default=1e4, show_default=True)
@click.option("--dt", type=float, default=1e-2, show_default=True)
@click.option("--record-every", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--backend", type=click.Choice(["cython", "python"]), default=None)
@click.option("--out", default="-", show_default=True, help="Trajectory CSV.")
@click.option("--report", default=None, help="JSON report path (default: summary stream).")
def tunnel(spin, bz, k, bx, state, t_end, dt, record_every, seed, backend, out, report):
    """RK4 run with a transverse field; CSV trajectory plus JSON report."""
    if bx == 0:
        raise click.ClickException("--bx must be nonzero")
    psi0 = parse_state(state, spin, seed)
    model = FullModel(spin, bz.value, k.value, bx)
    try:
        cfg = IntegratorConfig(t_end=t_end, dt=dt, record_every=record_every)
        traj = integrate(psi0, model, cfg, backend=backend)
    except (ValueError, NormDriftError) as exc:
        raise click.ClickException(str(exc)) from None
    write_trajectory_csv(traj, spin, out)
    try:
        rep = tunneling_report(traj, model)
    except ExtremumNotFoundError as exc:
        raise click.ClickException(f"tunneling detection failed: {exc}") from None
    text = json.dumps(rep.to_dict(), indent=2) + "\n"
    if report is None:
        _summary_stream(out).write(text)
    else:
        with _open_out(report) as fh:
            fh.write(text)


if __name__ == "__main__":
    main()

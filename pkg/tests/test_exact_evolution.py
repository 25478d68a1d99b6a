import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinrevival.exact_evolution import (
    DiagonalModel,
    Trajectory,
    energies,
    eval_series,
    evolve_exact,
    fourier_spectrum,
    sample_exact,
    spin1_reference,
)
from spinrevival.spin_algebra import HalfIntegerSpin, SpinState, expectation, normalize, spin_matrices


def random_state(spin, rng):
    d = spin.dimension()
    return normalize(rng.normal(size=d) + 1j * rng.normal(size=d), spin)


def direct(psi0, model, t):
    psi_t = evolve_exact(psi0, model, t)
    return tuple(expectation(op, psi_t) for op in spin_matrices(psi0.spin))


states = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, 2**32 - 1))
).map(lambda c: random_state(HalfIntegerSpin(c[0]), np.random.default_rng(c[1])))
fields = st.floats(-2, 2, allow_nan=False)
times = st.floats(-500, 500, allow_nan=False)


class TestEnergies:
    def test_spin_one(self):
        b, k = 0.37, 0.11
        np.testing.assert_allclose(
            energies(DiagonalModel(HalfIntegerSpin(2), b, k)), [-b - k, 0.0, b - k], atol=1e-16
        )

    def test_spin_half(self):
        b, k = 0.37, 0.11
        np.testing.assert_allclose(
            energies(DiagonalModel(HalfIntegerSpin(1), b, k)), [-b / 2 - k / 4, b / 2 - k / 4], atol=1e-16
        )

    def test_zero_fields(self):
        assert np.all(energies(DiagonalModel(HalfIntegerSpin(5), 0.0, 0.0)) == 0)


class TestEvolveExact:
    def test_identity_at_zero(self):
        rng = np.random.default_rng(1)
        psi = random_state(HalfIntegerSpin(3), rng)
        out = evolve_exact(psi, DiagonalModel(psi.spin, 0.3, 0.2), 0.0)
        np.testing.assert_array_equal(out.amplitudes, psi.amplitudes)

    def test_basis_state_is_stationary(self):
        spin = HalfIntegerSpin(3)
        psi = SpinState.basis(spin, spin.s)
        out = evolve_exact(psi, DiagonalModel(spin, 0.5, 0.05), 17.3)
        assert abs(abs(out.amplitudes[0]) - 1) < 1e-15
        sz = spin_matrices(spin)[2]
        assert expectation(sz, out) == pytest.approx(1.5, abs=1e-14)

    def test_full_recurrence_spin_one(self):
        # energies -0.3, 0, 0.1 all integer multiples of k = 0.1
        rng = np.random.default_rng(2)
        psi = random_state(HalfIntegerSpin(2), rng)
        out = evolve_exact(psi, DiagonalModel(psi.spin, 0.2, 0.1), 2 * math.pi / 0.1)
        np.testing.assert_allclose(out.amplitudes, psi.amplitudes, atol=1e-9, rtol=0)

    @settings(max_examples=80, deadline=None)
    @given(states, fields, fields, times)
    def test_unitary_and_phase_only(self, psi, bz, k, t):
        out = evolve_exact(psi, DiagonalModel(psi.spin, bz, k), t)
        assert abs(out.norm() - 1) < 1e-12
        np.testing.assert_allclose(np.abs(out.amplitudes), np.abs(psi.amplitudes), atol=1e-15)

    @settings(max_examples=80, deadline=None)
    @given(states, fields, fields, times, times)
    def test_composition(self, psi, bz, k, t1, t2):
        model = DiagonalModel(psi.spin, bz, k)
        twice = evolve_exact(evolve_exact(psi, model, t1), model, t2)
        once = evolve_exact(psi, model, t1 + t2)
        np.testing.assert_allclose(twice.amplitudes, once.amplitudes, atol=1e-12, rtol=0)


class TestFourierSpectrum:
    def test_spin_half_single_term(self):
        psi = normalize([1, 1j], HalfIntegerSpin(1))
        spec = fourier_spectrum(psi, DiagonalModel(psi.spin, 0.4, 0.3))
        assert len(spec) == 1
        assert spec.terms[0].omega == pytest.approx(-0.4)

    def test_real_amplitudes_have_no_beta(self):
        psi = normalize([0.3, -0.5, 0.8], HalfIntegerSpin(2))
        spec = fourier_spectrum(psi, DiagonalModel(psi.spin, 0.4, 0.3))
        assert all(term.beta == 0 for term in spec.terms)

    def test_spin_one_coefficients(self):
        r = 1 / math.sqrt(2)
        psi = SpinState(HalfIntegerSpin(2), np.array([r, r, 0]))
        spec = fourier_spectrum(psi, DiagonalModel(psi.spin, 0.2, 0.1))
        # 2 * (1/sqrt2) * (1/2)
        assert spec.terms[0].alpha == pytest.approx(r, abs=1e-15)
        assert spec.terms[1].alpha == 0

    def test_omegas(self):
        psi = normalize([1, 1, 1, 1], HalfIntegerSpin(3))
        spec = fourier_spectrum(psi, DiagonalModel(psi.spin, 0.5, 0.05))
        np.testing.assert_allclose(spec.omegas, [-0.6, -0.5, -0.4], atol=1e-15)

    def test_series_at_zero(self):
        rng = np.random.default_rng(5)
        psi = random_state(HalfIntegerSpin(5), rng)
        spec = fourier_spectrum(psi, DiagonalModel(psi.spin, 0.5, 0.05))
        sx, _, sz = eval_series(spec, 0.0)
        assert sx == pytest.approx(sum(term.alpha for term in spec.terms), abs=1e-14)
        assert sz == spec.constant_sz

    def test_vectorized_eval(self):
        rng = np.random.default_rng(6)
        psi = random_state(HalfIntegerSpin(4), rng)
        spec = fourier_spectrum(psi, DiagonalModel(psi.spin, 0.5, 0.05))
        ts = np.linspace(0, 100, 7)
        sx, sy, sz = eval_series(spec, ts)
        for i, t in enumerate(ts):
            assert (sx[i], sy[i], sz[i]) == pytest.approx(eval_series(spec, t), abs=1e-14)

    @settings(max_examples=100, deadline=None)
    @given(states, fields, fields, times)
    def test_matches_matrix_elements(self, psi, bz, k, t):
        model = DiagonalModel(psi.spin, bz, k)
        got = eval_series(fourier_spectrum(psi, model), t)
        want = direct(psi, model, t)
        np.testing.assert_allclose(got, want, atol=1e-12, rtol=0)


class TestSpin1Reference:
    def test_pure_m0(self):
        psi = SpinState.basis(HalfIntegerSpin(2), 0)
        for t in (0.0, 3.3, 120.0):
            assert spin1_reference(psi, DiagonalModel(psi.spin, 0.2, 0.1), t) == (0.0, 0.0, 0.0)

    def test_at_zero(self):
        r = 1 / math.sqrt(2)
        psi = SpinState(HalfIntegerSpin(2), np.array([r, r, 0]))
        sx, _, _ = spin1_reference(psi, DiagonalModel(psi.spin, 0.2, 0.1), 0.0)
        assert sx == pytest.approx(r, abs=1e-15)

    def test_rejects_other_spins(self):
        with pytest.raises(ValueError):
            spin1_reference(SpinState.basis(HalfIntegerSpin(1), "1/2"), DiagonalModel(HalfIntegerSpin(1), 0, 0), 0)

    def test_agrees_with_series(self):
        rng = np.random.default_rng(11)
        spin = HalfIntegerSpin(2)
        for _ in range(100):
            psi = random_state(spin, rng)
            model = DiagonalModel(spin, rng.uniform(-1, 1), rng.uniform(-1, 1))
            t = rng.uniform(-300, 300)
            got = spin1_reference(psi, model, t)
            np.testing.assert_allclose(got, eval_series(fourier_spectrum(psi, model), t), atol=1e-12, rtol=0)
            np.testing.assert_allclose(got, direct(psi, model, t), atol=1e-12, rtol=0)


class TestSampleExact:
    def test_two_samples(self):
        psi = normalize([1, 1], HalfIntegerSpin(1))
        tr = sample_exact(psi, DiagonalModel(psi.spin, 0.3, 0.1), 5.0, 2)
        np.testing.assert_array_equal(tr.times, [0.0, 5.0])

    def test_norm_column(self):
        rng = np.random.default_rng(3)
        psi = random_state(HalfIntegerSpin(6), rng)
        tr = sample_exact(psi, DiagonalModel(psi.spin, 0.3, 0.1), 500.0, 301)
        assert np.max(np.abs(tr.norm - 1)) < 1e-12

    def test_spin_three_halves_periodicity(self):
        psi = normalize([1, 1, 1, 1], HalfIntegerSpin(3))
        period = math.pi / 0.05
        tr = sample_exact(psi, DiagonalModel(psi.spin, 0.5, 0.05), 2 * period, 2001)
        np.testing.assert_allclose(tr.sx[:1001], tr.sx[1000:], atol=1e-9)
        # and it is not constant
        assert np.ptp(tr.sx) > 0.5

    @pytest.mark.parametrize("t_end,n", [(0.0, 10), (-1.0, 10), (1.0, 1)])
    def test_invalid_grid(self, t_end, n):
        psi = normalize([1, 1], HalfIntegerSpin(1))
        with pytest.raises(ValueError):
            sample_exact(psi, DiagonalModel(psi.spin, 0.3, 0.1), t_end, n)

    def test_trajectory_validation(self):
        with pytest.raises(ValueError):
            Trajectory(np.array([0.0, 0.0]), np.zeros((2, 2)), np.zeros(2), np.zeros(2), np.zeros(2), np.ones(2))

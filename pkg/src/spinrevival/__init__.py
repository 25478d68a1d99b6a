"""Quantum revivals and magnetization tunneling of a single effective spin."""
from ._kernels import BACKEND
from .exact_evolution import (
    DiagonalModel,
    FourierSpectrum,
    FourierTerm,
    Trajectory,
    energies,
    eval_series,
    evolve_exact,
    fourier_spectrum,
    sample_exact,
    spin1_reference,
)
from .perturbed import (
    FullModel,
    IntegratorConfig,
    NormDriftError,
    TunnelingReport,
    build_hamiltonian,
    detect_mqt_time,
    detect_q_evrt,
    first_order_sigma,
    golden_rule_probability,
    integrate,
    minima_gap,
    predicted_tmqt,
    tunneling_report,
    validity_bound,
)
from .revival import (
    DeclaredIrrational,
    FrequencySet,
    IntegerRatio,
    NonIntegerRatio,
    RevivalTime,
    brute_force_period,
    classify_ratio,
    evrt,
    evrt_frequencies,
    period,
    qrt,
    qrt_frequencies,
    rational_gcd,
    revival_ratio,
)
from .spin_algebra import (
    HBAR,
    HalfIntegerSpin,
    SpinOperatorMatrix,
    SpinState,
    commutator,
    expectation,
    normalize,
    spin_matrices,
)

__version__ = "0.1.0"

"""squeezelab: squeezed-coherent oscillator states, three ways.

Computes the wavefunction of D(alpha) S(xi) |0> by closed form, by
eigenfunction-series resummation, and by truncated-Fock operator algebra,
cross-validates the routes against each other, evolves the states in time,
and numerically verifies the underlying operator identities.
"""

from .core import (FockVector, GaussianWaveform, HypothesisViolated,
                   NonConvergence, NonNormalizable, OscillatorFrame,
                   OverflowGuard, SampledWavefunction, SingularFactorization,
                   SqueezedCoherentSpec, SqueezeLabError, ToleranceNotMet,
                   TruncationWarning, WindowExceeded, gaussian_norm_and_moments,
                   ho_eigenfunction, kummer_1f1, laguerre_half,
                   max_normalized_deviation, phase_align, quadrature_integrate)
from .closedform import (UncertaintyReport, ground_overlap,
                         minimum_uncertainty_residual,
                         momentum_wavefunction, normalization_phase_constant,
                         position_wavefunction, uncertainties)
from .fockexp import SeriesEvaluation, erdelyi_resummation, series_wavefunction
from .operator_engine import (FockOperator, displacement_operator,
                              evolution_operator, ladder_matrices,
                              matrix_exponential, momentum_eigenvector,
                              position_eigenvector, select_truncation,
                              squeeze_operator, squeezed_coherent_vector,
                              synthesize_wavefunction)
from .identities import (DisentangleCoefficients, RepresentationTriple,
                         closed_exponential_check, disentangle_shifted_quadratic,
                         disentangle_squeeze, exponential_conjugation,
                         exponential_reordering_check, hadamard_conjugation,
                         symplectic_rep, weyl_bch_check)
from .dynamics import (AnimationFrame, EvolutionSnapshot, animation_frames,
                       evolve, overlap, uncertainty_trajectory)

__version__ = "0.1.0"

__all__ = [
    "AnimationFrame", "DisentangleCoefficients", "EvolutionSnapshot",
    "FockOperator", "FockVector", "GaussianWaveform", "HypothesisViolated",
    "NonConvergence", "NonNormalizable", "OscillatorFrame", "OverflowGuard",
    "RepresentationTriple", "SampledWavefunction", "SeriesEvaluation",
    "SingularFactorization", "SqueezeLabError", "SqueezedCoherentSpec",
    "ToleranceNotMet", "TruncationWarning", "UncertaintyReport",
    "WindowExceeded", "animation_frames", "closed_exponential_check",
    "disentangle_shifted_quadratic", "disentangle_squeeze",
    "displacement_operator", "erdelyi_resummation", "evolution_operator",
    "evolve", "exponential_conjugation", "exponential_reordering_check",
    "gaussian_norm_and_moments",
    "ground_overlap", "hadamard_conjugation", "ho_eigenfunction",
    "kummer_1f1", "ladder_matrices", "laguerre_half", "matrix_exponential",
    "max_normalized_deviation", "minimum_uncertainty_residual",
    "momentum_eigenvector", "momentum_wavefunction",
    "normalization_phase_constant", "overlap", "phase_align",
    "position_eigenvector", "position_wavefunction", "quadrature_integrate",
    "select_truncation", "series_wavefunction", "squeeze_operator",
    "squeezed_coherent_vector", "symplectic_rep", "synthesize_wavefunction",
    "uncertainties", "uncertainty_trajectory", "weyl_bch_check",
]

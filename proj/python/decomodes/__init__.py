"""Two-qubit decoherence modes: closed-form and numerical evolution, Kraus
channels, the interferometer realisation and simulated tomography.

Density matrices are 4x4 complex numpy arrays in the basis
|up,I>, |up,II>, |down,I>, |down,II>. Modes are given as "A" or "B".
"""

from ._decomodes import (
    DomainError,
    NumericError,
    UnsupportedError,
    ValidationError,
    apply_channel,
    bell_diagonal,
    bell_state,
    concurrence,
    ensemble_average,
    ensemble_monte_carlo,
    evolve,
    experiment_initial,
    integrate_master,
    kraus_operators,
    lambda_from_sigma,
    maximally_mixed,
    measure,
    mixedness,
    project_psd,
    reconstruct,
    reconstruct_exact,
    simulate_counts,
    trotter_evolve,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

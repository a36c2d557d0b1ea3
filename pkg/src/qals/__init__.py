"""Reverse-anneal local search laboratory.

Open-system simulation of reverse-anneal cycles on transverse-field Ising
problems, single-qubit effective-temperature ladders, perturbative
tunneling diagnostics, and hybrid quantum/classical optimizers with exact
brute-force oracles.
"""

from .efftemp import EffTempPoint, amplitude_ratio, effective_temperature, ladder
from .errors import (
    ConfigError,
    ContractError,
    DimensionError,
    DomainError,
    FitError,
    IntegrationError,
    QalsError,
    ResourceError,
    TrackingError,
)
from .hybrid import (
    HybridConfig,
    SolveResult,
    classical_pt,
    classical_sa,
    q_parallel_tempering,
    q_population_annealing,
)
from .ising import (
    HardwareGraph,
    ProblemInstance,
    SpinState,
    energy,
    gauge_transform,
    hamming_distance,
    init_hamiltonian,
    random_instance,
)
from .localsearch import LocalSearchParams, SampleSet, mean_hamming, prepare_initial
from .localsearch import run as local_search_run
from .oracle import Spectrum, brute_force, gibbs_classical, gibbs_over_eigenvalues
from .perturbation import dressed_state, scaling_fit, tunneling_element
from .qsim import (
    BathParams,
    EigenSystem,
    build_hamiltonian,
    eigendecompose,
    evolve_master,
    evolve_schrodinger,
    measure,
    propagate_populations,
    spectrum_trace,
    transition_rates,
)
from .schedule import AnnealPath, Schedule, forward_path, local_search_path

__version__ = "0.1.0"

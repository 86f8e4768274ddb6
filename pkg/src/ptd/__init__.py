"""Bound states of the D-dimensional modified Poschl-Teller well.

Closed-form spectrum, eigenfunctions, normalization constants and
Hellmann-Feynman expectation values, together with the independent Numerov
and quadrature oracles used to check them.
"""
from .errors import (
    DivergentNormError,
    DomainError,
    EigenvalueNotFoundError,
    InapplicableError,
    InconsistentParameterError,
    NoBoundStateError,
    PTDError,
    ToleranceNotMetError,
    UnsupportedShapeError,
)
from .expectation import (
    ExpectationReport,
    expectation_quadrature,
    expectation_report,
    inv_r2_hft,
    kinetic,
    potential_hft,
)
from .model import PhysicalParams, ReducedParams, StateLabel, centrifugal_pair, is_bound, potential_value, reduce
from .spectrum import (
    EnergyLevel,
    count_bound_states,
    critical_alpha,
    energy,
    energy_principal,
    figure1_data,
)
from .wavefunction import (
    RadialProfile,
    RadialSolution,
    figure_profiles,
    hyperradial_u,
    normalization_quadrature,
    normalization_series,
    radial_r,
    radial_s,
    radial_solution,
)

__version__ = "0.1.0"

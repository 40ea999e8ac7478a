"""Jaynes-Cummings nonclassicality toolkit.

Simulates the resonant Jaynes-Cummings model on truncated Fock spaces and
quantifies atom-field correlation (negativity), single-mode nonclassicality
(entanglement potential at a balanced beam splitter), and the residual
nonclassicality depleted by cascaded beam-splitter layers.
"""

from .hilbert import (
    DensityOperator,
    ModeLayout,
    Spectrum,
    StateVector,
    annihilation,
    hermitian_eigenvalues,
    l1_coherence,
    negativity,
    partial_trace,
    partial_transpose,
    tensor,
    validate_density,
)
from .engine import (
    JCParams,
    ScenarioCase,
    evolve,
    initial_state,
    interaction_hamiltonian,
    reduced_states,
    sector_evolution,
    truncated_coherent,
    truncated_thermal,
)
from .nonclassicality import (
    BranchNode,
    CascadeReport,
    TotalsRecord,
    beam_splitter_unitary,
    bs_output,
    cascade,
    depletion_ratios,
    entanglement_potential,
    extrapolate_total,
    qubit_beam_splitter,
    total_nonclassicality,
)
from .cli import ScenarioConfig, compare_with_oracle, parse_config, run_scenario, write_outputs

__all__ = [
    "DensityOperator",
    "ModeLayout",
    "Spectrum",
    "StateVector",
    "annihilation",
    "hermitian_eigenvalues",
    "l1_coherence",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "tensor",
    "validate_density",
    "JCParams",
    "ScenarioCase",
    "evolve",
    "initial_state",
    "interaction_hamiltonian",
    "reduced_states",
    "sector_evolution",
    "truncated_coherent",
    "truncated_thermal",
    "BranchNode",
    "CascadeReport",
    "TotalsRecord",
    "beam_splitter_unitary",
    "bs_output",
    "cascade",
    "depletion_ratios",
    "entanglement_potential",
    "extrapolate_total",
    "qubit_beam_splitter",
    "total_nonclassicality",
    "ScenarioConfig",
    "compare_with_oracle",
    "parse_config",
    "run_scenario",
    "write_outputs",
]

__version__ = "0.1.0"

"""Gaussian-state entanglement of harmonically coupled oscillator chains.

Thin wrapper over the compiled ``_core`` module: covariance matrices of
ground and Gibbs states, logarithmic negativity of arbitrary bipartitions,
closed-form bisection results, and the scenario runner that produces CSV
datasets.
"""

from ._core import (  # noqa: F401
    ChainSpec,
    CovariancePair,
    Definiteness,
    EigenDecomposition,
    GroupSelection,
    IntRange,
    NegativityResult,
    NumericError,
    ReducedState,
    ResultTable,
    ScenarioConfig,
    ScenarioKind,
    SignPattern,
    SymMatrix,
    Topology,
    ValidationError,
    bisection_bound,
    build_potential,
    chain_log_negativity,
    circulant_eigenvalues,
    classical_correlations,
    classify_vpp_f,
    coupling_closed_form,
    covariance_for,
    csv_text,
    default_scenario,
    eigh_symmetric,
    emit_plot_script,
    even_odd_negativity,
    even_odd_rate,
    ground_covariance,
    ground_energy,
    load_scenario,
    log_negativity,
    log_negativity_oracle,
    matrix_function,
    nn_closed_form,
    parse_scenario_json,
    q_spectrum,
    reduce,
    run_scenario,
    thermal_covariance,
    write_csv,
)

__version__ = "0.1.0"

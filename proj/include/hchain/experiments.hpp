#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hchain/chain.hpp"

namespace hchain {

enum class ScenarioKind {
    BisectionGrid,          // N over contiguous group sizes (n1, n2) on a ring
    ConvergenceRatio,       // N(n1, n2) / N_plateau with n2 fixed
    EnergyVsNegativity,     // ground energy per oscillator against 2^N
    EvenOddScaling,         // even sites vs odd sites, N against chain length
    SeparationScan,         // equal contiguous groups at increasing separation
    ClassicalCorrelations,  // <X_1 X_j> of the ground state
    ThermalScan,            // bisection N of the Gibbs state against T
    QSpectrumScan,          // eigenvalues of Q - 1 above zero, against alpha
    TerminatedGrid          // BisectionGrid on the opened (terminated) chain
};

const char* scenario_kind_name(ScenarioKind kind);

struct IntRange {
    long lo = 0;
    long hi = -1;  // inclusive
    long step = 1;
    bool empty() const noexcept { return hi < lo; }
    std::vector<long> values() const;
};

/// Declarative experiment description. Fields that stay at their defaulted
/// "unset" state are filled per kind by run_scenario; see default_scenario().
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::BisectionGrid;

    /// Nearest-neighbor coupling sweep; one grid axis. Mutually exclusive with
    /// `couplings`.
    std::vector<double> alpha_sweep;
    /// Fixed coupling vector (alpha_1, alpha_2, ...) when sweeping alpha is not
    /// wanted; the alpha column then echoes alpha_1.
    std::vector<double> couplings;

    double temperature = 0.0;  // 0 selects the ground state
    long n = 0;                // fixed chain size kinds; 0 -> per-kind default
    IntRange n1, n2;           // BisectionGrid / TerminatedGrid axes
    long n2_fixed = 0;         // ConvergenceRatio fixed group size
    IntRange n_sweep;          // EvenOddScaling / ThermalScan chain-size axis
    std::vector<long> group_sizes;      // SeparationScan
    std::vector<double> temperatures;   // ThermalScan grid
};

ScenarioConfig default_scenario(ScenarioKind kind);

/// Ordered rows of named numeric columns. Row order is the lexicographic grid
/// order of the scenario ranges, never an artifact of execution order.
struct ResultTable {
    ScenarioKind kind = ScenarioKind::BisectionGrid;
    std::string parameter_echo;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Runs every grid point. Grid points with an invalid or unstable chain are
/// flagged through the trailing "status" column (0 = ok, 1 = skipped) and the
/// run continues.
ResultTable run_scenario(const ScenarioConfig& cfg);

/// Header line plus one line per row, comma separated, 12 significant digits,
/// '\n' line ends, trailing newline.
void write_csv(const ResultTable& table, std::ostream& os);
void write_csv(const ResultTable& table, const std::string& path);

/// Self-contained gnuplot script plotting the named CSV; kinds whose reference
/// figures use a logarithmic axis get the matching logscale flag.
void emit_plot_script(const ResultTable& table, const std::string& csv_path, std::ostream& os);
void emit_plot_script(const ResultTable& table, const std::string& csv_path, const std::string& path);

}  // namespace hchain

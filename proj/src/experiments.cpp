#include "hchain/experiments.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hchain/errors.hpp"
#include "hchain/format.hpp"
#include "hchain/negativity.hpp"

namespace hchain {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_grid(double lo_exp, double hi_exp, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * static_cast<double>(k) / static_cast<double>(count - 1));
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    return out;
}

double beta_of(double temperature) {
    return temperature > 0.0 ? 1.0 / temperature : std::numeric_limits<double>::infinity();
}

double bisection_negativity(long n1, long n2, std::span<const double> couplings, Topology topology,
                            double temperature) {
    ChainSpec spec;
    spec.n = static_cast<std::size_t>(n1 + n2);
    spec.couplings.assign(couplings.begin(), couplings.end());
    spec.topology = topology;
    spec.inverse_temperature = beta_of(temperature);
    std::vector<std::size_t> a(static_cast<std::size_t>(n1)), b(static_cast<std::size_t>(n2));
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), static_cast<std::size_t>(n1));
    return chain_log_negativity(spec, GroupSelection(std::move(a), std::move(b))).log_negativity;
}

std::string echo_doubles(std::span<const double> v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += render_number(v[i]);
    }
    return out + "]";
}

std::string echo_longs(std::span<const long> v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

std::string echo_range(const IntRange& r) {
    std::string out = std::to_string(r.lo) + ".." + std::to_string(r.hi);
    if (r.step != 1) out += " step " + std::to_string(r.step);
    return out;
}

}  // namespace

const char* scenario_kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::BisectionGrid: return "BisectionGrid";
        case ScenarioKind::ConvergenceRatio: return "ConvergenceRatio";
        case ScenarioKind::EnergyVsNegativity: return "EnergyVsNegativity";
        case ScenarioKind::EvenOddScaling: return "EvenOddScaling";
        case ScenarioKind::SeparationScan: return "SeparationScan";
        case ScenarioKind::ClassicalCorrelations: return "ClassicalCorrelations";
        case ScenarioKind::ThermalScan: return "ThermalScan";
        case ScenarioKind::QSpectrumScan: return "QSpectrumScan";
        case ScenarioKind::TerminatedGrid: return "TerminatedGrid";
    }
    throw validation_error("unknown scenario kind");
}

std::vector<long> IntRange::values() const {
    if (step <= 0) throw validation_error("scenario range: step must be positive");
    std::vector<long> out;
    for (long v = lo; v <= hi; v += step) out.push_back(v);
    return out;
}

ScenarioConfig default_scenario(ScenarioKind kind) {
    ScenarioConfig cfg;
    cfg.kind = kind;
    switch (kind) {
        case ScenarioKind::BisectionGrid:
        case ScenarioKind::TerminatedGrid:
            cfg.alpha_sweep = {20.0};
            cfg.n1 = {1, 30, 1};
            cfg.n2 = {1, 30, 1};
            break;
        case ScenarioKind::ConvergenceRatio:
            cfg.alpha_sweep = {0.1, 1.0, 5.0, 20.0, 50.0};
            cfg.n1 = {1, 30, 1};
            cfg.n2_fixed = 20;
            break;
        case ScenarioKind::EnergyVsNegativity:
            cfg.alpha_sweep.push_back(0.0);
            for (double a : log_grid(-2.0, 6.0, 49)) cfg.alpha_sweep.push_back(a);
            cfg.n = 20;
            break;
        case ScenarioKind::EvenOddScaling:
            cfg.alpha_sweep = {20.0};
            cfg.n_sweep = {4, 100, 2};
            break;
        case ScenarioKind::SeparationScan:
            cfg.alpha_sweep = {20.0};
            cfg.n = 40;
            cfg.group_sizes = {1, 2, 3, 4, 5};
            break;
        case ScenarioKind::ClassicalCorrelations:
            cfg.alpha_sweep = {20.0};
            cfg.n = 40;
            break;
        case ScenarioKind::ThermalScan:
            cfg.alpha_sweep = {20.0};
            cfg.n = 20;
            cfg.temperatures = linear_grid(0.0, 5.0, 51);
            break;
        case ScenarioKind::QSpectrumScan:
            cfg.alpha_sweep = log_grid(-2.0, 2.0, 41);
            cfg.n = 20;
            break;
    }
    return cfg;
}

namespace {

struct Runner {
    ScenarioConfig cfg;
    ResultTable table;

    // Per-alpha coupling vector: either the swept nearest-neighbor value or
    // the fixed vector.
    std::vector<std::pair<double, std::vector<double>>> coupling_axis;

    explicit Runner(const ScenarioConfig& in) : cfg(in) {
        const ScenarioConfig def = default_scenario(cfg.kind);
        if (!cfg.alpha_sweep.empty() && !cfg.couplings.empty())
            throw validation_error("scenario: 'alpha' sweep and fixed 'couplings' are mutually exclusive");
        if (cfg.alpha_sweep.empty() && cfg.couplings.empty()) cfg.alpha_sweep = def.alpha_sweep;
        if (cfg.n == 0) cfg.n = def.n;
        if (cfg.n1.empty()) cfg.n1 = def.n1;
        if (cfg.n2.empty()) cfg.n2 = def.n2;
        if (cfg.n2_fixed == 0) cfg.n2_fixed = def.n2_fixed;
        if (cfg.n_sweep.empty()) cfg.n_sweep = def.n_sweep;
        if (cfg.group_sizes.empty()) cfg.group_sizes = def.group_sizes;
        if (cfg.temperatures.empty()) cfg.temperatures = def.temperatures;

        for (double a : cfg.alpha_sweep)
            if (!std::isfinite(a)) throw validation_error("scenario field 'alpha': values must be finite");
        for (double a : cfg.couplings)
            if (!std::isfinite(a)) throw validation_error("scenario field 'couplings': values must be finite");
        if (std::isnan(cfg.temperature) || cfg.temperature < 0.0)
            throw validation_error("scenario field 'temperature': must be nonnegative");
        if (cfg.temperature > 0.0 && !supports_temperature(cfg.kind))
            throw validation_error("scenario field 'temperature': not supported for this kind");
        if (cfg.n < 0) throw validation_error("scenario field 'n': must be positive");
        for (long s : cfg.group_sizes)
            if (s < 1) throw validation_error("scenario field 'group_sizes': sizes must be at least 1");
        for (double t : cfg.temperatures)
            if (std::isnan(t) || t < 0.0)
                throw validation_error("scenario field 'temperature_range': temperatures must be nonnegative");

        if (cfg.couplings.empty()) {
            for (double a : cfg.alpha_sweep) coupling_axis.emplace_back(a, std::vector<double>{a});
        } else {
            coupling_axis.emplace_back(cfg.couplings.front(), cfg.couplings);
        }

        table.kind = cfg.kind;
    }

    static bool supports_temperature(ScenarioKind kind) {
        switch (kind) {
            case ScenarioKind::BisectionGrid:
            case ScenarioKind::TerminatedGrid:
            case ScenarioKind::ConvergenceRatio:
            case ScenarioKind::SeparationScan:
                return true;
            default:
                return false;
        }
    }

    void echo(const std::string& extra) {
        std::string s = std::string("kind=") + scenario_kind_name(cfg.kind);
        if (!cfg.couplings.empty())
            s += " couplings=" + echo_doubles(cfg.couplings);
        else
            s += " alpha=" + echo_doubles(cfg.alpha_sweep);
        if (supports_temperature(cfg.kind)) s += " temperature=" + render_number(cfg.temperature);
        if (!extra.empty()) s += " " + extra;
        table.parameter_echo = s;
    }

    // Emits one row; any chain validation or stability failure flags the row
    // and the sweep continues.
    template <typename Fn>
    void emit(std::vector<double> prefix, std::size_t value_count, Fn&& compute) {
        std::vector<double> row = std::move(prefix);
        try {
            const std::vector<double> values = compute();
            row.insert(row.end(), values.begin(), values.end());
            row.push_back(0.0);
        } catch (const validation_error&) {
            row.insert(row.end(), value_count, kNan);
            row.push_back(1.0);
        } catch (const numeric_error&) {
            row.insert(row.end(), value_count, kNan);
            row.push_back(1.0);
        }
        table.rows.push_back(std::move(row));
    }

    void run_bisection_grid(Topology topology) {
        table.columns = {"n1", "n2", "alpha", "N", "status"};
        echo("n1=" + echo_range(cfg.n1) + " n2=" + echo_range(cfg.n2) +
             (topology == Topology::Ring ? " topology=ring" : " topology=terminated"));
        for (const auto& [alpha, couplings] : coupling_axis)
            for (long n1 : cfg.n1.values())
                for (long n2 : cfg.n2.values())
                    emit({static_cast<double>(n1), static_cast<double>(n2), alpha}, 1, [&, n1, n2] {
                        return std::vector<double>{
                            bisection_negativity(n1, n2, couplings, topology, cfg.temperature)};
                    });
    }

    void run_convergence_ratio() {
        table.columns = {"alpha", "n1", "n2", "N", "ratio", "status"};
        echo("n1=" + echo_range(cfg.n1) + " n2=" + std::to_string(cfg.n2_fixed));
        for (const auto& [alpha, couplings] : coupling_axis) {
            double reference = kNan;
            if (couplings.size() == 1) {
                reference = nn_closed_form(couplings.front());
            } else {
                // No closed plateau form beyond nearest-neighbor; use the
                // symmetric bisection at group size 64 as the truncation.
                try {
                    reference = bisection_negativity(64, 64, couplings, Topology::Ring, cfg.temperature);
                } catch (const numeric_error&) {
                } catch (const validation_error&) {
                }
            }
            for (long n1 : cfg.n1.values())
                emit({alpha, static_cast<double>(n1), static_cast<double>(cfg.n2_fixed)}, 2, [&, n1] {
                    const double n =
                        bisection_negativity(n1, cfg.n2_fixed, couplings, Topology::Ring, cfg.temperature);
                    return std::vector<double>{n, n / reference};
                });
        }
    }

    void run_energy_vs_negativity() {
        table.columns = {"alpha",      "log_negativity",      "negativity", "energy_per_oscillator",
                         "energy_per_negativity", "status"};
        echo("n=" + std::to_string(cfg.n));
        const long half = cfg.n / 2;
        for (const auto& [alpha, couplings] : coupling_axis)
            emit({alpha}, 4, [&, couplings = couplings] {
                ChainSpec spec;
                spec.n = static_cast<std::size_t>(cfg.n);
                spec.couplings = couplings;
                const SymMatrix v = build_potential(spec);
                const double energy_per_osc = ground_energy(v) / static_cast<double>(cfg.n);
                const double log_neg =
                    bisection_negativity(half, cfg.n - half, couplings, Topology::Ring, 0.0);
                const double neg = std::exp2(log_neg);
                return std::vector<double>{log_neg, neg, energy_per_osc, energy_per_osc / neg};
            });
    }

    void run_even_odd_scaling() {
        table.columns = {"alpha", "n", "N", "N_per_n", "status"};
        echo("n=" + echo_range(cfg.n_sweep));
        for (const auto& [alpha, couplings] : coupling_axis)
            for (long n : cfg.n_sweep.values())
                emit({alpha, static_cast<double>(n)}, 2, [&, n, couplings = couplings] {
                    const double v = even_odd_negativity(static_cast<std::size_t>(n), couplings);
                    return std::vector<double>{v, v / static_cast<double>(n)};
                });
    }

    void run_separation_scan() {
        table.columns = {"alpha", "group_size", "separation", "N", "status"};
        echo("n=" + std::to_string(cfg.n) + " group_sizes=" + echo_longs(cfg.group_sizes));
        for (const auto& [alpha, couplings] : coupling_axis)
            for (long s : cfg.group_sizes) {
                // The separation counts oscillators in the smallest of the two
                // gaps on the ring, so d only runs while it is the smaller gap.
                for (long d = 0; 2 * d <= cfg.n - 2 * s; ++d)
                    emit({alpha, static_cast<double>(s), static_cast<double>(d)}, 1,
                         [&, s, d, couplings = couplings] {
                             ChainSpec spec;
                             spec.n = static_cast<std::size_t>(cfg.n);
                             spec.couplings = couplings;
                             spec.inverse_temperature = beta_of(cfg.temperature);
                             std::vector<std::size_t> a(static_cast<std::size_t>(s));
                             std::vector<std::size_t> b(static_cast<std::size_t>(s));
                             std::iota(a.begin(), a.end(), 0);
                             std::iota(b.begin(), b.end(), static_cast<std::size_t>(s + d));
                             return std::vector<double>{
                                 chain_log_negativity(spec, GroupSelection(std::move(a), std::move(b)))
                                     .log_negativity};
                         });
            }
    }

    void run_classical_correlations() {
        table.columns = {"alpha", "j", "correlation", "status"};
        echo("n=" + std::to_string(cfg.n));
        for (const auto& [alpha, couplings] : coupling_axis) {
            std::vector<double> corr;
            bool ok = true;
            try {
                ChainSpec spec;
                spec.n = static_cast<std::size_t>(cfg.n);
                spec.couplings = couplings;
                corr = classical_correlations(build_potential(spec));
            } catch (const validation_error&) {
                ok = false;
            } catch (const numeric_error&) {
                ok = false;
            }
            for (long j = 1; j <= cfg.n; ++j) {
                if (ok)
                    table.rows.push_back({alpha, static_cast<double>(j), corr[static_cast<std::size_t>(j - 1)], 0.0});
                else
                    table.rows.push_back({alpha, static_cast<double>(j), kNan, 1.0});
            }
        }
    }

    void run_thermal_scan() {
        table.columns = {"alpha", "n", "T", "N", "status"};
        const bool sweep_n = !cfg.n_sweep.empty();
        echo((sweep_n ? "n=" + echo_range(cfg.n_sweep) : "n=" + std::to_string(cfg.n)) +
             " temperatures=" + echo_doubles(cfg.temperatures));
        const std::vector<long> ns = sweep_n ? cfg.n_sweep.values() : std::vector<long>{cfg.n};
        for (const auto& [alpha, couplings] : coupling_axis)
            for (long n : ns)
                for (double t : cfg.temperatures)
                    emit({alpha, static_cast<double>(n), t}, 1, [&, n, t, couplings = couplings] {
                        return std::vector<double>{
                            bisection_negativity(n / 2, n - n / 2, couplings, Topology::Ring, t)};
                    });
    }

    void run_q_spectrum_scan() {
        table.columns = {"alpha", "k", "q_minus_one", "status"};
        echo("n=" + std::to_string(cfg.n));
        const long half = cfg.n / 2;
        for (const auto& [alpha, couplings] : coupling_axis) {
            std::vector<double> spec_desc;
            bool ok = true;
            try {
                ChainSpec spec;
                spec.n = static_cast<std::size_t>(cfg.n);
                spec.couplings = couplings;
                const auto lam = q_spectrum(build_potential(spec), true);
                for (long k = 0; k < half; ++k)
                    spec_desc.push_back(lam[static_cast<std::size_t>(cfg.n - 1 - k)] - 1.0);
            } catch (const validation_error&) {
                ok = false;
            } catch (const numeric_error&) {
                ok = false;
            }
            for (long k = 1; k <= half; ++k) {
                if (ok)
                    table.rows.push_back({alpha, static_cast<double>(k), spec_desc[static_cast<std::size_t>(k - 1)], 0.0});
                else
                    table.rows.push_back({alpha, static_cast<double>(k), kNan, 1.0});
            }
        }
    }

    ResultTable run() {
        switch (cfg.kind) {
            case ScenarioKind::BisectionGrid: run_bisection_grid(Topology::Ring); break;
            case ScenarioKind::TerminatedGrid: run_bisection_grid(Topology::Terminated); break;
            case ScenarioKind::ConvergenceRatio: run_convergence_ratio(); break;
            case ScenarioKind::EnergyVsNegativity: run_energy_vs_negativity(); break;
            case ScenarioKind::EvenOddScaling: run_even_odd_scaling(); break;
            case ScenarioKind::SeparationScan: run_separation_scan(); break;
            case ScenarioKind::ClassicalCorrelations: run_classical_correlations(); break;
            case ScenarioKind::ThermalScan: run_thermal_scan(); break;
            case ScenarioKind::QSpectrumScan: run_q_spectrum_scan(); break;
        }
        return std::move(table);
    }
};

}  // namespace

ResultTable run_scenario(const ScenarioConfig& cfg) {
    Runner runner(cfg);
    return runner.run();
}

void write_csv(const ResultTable& table, std::ostream& os) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ',';
        os << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << render_number(row[i]);
        }
        os << '\n';
    }
}

void write_csv(const ResultTable& table, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw io_error("write_csv: cannot open '" + path + "' for writing");
    write_csv(table, os);
    os.flush();
    if (!os.good()) throw io_error("write_csv: error while writing '" + path + "'");
}

namespace {

struct PlotSpec {
    std::string x_label;
    std::string y_label;
    std::string directive;  // complete plot/splot line, csv path spliced in
    bool log_y = false;
};

PlotSpec plot_spec_for(ScenarioKind kind, const std::string& csv) {
    const std::string q = "'" + csv + "'";
    switch (kind) {
        case ScenarioKind::BisectionGrid:
        case ScenarioKind::TerminatedGrid:
            return {"n1", "n2", "set dgrid3d\nsplot " + q + " using 1:2:4 skip 1 with lines", false};
        case ScenarioKind::ConvergenceRatio:
            return {"n1", "N/N_plateau", "plot " + q + " using 2:5 skip 1 with linespoints", false};
        case ScenarioKind::EnergyVsNegativity:
            return {"negativity", "energy per oscillator per unit negativity",
                    "plot " + q + " using 3:5 skip 1 with linespoints", false};
        case ScenarioKind::EvenOddScaling:
            return {"n", "N", "plot " + q + " using 2:3 skip 1 with linespoints", false};
        case ScenarioKind::SeparationScan:
            return {"separation", "N", "plot " + q + " using 3:4 skip 1 with linespoints", true};
        case ScenarioKind::ClassicalCorrelations:
            return {"j", "<X1 Xj>", "plot " + q + " using 2:3 skip 1 with linespoints", true};
        case ScenarioKind::ThermalScan:
            return {"T", "N", "plot " + q + " using 3:4 skip 1 with linespoints", false};
        case ScenarioKind::QSpectrumScan:
            return {"alpha", "eigenvalues of Q - 1", "plot " + q + " using 1:3 skip 1 with points", true};
    }
    throw validation_error("emit_plot_script: unknown scenario kind");
}

}  // namespace

void emit_plot_script(const ResultTable& table, const std::string& csv_path, std::ostream& os) {
    const PlotSpec spec = plot_spec_for(table.kind, csv_path);
    os << "# " << scenario_kind_name(table.kind) << " dataset\n";
    if (!table.parameter_echo.empty()) os << "# " << table.parameter_echo << "\n";
    os << "set datafile separator ','\n";
    os << "set datafile missing 'nan'\n";
    os << "set key off\n";
    os << "set xlabel '" << spec.x_label << "'\n";
    os << "set ylabel '" << spec.y_label << "'\n";
    if (spec.log_y) os << "set logscale y\n";
    os << spec.directive << "\n";
    os << "pause -1\n";
}

void emit_plot_script(const ResultTable& table, const std::string& csv_path, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw io_error("emit_plot_script: cannot open '" + path + "' for writing");
    emit_plot_script(table, csv_path, os);
    os.flush();
    if (!os.good()) throw io_error("emit_plot_script: error while writing '" + path + "'");
}

}  // namespace hchain

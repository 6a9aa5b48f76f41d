#include "hchain/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>

#include "hchain/errors.hpp"
#include "hchain/format.hpp"
#include "hchain/negativity.hpp"

namespace hchain {

namespace {

using nlohmann::json;

std::size_t parse_index(const std::string& token, const std::string& full) {
    std::size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(token, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != token.size() || value < 1) {
        throw validation_error("group spec '" + full + "': '" + token +
                               "' is not a positive oscillator index");
    }
    return static_cast<std::size_t>(value);
}

double parse_double_flag(const std::string& token, const char* flag) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != token.size()) {
        throw validation_error(std::string(flag) + ": '" + token + "' is not a number");
    }
    return value;
}

std::vector<double> parse_couplings(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(parse_double_flag(token, "--alpha"));
    if (out.empty()) throw validation_error("--alpha: at least one coupling is required");
    return out;
}

double beta_from_temperature(double t) {
    if (std::isnan(t) || t < 0.0) throw validation_error("--temperature: must be nonnegative");
    return t > 0.0 ? 1.0 / t : std::numeric_limits<double>::infinity();
}

Topology parse_topology(const std::string& s) {
    if (s == "ring") return Topology::Ring;
    if (s == "terminated") return Topology::Terminated;
    throw validation_error("--topology: expected 'ring' or 'terminated', got '" + s + "'");
}

// ---------------------------------------------------------------------------
// scenario JSON

ScenarioKind parse_kind(const json& j) {
    if (!j.contains("kind")) throw validation_error("scenario field 'kind': missing");
    if (!j["kind"].is_string()) throw validation_error("scenario field 'kind': must be a string");
    const std::string name = j["kind"].get<std::string>();
    for (ScenarioKind kind :
         {ScenarioKind::BisectionGrid, ScenarioKind::ConvergenceRatio, ScenarioKind::EnergyVsNegativity,
          ScenarioKind::EvenOddScaling, ScenarioKind::SeparationScan, ScenarioKind::ClassicalCorrelations,
          ScenarioKind::ThermalScan, ScenarioKind::QSpectrumScan, ScenarioKind::TerminatedGrid}) {
        if (name == scenario_kind_name(kind)) return kind;
    }
    throw validation_error("scenario field 'kind': unknown kind '" + name + "'");
}

std::vector<double> number_list(const json& j, const char* field) {
    if (!j.is_array() || j.empty())
        throw validation_error(std::string("scenario field '") + field + "': expected a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& item : j) {
        if (!item.is_number())
            throw validation_error(std::string("scenario field '") + field + "': entries must be numbers");
        out.push_back(item.get<double>());
    }
    return out;
}

long int_field(const json& j, const char* field) {
    if (!j.is_number_integer() || j.get<long>() < 1)
        throw validation_error(std::string("scenario field '") + field + "': expected a positive integer");
    return j.get<long>();
}

IntRange range_field(const json& j, const char* field) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 3))
        throw validation_error(std::string("scenario field '") + field + "': expected [lo, hi] or [lo, hi, step]");
    for (const auto& item : j)
        if (!item.is_number_integer())
            throw validation_error(std::string("scenario field '") + field + "': entries must be integers");
    IntRange r;
    r.lo = j[0].get<long>();
    r.hi = j[1].get<long>();
    r.step = j.size() == 3 ? j[2].get<long>() : 1;
    if (r.lo < 1 || r.hi < r.lo || r.step < 1)
        throw validation_error(std::string("scenario field '") + field + "': range is empty or not positive");
    return r;
}

}  // namespace

std::vector<std::size_t> parse_group_spec(const std::string& spec) {
    if (spec.empty()) throw validation_error("group spec: empty");
    std::vector<std::size_t> out;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto dash = token.find('-');
        if (dash == std::string::npos) {
            out.push_back(parse_index(token, spec) - 1);
        } else {
            const std::size_t lo = parse_index(token.substr(0, dash), spec);
            const std::size_t hi = parse_index(token.substr(dash + 1), spec);
            if (hi < lo)
                throw validation_error("group spec '" + spec + "': range '" + token + "' is descending");
            for (std::size_t v = lo; v <= hi; ++v) out.push_back(v - 1);
        }
    }
    if (out.empty()) throw validation_error("group spec '" + spec + "': no indices");
    return out;
}

ScenarioConfig parse_scenario_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw validation_error("scenario: document must be a JSON object");

    ScenarioConfig cfg;
    cfg.kind = parse_kind(doc);

    static const std::vector<std::string> known = {
        "kind",     "alpha",    "couplings",  "topology",    "temperature", "temperature_range",
        "temperatures", "n",    "n_range",    "n1_range",    "n2_range",    "n2",
        "group_sizes"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw validation_error("scenario field '" + key + "': unknown field");
        (void)value;
    }

    if (doc.contains("alpha")) cfg.alpha_sweep = number_list(doc["alpha"], "alpha");
    if (doc.contains("couplings")) cfg.couplings = number_list(doc["couplings"], "couplings");

    if (doc.contains("topology")) {
        if (!doc["topology"].is_string())
            throw validation_error("scenario field 'topology': must be a string");
        const Topology topo = parse_topology(doc["topology"].get<std::string>());
        const Topology expected =
            cfg.kind == ScenarioKind::TerminatedGrid ? Topology::Terminated : Topology::Ring;
        if (topo != expected)
            throw validation_error(std::string("scenario field 'topology': kind ") +
                                   scenario_kind_name(cfg.kind) + " runs on the " +
                                   (expected == Topology::Ring ? "ring" : "terminated") + " topology");
    }

    if (doc.contains("temperature")) {
        if (!doc["temperature"].is_number())
            throw validation_error("scenario field 'temperature': must be a number");
        cfg.temperature = doc["temperature"].get<double>();
    }
    if (doc.contains("temperature_range")) {
        const auto& r = doc["temperature_range"];
        if (!r.is_array() || r.size() != 3 || !r[0].is_number() || !r[1].is_number() ||
            !r[2].is_number_integer() || r[2].get<long>() < 1)
            throw validation_error("scenario field 'temperature_range': expected [lo, hi, count]");
        const double lo = r[0].get<double>();
        const double hi = r[1].get<double>();
        const long count = r[2].get<long>();
        if (hi < lo) throw validation_error("scenario field 'temperature_range': hi below lo");
        for (long k = 0; k < count; ++k)
            cfg.temperatures.push_back(count == 1 ? lo
                                                  : lo + (hi - lo) * static_cast<double>(k) /
                                                             static_cast<double>(count - 1));
    }
    if (doc.contains("temperatures")) {
        if (!cfg.temperatures.empty())
            throw validation_error("scenario field 'temperatures': conflicts with 'temperature_range'");
        cfg.temperatures = number_list(doc["temperatures"], "temperatures");
    }

    if (doc.contains("n")) cfg.n = int_field(doc["n"], "n");
    if (doc.contains("n2")) cfg.n2_fixed = int_field(doc["n2"], "n2");
    if (doc.contains("n1_range")) cfg.n1 = range_field(doc["n1_range"], "n1_range");
    if (doc.contains("n2_range")) cfg.n2 = range_field(doc["n2_range"], "n2_range");

    if (doc.contains("n_range")) {
        const IntRange r = range_field(doc["n_range"], "n_range");
        if (cfg.kind == ScenarioKind::BisectionGrid || cfg.kind == ScenarioKind::TerminatedGrid) {
            // Shorthand for the two group axes: n1, n2 in [1, hi/2] so the
            // total n covers the requested range.
            if (!cfg.n1.empty() || !cfg.n2.empty())
                throw validation_error("scenario field 'n_range': conflicts with 'n1_range'/'n2_range'");
            cfg.n1 = IntRange{1, r.hi / 2, 1};
            cfg.n2 = IntRange{1, r.hi / 2, 1};
        } else {
            cfg.n_sweep = r;
        }
    }

    if (doc.contains("group_sizes")) {
        const auto& g = doc["group_sizes"];
        if (!g.is_array() || g.empty())
            throw validation_error("scenario field 'group_sizes': expected a nonempty array of integers");
        for (const auto& item : g) {
            if (!item.is_number_integer() || item.get<long>() < 1)
                throw validation_error("scenario field 'group_sizes': sizes must be positive integers");
            cfg.group_sizes.push_back(item.get<long>());
        }
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("scenario: cannot open file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_json(buffer.str());
}

namespace {

struct NegativityArgs {
    long n = 0;
    std::string alpha;
    std::string topology = "ring";
    double temperature = 0.0;
    std::string group_a;
    std::string group_b;
};

struct SpectrumArgs {
    long n = 0;
    std::string alpha;
    std::string topology = "ring";
    std::string kind = "lambda";
};

struct ScenarioArgs {
    std::string file;
    std::string out_dir = ".";
    bool plot = false;
};

ChainSpec make_spec(long n, const std::string& alpha, const std::string& topology, double temperature) {
    if (n < 1) throw validation_error("--n: must be at least 1");
    ChainSpec spec;
    spec.n = static_cast<std::size_t>(n);
    spec.couplings = parse_couplings(alpha);
    spec.topology = parse_topology(topology);
    spec.inverse_temperature = beta_from_temperature(temperature);
    return spec;
}

int dispatch(const CLI::App& app, const NegativityArgs& neg, const SpectrumArgs& spectrum,
             const ScenarioArgs& scenario, std::ostream& out) {
    if (app.got_subcommand("negativity")) {
        const ChainSpec spec = make_spec(neg.n, neg.alpha, neg.topology, neg.temperature);
        const GroupSelection sel(parse_group_spec(neg.group_a), parse_group_spec(neg.group_b));
        if (sel.max_index() >= spec.n)
            throw validation_error("group spec: index " + std::to_string(sel.max_index() + 1) +
                                   " exceeds --n " + std::to_string(spec.n));
        const NegativityResult result = chain_log_negativity(spec, sel);
        out << render_number(result.log_negativity) << "\n";
        for (std::size_t i = 0; i < result.symplectic_spectrum.size(); ++i) {
            if (i) out << ' ';
            out << render_number(result.symplectic_spectrum[i]);
        }
        out << "\n";
        return 0;
    }
    if (app.got_subcommand("energy")) {
        const ChainSpec spec = make_spec(neg.n, neg.alpha, neg.topology, 0.0);
        out << render_number(ground_energy(build_potential(spec))) << "\n";
        return 0;
    }
    if (app.got_subcommand("spectrum")) {
        const ChainSpec spec = make_spec(spectrum.n, spectrum.alpha, spectrum.topology, 0.0);
        if (spectrum.kind == "lambda") {
            std::vector<double> lam;
            if (spec.topology == Topology::Ring) {
                build_potential(spec);  // stability gate
                lam = circulant_eigenvalues(ring_first_row(spec.n, spec.couplings));
            } else {
                lam = eigh_symmetric(build_potential(spec)).eigenvalues;
            }
            for (double v : lam) out << render_number(v) << "\n";
        } else if (spectrum.kind == "q") {
            for (double v : q_spectrum(build_potential(spec), true)) out << render_number(v) << "\n";
        } else {
            throw validation_error("--kind: expected 'lambda' or 'q', got '" + spectrum.kind + "'");
        }
        return 0;
    }
    if (app.got_subcommand("correlations")) {
        const ChainSpec spec = make_spec(neg.n, neg.alpha, "ring", 0.0);
        for (double v : classical_correlations(build_potential(spec))) out << render_number(v) << "\n";
        return 0;
    }
    if (app.got_subcommand("scenario")) {
        const ScenarioConfig cfg = load_scenario(scenario.file);
        const ResultTable table = run_scenario(cfg);
        const std::string base = scenario.out_dir + "/" + scenario_kind_name(table.kind);
        const std::string csv_path = base + ".csv";
        write_csv(table, csv_path);
        out << csv_path << "\n";
        if (scenario.plot) {
            const std::string gp_path = base + ".gp";
            emit_plot_script(table, csv_path, gp_path);
            out << gp_path << "\n";
        }
        return 0;
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement of harmonically coupled oscillator chains", "hchain"};
    app.require_subcommand(1);

    NegativityArgs neg;
    SpectrumArgs spectrum;
    ScenarioArgs scenario;

    auto* neg_cmd = app.add_subcommand("negativity", "Logarithmic negativity between two oscillator groups");
    neg_cmd->add_option("--n", neg.n, "Number of oscillators")->required();
    neg_cmd->add_option("--alpha", neg.alpha, "Coupling constants a1[,a2,...]")->required();
    neg_cmd->add_option("--topology", neg.topology, "ring | terminated");
    neg_cmd->add_option("--temperature", neg.temperature, "Temperature T (0 = ground state)");
    neg_cmd->add_option("--group-a", neg.group_a, "First group, e.g. 1-4 or 1,3,5-9")->required();
    neg_cmd->add_option("--group-b", neg.group_b, "Second group")->required();

    auto* energy_cmd = app.add_subcommand("energy", "Ground state energy in units of E0");
    energy_cmd->add_option("--n", neg.n, "Number of oscillators")->required();
    energy_cmd->add_option("--alpha", neg.alpha, "Coupling constants a1[,a2,...]")->required();
    energy_cmd->add_option("--topology", neg.topology, "ring | terminated");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Mode eigenvalues or the bisection Q-spectrum");
    spectrum_cmd->add_option("--n", spectrum.n, "Number of oscillators")->required();
    spectrum_cmd->add_option("--alpha", spectrum.alpha, "Coupling constants a1[,a2,...]")->required();
    spectrum_cmd->add_option("--topology", spectrum.topology, "ring | terminated");
    spectrum_cmd->add_option("--kind", spectrum.kind, "lambda | q");

    auto* corr_cmd = app.add_subcommand("correlations", "Ground state <X1 Xj> correlations (ring)");
    corr_cmd->add_option("--n", neg.n, "Number of oscillators")->required();
    corr_cmd->add_option("--alpha", neg.alpha, "Coupling constants a1[,a2,...]")->required();

    auto* scen_cmd = app.add_subcommand("scenario", "Run a declarative experiment");
    auto* run_cmd = scen_cmd->add_subcommand("run", "Execute a JSON scenario file");
    run_cmd->add_option("file", scenario.file, "Scenario JSON file")->required();
    run_cmd->add_option("--out", scenario.out_dir, "Output directory (default '.')");
    run_cmd->add_flag("--plot", scenario.plot, "Also emit a gnuplot script");
    scen_cmd->require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        return dispatch(app, neg, spectrum, scenario, out);
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace hchain

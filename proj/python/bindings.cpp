#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hchain/chain.hpp"
#include "hchain/cli.hpp"
#include "hchain/errors.hpp"
#include "hchain/experiments.hpp"
#include "hchain/linalg.hpp"
#include "hchain/negativity.hpp"

namespace py = pybind11;
using namespace hchain;

namespace {

SymMatrix sym_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1))
        throw validation_error("expected a square 2-D array");
    const auto n = static_cast<std::size_t>(arr.shape(0));
    std::vector<double> data(arr.data(), arr.data() + n * n);
    return SymMatrix(n, std::move(data));
}

py::array_t<double> sym_to_array(const SymMatrix& m) {
    const auto n = static_cast<py::ssize_t>(m.dim());
    py::array_t<double> out({n, n});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

py::array_t<double> vectors_to_array(const EigenDecomposition& e) {
    const auto n = static_cast<py::ssize_t>(e.dim);
    py::array_t<double> out({n, n});
    std::copy(e.eigenvectors.begin(), e.eigenvectors.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gaussian-state entanglement of harmonically coupled oscillator chains";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_RuntimeError);

    py::class_<SymMatrix>(m, "SymMatrix")
        .def(py::init(&sym_from_array), py::arg("array"),
             "Build from a square array; off-diagonal pairs are averaged once.")
        .def_static("identity", &SymMatrix::identity, py::arg("dim"))
        .def_property_readonly("dim", &SymMatrix::dim)
        .def("array", &sym_to_array)
        .def("trace", &SymMatrix::trace)
        .def("__getitem__",
             [](const SymMatrix& s, std::pair<std::size_t, std::size_t> ij) {
                 if (ij.first >= s.dim() || ij.second >= s.dim()) throw py::index_error();
                 return s(ij.first, ij.second);
             })
        .def("__repr__", [](const SymMatrix& s) {
            std::ostringstream os;
            os << "SymMatrix(dim=" << s.dim() << ")";
            return os.str();
        });

    py::class_<EigenDecomposition>(m, "EigenDecomposition")
        .def_readonly("eigenvalues", &EigenDecomposition::eigenvalues)
        .def_property_readonly("eigenvectors", &vectors_to_array);

    m.def("eigh_symmetric", &eigh_symmetric, py::arg("matrix"));
    m.def("matrix_function", &matrix_function, py::arg("decomposition"), py::arg("f"));
    m.def(
        "circulant_eigenvalues",
        [](const std::vector<double>& row) { return circulant_eigenvalues(row); },
        py::arg("first_row"));

    py::enum_<Topology>(m, "Topology")
        .value("Ring", Topology::Ring)
        .value("Terminated", Topology::Terminated);

    py::class_<ChainSpec>(m, "ChainSpec")
        .def(py::init([](std::size_t n, std::vector<double> couplings, Topology topology,
                         double inverse_temperature) {
                 ChainSpec spec{n, std::move(couplings), topology, inverse_temperature};
                 spec.validate();
                 return spec;
             }),
             py::arg("n"), py::arg("couplings") = std::vector<double>{},
             py::arg("topology") = Topology::Ring,
             py::arg("inverse_temperature") = std::numeric_limits<double>::infinity())
        .def_readonly("n", &ChainSpec::n)
        .def_readonly("couplings", &ChainSpec::couplings)
        .def_readonly("topology", &ChainSpec::topology)
        .def_readonly("inverse_temperature", &ChainSpec::inverse_temperature)
        .def("ground_state", &ChainSpec::ground_state);

    py::class_<CovariancePair>(m, "CovariancePair")
        .def_readonly("x_block", &CovariancePair::x_block)
        .def_readonly("p_block", &CovariancePair::p_block);

    m.def("build_potential", &build_potential, py::arg("spec"));
    m.def("ground_covariance", &ground_covariance, py::arg("potential"));
    m.def("thermal_covariance", &thermal_covariance, py::arg("potential"), py::arg("beta"));
    m.def("covariance_for", &covariance_for, py::arg("spec"));
    m.def("ground_energy", &ground_energy, py::arg("potential"),
          "Tr[V^(1/2)] in units of E0 = hbar*omega/2.");
    m.def("classical_correlations", &classical_correlations, py::arg("potential"));

    py::class_<GroupSelection>(m, "GroupSelection")
        .def(py::init<std::vector<std::size_t>, std::vector<std::size_t>>(), py::arg("group_a"),
             py::arg("group_b"), "Two disjoint groups of 0-based oscillator indices.")
        .def_property_readonly("group_a", &GroupSelection::group_a)
        .def_property_readonly("group_b", &GroupSelection::group_b);

    py::class_<SignPattern>(m, "SignPattern")
        .def(py::init([](std::vector<int> signs) { return SignPattern{std::move(signs)}; }),
             py::arg("signs"))
        .def_readonly("signs", &SignPattern::signs);

    py::class_<ReducedState>(m, "ReducedState")
        .def_readonly("x_block", &ReducedState::x_block)
        .def_readonly("p_block", &ReducedState::p_block)
        .def_readonly("signs", &ReducedState::signs);

    py::class_<NegativityResult>(m, "NegativityResult")
        .def_readonly("log_negativity", &NegativityResult::log_negativity)
        .def_readonly("symplectic_spectrum", &NegativityResult::symplectic_spectrum);

    m.def("reduce", &reduce, py::arg("covariance"), py::arg("selection"));
    m.def("log_negativity", &log_negativity, py::arg("mu_x"), py::arg("mu_p"), py::arg("signs"));
    m.def("log_negativity_oracle", &log_negativity_oracle, py::arg("mu_x"), py::arg("mu_p"),
          py::arg("signs"));
    m.def("chain_log_negativity", &chain_log_negativity, py::arg("spec"), py::arg("selection"));
    m.def("q_spectrum", &q_spectrum, py::arg("potential"), py::arg("half_split") = true);
    m.def("bisection_bound", &bisection_bound, py::arg("potential"));
    m.def(
        "coupling_closed_form",
        [](const std::vector<double>& couplings) { return coupling_closed_form(couplings); },
        py::arg("couplings"));
    m.def("nn_closed_form", &nn_closed_form, py::arg("alpha"));
    m.def(
        "even_odd_negativity",
        [](std::size_t n, const std::vector<double>& couplings) {
            return even_odd_negativity(n, couplings);
        },
        py::arg("n"), py::arg("couplings"));
    m.def("even_odd_rate", &even_odd_rate, py::arg("alpha"));

    py::enum_<Definiteness>(m, "Definiteness")
        .value("NegativeSemidefinite", Definiteness::NegativeSemidefinite)
        .value("PositiveSemidefinite", Definiteness::PositiveSemidefinite)
        .value("Indefinite", Definiteness::Indefinite);
    m.def("classify_vpp_f", &classify_vpp_f, py::arg("potential"));

    py::enum_<ScenarioKind>(m, "ScenarioKind")
        .value("BisectionGrid", ScenarioKind::BisectionGrid)
        .value("ConvergenceRatio", ScenarioKind::ConvergenceRatio)
        .value("EnergyVsNegativity", ScenarioKind::EnergyVsNegativity)
        .value("EvenOddScaling", ScenarioKind::EvenOddScaling)
        .value("SeparationScan", ScenarioKind::SeparationScan)
        .value("ClassicalCorrelations", ScenarioKind::ClassicalCorrelations)
        .value("ThermalScan", ScenarioKind::ThermalScan)
        .value("QSpectrumScan", ScenarioKind::QSpectrumScan)
        .value("TerminatedGrid", ScenarioKind::TerminatedGrid);

    py::class_<IntRange>(m, "IntRange")
        .def(py::init([](long lo, long hi, long step) { return IntRange{lo, hi, step}; }),
             py::arg("lo"), py::arg("hi"), py::arg("step") = 1)
        .def_readwrite("lo", &IntRange::lo)
        .def_readwrite("hi", &IntRange::hi)
        .def_readwrite("step", &IntRange::step);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init([](ScenarioKind kind) { return default_scenario(kind); }), py::arg("kind"),
             "Per-kind default configuration; adjust fields before running.")
        .def_readwrite("kind", &ScenarioConfig::kind)
        .def_readwrite("alpha_sweep", &ScenarioConfig::alpha_sweep)
        .def_readwrite("couplings", &ScenarioConfig::couplings)
        .def_readwrite("temperature", &ScenarioConfig::temperature)
        .def_readwrite("n", &ScenarioConfig::n)
        .def_readwrite("n1", &ScenarioConfig::n1)
        .def_readwrite("n2", &ScenarioConfig::n2)
        .def_readwrite("n2_fixed", &ScenarioConfig::n2_fixed)
        .def_readwrite("n_sweep", &ScenarioConfig::n_sweep)
        .def_readwrite("group_sizes", &ScenarioConfig::group_sizes)
        .def_readwrite("temperatures", &ScenarioConfig::temperatures);

    py::class_<ResultTable>(m, "ResultTable")
        .def_readonly("kind", &ResultTable::kind)
        .def_readonly("parameter_echo", &ResultTable::parameter_echo)
        .def_readonly("columns", &ResultTable::columns)
        .def_readonly("rows", &ResultTable::rows);

    m.def("default_scenario", &default_scenario, py::arg("kind"));
    m.def("run_scenario", &run_scenario, py::arg("config"));
    m.def(
        "write_csv",
        [](const ResultTable& table, const std::string& path) { write_csv(table, path); },
        py::arg("table"), py::arg("path"));
    m.def(
        "csv_text",
        [](const ResultTable& table) {
            std::ostringstream os;
            write_csv(table, os);
            return os.str();
        },
        py::arg("table"));
    m.def(
        "emit_plot_script",
        [](const ResultTable& table, const std::string& csv_path, const std::string& path) {
            emit_plot_script(table, csv_path, path);
        },
        py::arg("table"), py::arg("csv_path"), py::arg("path"));
    m.def("parse_scenario_json", &parse_scenario_json, py::arg("text"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
}

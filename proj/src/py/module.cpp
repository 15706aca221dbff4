#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zenodyn/analytic.hpp"
#include "zenodyn/model.hpp"
#include "zenodyn/oracles.hpp"
#include "zenodyn/run.hpp"
#include "zenodyn/version.hpp"
#include "zenodyn/zeno.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace zenodyn;

namespace {

std::vector<std::string> paths_to_strings(
    const std::vector<std::filesystem::path>& paths) {
    std::vector<std::string> out;
    out.reserve(paths.size());
    for (const auto& p : paths) out.push_back(p.string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Entanglement dynamics of two two-level atoms in a lossy cavity: "
        "exact Laplace-transform solution, Volterra and pseudomode oracles, "
        "Zeno/anti-Zeno rate analysis.";
    m.attr("__version__") = kVersion;

    py::class_<LorentzianSpectrum>(m, "LorentzianSpectrum")
        .def(py::init<double, double, double, double>(), "strength"_a,
             "center"_a, "half_width"_a, "atom_freq"_a = 0.0)
        .def_readonly("strength", &LorentzianSpectrum::strength)
        .def_readonly("center", &LorentzianSpectrum::center)
        .def_readonly("half_width", &LorentzianSpectrum::half_width)
        .def_readonly("atom_freq", &LorentzianSpectrum::atom_freq)
        .def("detuning", &LorentzianSpectrum::detuning)
        .def("weak_coupling", &LorentzianSpectrum::weak_coupling);

    py::class_<CouplingConfig>(m, "CouplingConfig")
        .def(py::init<double, double>(), "alpha1"_a, "alpha2"_a)
        .def_static("from_r1", &CouplingConfig::from_r1, "r1"_a)
        .def_readonly("alpha1", &CouplingConfig::alpha1)
        .def_readonly("alpha2", &CouplingConfig::alpha2)
        .def("norm", &CouplingConfig::norm)
        .def("r1", &CouplingConfig::r1)
        .def("r2", &CouplingConfig::r2)
        .def("rabi", &CouplingConfig::rabi, "strength"_a);

    py::class_<InitialAmplitudes>(m, "InitialAmplitudes")
        .def(py::init<cdouble, cdouble>(), "c1"_a, "c2"_a)
        .def_static("phi_plus", &InitialAmplitudes::phi_plus)
        .def_static("psi_minus", &InitialAmplitudes::psi_minus, "coupling"_a)
        .def_readonly("c1", &InitialAmplitudes::c1)
        .def_readonly("c2", &InitialAmplitudes::c2);

    py::class_<ProjectionPair>(m, "ProjectionPair")
        .def_readonly("minus", &ProjectionPair::minus)
        .def_readonly("plus", &ProjectionPair::plus);

    py::class_<AmplitudeSeries>(m, "AmplitudeSeries")
        .def_readonly("t", &AmplitudeSeries::t)
        .def_readonly("c1", &AmplitudeSeries::c1)
        .def_readonly("c2", &AmplitudeSeries::c2)
        .def_readonly("survival", &AmplitudeSeries::survival)
        .def_readonly("concurrence", &AmplitudeSeries::concurrence)
        .def("size", &AmplitudeSeries::size);

    py::class_<CharacteristicRoots>(m, "CharacteristicRoots")
        .def_readonly("s_plus", &CharacteristicRoots::s_plus)
        .def_readonly("s_minus", &CharacteristicRoots::s_minus)
        .def_readonly("degenerate", &CharacteristicRoots::degenerate);

    py::class_<SolverGrid>(m, "SolverGrid")
        .def(py::init<double, double, std::string>(), "t_end"_a, "step"_a,
             "scheme"_a = "fixed-step")
        .def_readonly("t_end", &SolverGrid::t_end)
        .def_readonly("step", &SolverGrid::step)
        .def_readonly("scheme", &SolverGrid::scheme)
        .def("steps", &SolverGrid::steps)
        .def("times", &SolverGrid::times);

    py::class_<PseudomodeState>(m, "PseudomodeState")
        .def_readonly("beta_plus", &PseudomodeState::beta_plus)
        .def_readonly("mode", &PseudomodeState::mode)
        .def_readonly("beta_minus", &PseudomodeState::beta_minus);

    py::enum_<Regime>(m, "Regime")
        .value("Zeno", Regime::Zeno)
        .value("AntiZeno", Regime::AntiZeno)
        .value("Boundary", Regime::Boundary);

    py::class_<RateReport>(m, "RateReport")
        .def_readonly("elapsed", &RateReport::elapsed)
        .def_readonly("gamma_eff", &RateReport::gamma_eff)
        .def_readonly("gamma_asym", &RateReport::gamma_asym)
        .def_readonly("gamma_fit", &RateReport::gamma_fit)
        .def_readonly("regime", &RateReport::regime);

    m.def("spectral_density", &spectral_density, "spec"_a, "omega"_a);
    m.def("correlation_kernel", &correlation_kernel, "spec"_a, "tau"_a);
    m.def("project_initial", &project_initial, "coupling"_a, "init"_a);

    m.def("characteristic_roots", &characteristic_roots, "rabi"_a,
          "half_width"_a, "detuning"_a);
    m.def("epsilon", &epsilon, "t"_a, "roots"_a, "half_width"_a, "detuning"_a);
    m.def("amplitudes", &amplitudes, "t"_a, "coupling"_a, "proj"_a, "roots"_a,
          "half_width"_a, "detuning"_a);
    m.def("survival_probability", &survival_probability, "t"_a, "roots"_a,
          "half_width"_a, "detuning"_a);
    m.def("reduced_density_matrix", &reduced_density_matrix, "c1"_a, "c2"_a);
    m.def("concurrence", &concurrence, "c1"_a, "c2"_a);
    m.def("wootters_concurrence", &wootters_concurrence, "rho"_a);

    m.def("volterra_solve", &volterra_solve, "spec"_a, "coupling"_a, "init"_a,
          "grid"_a);
    m.def(
        "pseudomode_solve",
        [](const LorentzianSpectrum& spec, const CouplingConfig& coupling,
           const InitialAmplitudes& init, const SolverGrid& grid) {
            return pseudomode_solve(spec, coupling, init, grid);
        },
        "spec"_a, "coupling"_a, "init"_a, "grid"_a);
    m.def("pseudomode_evolve", &pseudomode_evolve, "rabi"_a, "half_width"_a,
          "detuning"_a, "beta_plus0"_a, "beta_minus"_a, "grid"_a);
    m.def("analytic_series", &analytic_series, "spec"_a, "coupling"_a,
          "init"_a, "grid"_a);
    m.def("compare_series", &compare_series, "a"_a, "b"_a);

    m.def("filter_function", &filter_function, "omega"_a, "omega0"_a, "t"_a);
    m.def("effective_rate", &effective_rate, "spec"_a, "omega0"_a, "t"_a);
    m.def("asymptotic_rate", &asymptotic_rate, "spec"_a);
    m.def("classify_regime", &classify_regime, "half_width"_a, "detuning"_a);
    m.def("heuristic_rate", &heuristic_rate, "strength"_a, "half_width"_a);
    m.def("fit_rate", &fit_rate, "series"_a, "t_lo"_a, "t_hi"_a);
    m.def("half_time", &half_time, "series"_a, "level"_a = 0.5);
    m.def("rate_report", &rate_report, "spec"_a, "coupling"_a, "t_eval"_a,
          "grid"_a);

    m.def(
        "run_dynamics",
        [](const std::string& config_json) {
            return paths_to_strings(run_dynamics(parse_run_config(config_json)));
        },
        "config_json"_a,
        "Run the dynamics described by a JSON config string; returns the "
        "written file paths.");
    m.def(
        "reproduce_figure",
        [](const std::string& id, const std::string& out_dir) {
            return paths_to_strings(reproduce_figure(id, out_dir));
        },
        "id"_a, "out_dir"_a);
}

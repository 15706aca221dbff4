#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zenodyn/model.hpp"
#include "zenodyn/oracles.hpp"

namespace zenodyn {

enum class SolverChoice { Analytic, Volterra, Pseudomode, All };

const char* solver_name(SolverChoice choice);
SolverChoice parse_solver_choice(const std::string& name);  // ConfigError

/// One dynamics run, fully resolved: spectrum, couplings, initial state,
/// solver selection, grid, output directory.  Field defaults reproduce the
/// reference on-resonance case (W=1, lambda=5, delta=0, r1=r2, |phi+>).
struct RunConfig {
    double strength = 1.0;
    double half_width = 5.0;
    double detuning = 0.0;
    double alpha1 = 0.70710678118654752;
    double alpha2 = 0.70710678118654752;
    std::string initial = "phi_plus";  // phi_plus | psi_minus | custom
    cdouble custom_c1{1.0, 0.0};
    cdouble custom_c2{0.0, 0.0};
    SolverChoice solver = SolverChoice::Analytic;
    double t_end = 10.0;
    double step = 1e-3;
    std::string out_dir = "zenodyn_out";

    LorentzianSpectrum spectrum() const;  // atom at 0, cavity center at delta
    CouplingConfig coupling() const;
    InitialAmplitudes initial_state() const;
    SolverGrid grid(const std::string& scheme) const;
};

/// Parse a JSON config document; unknown keys, wrong types, and invariant
/// violations raise ConfigError naming the offending field.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& file);  // IoError too

/// A one-parameter sweep around a base config: ascending values of one of
/// lambda | delta | W | r1, with derived metrics per point.
struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
    std::vector<std::string> metrics;  // half_time | fit_rate | gamma_asym
    RunConfig base;
};

SweepSpec parse_sweep_spec(const std::string& json_text);
SweepSpec load_sweep_spec(const std::filesystem::path& file);

/// Runs the configured solver(s), writing one CSV per solver with columns
///   t,re_c1,im_c1,re_c2,im_c2,survival,concurrence
/// plus a run.json metadata sidecar; for solver "all" also a
/// comparison.json with pairwise max deviations.  Output is byte-identical
/// across repeated runs of the same config.  Returns the written paths.
std::vector<std::filesystem::path> run_dynamics(const RunConfig& config);

/// Evaluates the metrics at every sweep point (points run concurrently)
/// and writes sweep.csv with header `param,value,<metric...>` in ascending
/// parameter order, plus a sweep.json sidecar.  A failing point aborts
/// with its parameter value in the message.
std::vector<std::filesystem::path> run_sweep(const SweepSpec& spec);

/// Emits the data and a matplotlib script for one of the reference plots:
///   fig1a — C(t), lambda in {5,8,10}, delta = 0,  t in [0,10]
///   fig1b — C(t), lambda in {5,8,10}, delta = 20, t in [0,10]
///   fig2  — J(Delta), lambda in {5,8,10}, Delta in [-30,30]
std::vector<std::filesystem::path> reproduce_figure(
    const std::string& id, const std::filesystem::path& out_dir);

/// Cross-checks analytic vs Volterra vs pseudomode series on the six
/// reference parameter sets plus three strong-coupling sets, printing one
/// line per set; returns true when every deviation is within tolerance.
bool selftest(std::ostream& log);

}  // namespace zenodyn

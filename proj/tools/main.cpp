#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zenodyn/errors.hpp"
#include "zenodyn/run.hpp"
#include "zenodyn/version.hpp"
#include "zenodyn/zeno.hpp"

namespace {

void check_format(const std::string& format) {
    if (format != "csv")
        throw zenodyn::ConfigError("config: unsupported format '" + format +
                                   "' (only csv)");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace zenodyn;

    CLI::App app{
        "zenodyn - entanglement dynamics of two atoms in a lossy cavity"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir, solver_override, figure;
    std::string format = "csv";
    double lambda_flag = 5.0, delta_flag = 0.0, strength_flag = 1.0;
    double t_eval = 10.0;

    CLI::App* dynamics = app.add_subcommand(
        "dynamics", "Solve the amplitude dynamics and write CSV series");
    dynamics->add_option("--config", config_path, "JSON run config");
    dynamics->add_option("--out", out_dir, "output directory (overrides config)");
    dynamics->add_option("--solver", solver_override,
                         "analytic|volterra|pseudomode|all (overrides config)");
    dynamics->add_option("--format", format, "output format (csv)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Evaluate metrics across a one-parameter sweep");
    sweep->add_option("--config", config_path, "JSON sweep spec")->required();
    sweep->add_option("--out", out_dir, "output directory (overrides config)");
    sweep->add_option("--format", format, "output format (csv)");

    CLI::App* rate = app.add_subcommand(
        "zeno-rate",
        "Print effective, asymptotic, fitted and heuristic decay rates");
    rate->add_option("--config", config_path,
                     "JSON run config supplying the spectrum");
    CLI::Option* opt_lambda =
        rate->add_option("--lambda", lambda_flag, "cavity half width");
    CLI::Option* opt_delta =
        rate->add_option("--delta", delta_flag, "detuning omega_c - omega_0");
    CLI::Option* opt_strength =
        rate->add_option("--W", strength_flag, "coupling strength");
    rate->add_option("--t", t_eval, "elapsed time for the filtered rate");

    CLI::App* reproduce = app.add_subcommand(
        "reproduce", "Write CSV data plus a plot script for a reference figure");
    reproduce->add_option("figure", figure, "fig1a|fig1b|fig2")->required();
    reproduce->add_option("--out", out_dir, "output directory");
    reproduce->add_option("--format", format, "output format (csv)");

    CLI::App* self =
        app.add_subcommand("selftest", "Run the oracle-agreement suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage is a config error
    }

    try {
        check_format(format);
        if (dynamics->parsed()) {
            RunConfig config = config_path.empty()
                                   ? RunConfig{}
                                   : load_run_config(config_path);
            if (!out_dir.empty()) config.out_dir = out_dir;
            if (!solver_override.empty())
                config.solver = parse_solver_choice(solver_override);
            for (const auto& file : run_dynamics(config))
                std::cout << "wrote " << file.string() << "\n";
        } else if (sweep->parsed()) {
            SweepSpec spec = load_sweep_spec(config_path);
            if (!out_dir.empty()) spec.base.out_dir = out_dir;
            for (const auto& file : run_sweep(spec))
                std::cout << "wrote " << file.string() << "\n";
        } else if (rate->parsed()) {
            RunConfig config = config_path.empty()
                                   ? RunConfig{}
                                   : load_run_config(config_path);
            if (opt_lambda->count()) config.half_width = lambda_flag;
            if (opt_delta->count()) config.detuning = delta_flag;
            if (opt_strength->count()) config.strength = strength_flag;
            const RateReport report =
                rate_report(config.spectrum(), config.coupling(), t_eval,
                            config.grid("closed-form"));
            std::cout << std::setprecision(17)
                      << "lambda = " << config.half_width << "\n"
                      << "delta = " << config.detuning << "\n"
                      << "W = " << config.strength << "\n"
                      << "t = " << report.elapsed << "\n"
                      << "gamma_eff = " << report.gamma_eff << "\n"
                      << "gamma_asym = " << report.gamma_asym << "\n"
                      << "gamma_fit = " << report.gamma_fit << "\n"
                      << "heuristic = "
                      << heuristic_rate(config.strength, config.half_width)
                      << "\n"
                      << "regime = " << regime_name(report.regime) << "\n";
        } else if (reproduce->parsed()) {
            const std::filesystem::path dir(
                out_dir.empty() ? std::string("figures") : out_dir);
            for (const auto& file : reproduce_figure(figure, dir))
                std::cout << "wrote " << file.string() << "\n";
        } else if (self->parsed()) {
            return selftest(std::cout) ? 0 : 3;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include "zenodyn/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "zenodyn/errors.hpp"
#include "zenodyn/version.hpp"
#include "zenodyn/zeno.hpp"

namespace zenodyn {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// Fixed 17-significant-digit formatting: enough to round-trip doubles, and
// byte-identical across runs of the same build.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const fs::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + file.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + file.string());
}

void write_series_csv(const fs::path& file, const AmplitudeSeries& series) {
    std::string body = "t,re_c1,im_c1,re_c2,im_c2,survival,concurrence\n";
    body.reserve(body.size() + series.size() * 140);
    for (std::size_t i = 0; i < series.size(); ++i) {
        body += fmt17(series.t[i]);
        body += ',';
        body += fmt17(series.c1[i].real());
        body += ',';
        body += fmt17(series.c1[i].imag());
        body += ',';
        body += fmt17(series.c2[i].real());
        body += ',';
        body += fmt17(series.c2[i].imag());
        body += ',';
        body += fmt17(series.survival[i]);
        body += ',';
        body += fmt17(series.concurrence[i]);
        body += '\n';
    }
    write_text_file(file, body);
}

fs::path ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() +
                          ": " + ec.message());
    return dir;
}

[[noreturn]] void config_fail(const std::string& what) {
    throw ConfigError("config: " + what);
}

void check_keys(const nlohmann::json& obj, const char* scope,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end())
            config_fail(std::string("unknown key '") + item.key() + "' in " +
                        scope);
    }
}

double get_number(const nlohmann::json& obj, const char* scope,
                  const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number())
        config_fail(std::string(scope) + "." + key + " must be a number");
    return v.get<double>();
}

cdouble get_complex(const nlohmann::json& obj, const char* scope,
                    const char* key) {
    if (!obj.contains(key))
        config_fail(std::string(scope) + "." + key +
                    " is required for the custom initial state");
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number())
        config_fail(std::string(scope) + "." + key +
                    " must be a [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

// Constructing the domain objects runs every type invariant; surface any
// violation as a config diagnostic.
void validate_config(const RunConfig& config) {
    try {
        config.spectrum();
        config.coupling();
        config.initial_state();
        config.grid("validate");
    } catch (const std::invalid_argument& e) {
        config_fail(e.what());
    }
}

ordered_json parameters_json(const RunConfig& config) {
    const CouplingConfig coupling = config.coupling();
    const InitialAmplitudes init = config.initial_state();
    ordered_json p;
    p["W"] = config.strength;
    p["lambda"] = config.half_width;
    p["delta"] = config.detuning;
    p["alpha1"] = config.alpha1;
    p["alpha2"] = config.alpha2;
    p["r1"] = coupling.r1();
    p["r2"] = coupling.r2();
    p["rabi"] = coupling.rabi(config.strength);
    p["initial"] = config.initial;
    p["c1_0"] = {init.c1.real(), init.c1.imag()};
    p["c2_0"] = {init.c2.real(), init.c2.imag()};
    p["solver"] = solver_name(config.solver);
    p["t_end"] = config.t_end;
    p["h"] = config.step;
    return p;
}

std::string plot_script(const std::string& csv_name,
                        const std::string& png_name, const std::string& xlabel,
                        const std::string& ylabel) {
    std::ostringstream s;
    s << "#!/usr/bin/env python3\n"
      << "\"\"\"Plot " << csv_name << " (expected in this directory).\"\"\"\n"
      << "import csv\n"
      << "import os\n\n"
      << "import matplotlib\n\n"
      << "matplotlib.use(\"Agg\")\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "here = os.path.dirname(os.path.abspath(__file__))\n"
      << "with open(os.path.join(here, \"" << csv_name << "\")) as fh:\n"
      << "    rows = list(csv.reader(fh))\n"
      << "header = rows[0]\n"
      << "data = [[float(v) for v in row] for row in rows[1:]]\n"
      << "x = [row[0] for row in data]\n"
      << "for col, name in enumerate(header[1:], start=1):\n"
      << "    plt.plot(x, [row[col] for row in data], label=name)\n"
      << "plt.xlabel(\"" << xlabel << "\")\n"
      << "plt.ylabel(\"" << ylabel << "\")\n"
      << "plt.legend()\n"
      << "plt.tight_layout()\n"
      << "out = os.path.join(here, \"" << png_name << "\")\n"
      << "plt.savefig(out, dpi=160)\n"
      << "print(\"wrote\", out)\n";
    return s.str();
}

}  // namespace

const char* solver_name(SolverChoice choice) {
    switch (choice) {
        case SolverChoice::Analytic: return "analytic";
        case SolverChoice::Volterra: return "volterra";
        case SolverChoice::Pseudomode: return "pseudomode";
        default: return "all";
    }
}

SolverChoice parse_solver_choice(const std::string& name) {
    if (name == "analytic") return SolverChoice::Analytic;
    if (name == "volterra") return SolverChoice::Volterra;
    if (name == "pseudomode") return SolverChoice::Pseudomode;
    if (name == "all") return SolverChoice::All;
    config_fail("solver must be one of analytic|volterra|pseudomode|all, got '" +
                name + "'");
}

LorentzianSpectrum RunConfig::spectrum() const {
    // Atom frequency fixed at 0; the cavity center carries the detuning.
    return LorentzianSpectrum(strength, detuning, half_width, 0.0);
}

CouplingConfig RunConfig::coupling() const {
    return CouplingConfig(alpha1, alpha2);
}

InitialAmplitudes RunConfig::initial_state() const {
    if (initial == "phi_plus") return InitialAmplitudes::phi_plus();
    if (initial == "psi_minus") return InitialAmplitudes::psi_minus(coupling());
    if (initial == "custom") return InitialAmplitudes(custom_c1, custom_c2);
    throw std::invalid_argument(
        "initial state must be one of phi_plus|psi_minus|custom, got '" +
        initial + "'");
}

SolverGrid RunConfig::grid(const std::string& scheme) const {
    return SolverGrid(t_end, step, scheme);
}

RunConfig parse_run_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        config_fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) config_fail("top level must be a JSON object");
    check_keys(j, "config",
               {"spectrum", "coupling", "initial", "solver", "grid", "out_dir"});

    RunConfig config;
    if (j.contains("spectrum")) {
        const auto& s = j.at("spectrum");
        if (!s.is_object()) config_fail("spectrum must be an object");
        check_keys(s, "spectrum", {"W", "lambda", "delta"});
        config.strength = get_number(s, "spectrum", "W", config.strength);
        config.half_width = get_number(s, "spectrum", "lambda", config.half_width);
        config.detuning = get_number(s, "spectrum", "delta", config.detuning);
    }
    if (j.contains("coupling")) {
        const auto& c = j.at("coupling");
        if (!c.is_object()) config_fail("coupling must be an object");
        check_keys(c, "coupling", {"r1", "alpha1", "alpha2"});
        const bool has_r1 = c.contains("r1");
        const bool has_alpha = c.contains("alpha1") || c.contains("alpha2");
        if (has_r1 && has_alpha)
            config_fail("coupling takes either r1 or alpha1/alpha2, not both");
        if (has_r1) {
            const double r1 = get_number(c, "coupling", "r1", 0.0);
            if (!(std::isfinite(r1) && std::abs(r1) <= 1.0))
                config_fail("coupling.r1 must lie in [-1, 1]");
            const CouplingConfig cc = CouplingConfig::from_r1(r1);
            config.alpha1 = cc.alpha1;
            config.alpha2 = cc.alpha2;
        } else if (has_alpha) {
            if (!c.contains("alpha1") || !c.contains("alpha2"))
                config_fail("coupling requires both alpha1 and alpha2");
            config.alpha1 = get_number(c, "coupling", "alpha1", 0.0);
            config.alpha2 = get_number(c, "coupling", "alpha2", 0.0);
        }
    }
    if (j.contains("initial")) {
        const auto& ini = j.at("initial");
        if (ini.is_string()) {
            config.initial = ini.get<std::string>();
        } else if (ini.is_object()) {
            check_keys(ini, "initial", {"state", "c1", "c2"});
            if (!ini.contains("state") || !ini.at("state").is_string())
                config_fail("initial.state must be a string");
            config.initial = ini.at("state").get<std::string>();
            if (config.initial == "custom") {
                config.custom_c1 = get_complex(ini, "initial", "c1");
                config.custom_c2 = get_complex(ini, "initial", "c2");
            }
        } else {
            config_fail("initial must be a string or an object");
        }
        if (config.initial != "phi_plus" && config.initial != "psi_minus" &&
            config.initial != "custom")
            config_fail("initial must be one of phi_plus|psi_minus|custom, got '" +
                        config.initial + "'");
    }
    if (j.contains("solver")) {
        if (!j.at("solver").is_string())
            config_fail("solver must be a string");
        config.solver = parse_solver_choice(j.at("solver").get<std::string>());
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (!g.is_object()) config_fail("grid must be an object");
        check_keys(g, "grid", {"t_end", "h"});
        config.t_end = get_number(g, "grid", "t_end", config.t_end);
        config.step = get_number(g, "grid", "h", config.step);
    }
    if (j.contains("out_dir")) {
        if (!j.at("out_dir").is_string())
            config_fail("out_dir must be a string");
        config.out_dir = j.at("out_dir").get<std::string>();
    }
    validate_config(config);
    return config;
}

RunConfig load_run_config(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read config file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

SweepSpec parse_sweep_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        config_fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) config_fail("top level must be a JSON object");
    check_keys(j, "sweep", {"parameter", "values", "range", "metrics", "base"});

    SweepSpec spec;
    if (!j.contains("parameter") || !j.at("parameter").is_string())
        config_fail("sweep.parameter must be a string");
    spec.parameter = j.at("parameter").get<std::string>();
    if (spec.parameter != "lambda" && spec.parameter != "delta" &&
        spec.parameter != "W" && spec.parameter != "r1")
        config_fail("sweep.parameter must be one of lambda|delta|W|r1, got '" +
                    spec.parameter + "'");

    if (j.contains("values") == j.contains("range"))
        config_fail("sweep takes exactly one of values or range");
    if (j.contains("values")) {
        const auto& vals = j.at("values");
        if (!vals.is_array() || vals.empty())
            config_fail("sweep.values must be a nonempty array");
        for (const auto& v : vals) {
            if (!v.is_number()) config_fail("sweep.values must be numbers");
            spec.values.push_back(v.get<double>());
        }
    } else {
        const auto& r = j.at("range");
        if (!r.is_object()) config_fail("sweep.range must be an object");
        check_keys(r, "range", {"from", "to", "count"});
        const double from = get_number(r, "range", "from", 0.0);
        const double to = get_number(r, "range", "to", 0.0);
        if (!r.contains("count") || !r.at("count").is_number_integer() ||
            r.at("count").get<long>() < 2)
            config_fail("sweep.range.count must be an integer >= 2");
        const long count = r.at("count").get<long>();
        for (long i = 0; i < count; ++i)
            spec.values.push_back(from + (to - from) * static_cast<double>(i) /
                                             static_cast<double>(count - 1));
    }
    for (double v : spec.values) {
        if (!std::isfinite(v)) config_fail("sweep values must be finite");
        if ((spec.parameter == "lambda" || spec.parameter == "W") && v <= 0)
            config_fail("sweep." + spec.parameter + " values must be > 0");
        if (spec.parameter == "r1" && std::abs(v) > 1.0)
            config_fail("sweep.r1 values must lie in [-1, 1]");
    }
    std::sort(spec.values.begin(), spec.values.end());

    if (j.contains("metrics")) {
        const auto& m = j.at("metrics");
        if (!m.is_array() || m.empty())
            config_fail("sweep.metrics must be a nonempty array");
        for (const auto& v : m) {
            if (!v.is_string()) config_fail("sweep.metrics must be strings");
            spec.metrics.push_back(v.get<std::string>());
        }
    } else {
        spec.metrics = {"half_time", "fit_rate", "gamma_asym"};
    }
    for (const std::string& m : spec.metrics)
        if (m != "half_time" && m != "fit_rate" && m != "gamma_asym")
            config_fail(
                "sweep metric must be one of half_time|fit_rate|gamma_asym, "
                "got '" + m + "'");

    spec.base = j.contains("base") ? parse_run_config(j.at("base").dump())
                                   : RunConfig{};
    return spec;
}

SweepSpec load_sweep_spec(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read sweep file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_spec(buf.str());
}

std::vector<fs::path> run_dynamics(const RunConfig& config) {
    const LorentzianSpectrum spectrum = config.spectrum();
    const CouplingConfig coupling = config.coupling();
    const InitialAmplitudes init = config.initial_state();
    const fs::path dir = ensure_directory(config.out_dir);

    const auto solve_one = [&](SolverChoice choice) -> AmplitudeSeries {
        switch (choice) {
            case SolverChoice::Volterra:
                return volterra_solve(spectrum, coupling, init,
                                      config.grid("product-integration"));
            case SolverChoice::Pseudomode:
                return pseudomode_solve(spectrum, coupling, init,
                                        config.grid("rk4"));
            default:
                return analytic_series(spectrum, coupling, init,
                                       config.grid("closed-form"));
        }
    };

    std::vector<std::pair<std::string, AmplitudeSeries>> runs;
    if (config.solver == SolverChoice::All) {
        runs.emplace_back("analytic", solve_one(SolverChoice::Analytic));
        runs.emplace_back("volterra", solve_one(SolverChoice::Volterra));
        runs.emplace_back("pseudomode", solve_one(SolverChoice::Pseudomode));
    } else {
        runs.emplace_back(solver_name(config.solver), solve_one(config.solver));
    }

    std::vector<fs::path> written;
    for (const auto& [name, series] : runs) {
        const fs::path csv = dir / ("dynamics_" + name + ".csv");
        write_series_csv(csv, series);
        written.push_back(csv);
    }

    ordered_json meta;
    meta["tool"] = "zenodyn";
    meta["version"] = kVersion;
    meta["command"] = "dynamics";
    meta["parameters"] = parameters_json(config);
    meta["solver_tolerances"] = {{"analytic_vs_volterra", 1e-5},
                                 {"analytic_vs_pseudomode", 1e-6}};
    ordered_json outputs = ordered_json::array();
    for (const fs::path& p : written) outputs.push_back(p.filename().string());
    meta["outputs"] = outputs;
    const fs::path sidecar = dir / "run.json";
    write_text_file(sidecar, meta.dump(2) + "\n");
    written.push_back(sidecar);

    if (config.solver == SolverChoice::All) {
        const double av = compare_series(runs[0].second, runs[1].second);
        const double ap = compare_series(runs[0].second, runs[2].second);
        const double vp = compare_series(runs[1].second, runs[2].second);
        ordered_json cmp;
        cmp["max_abs_deviation"] = {{"analytic_vs_volterra", av},
                                    {"analytic_vs_pseudomode", ap},
                                    {"volterra_vs_pseudomode", vp}};
        cmp["tolerance"] = {{"analytic_vs_volterra", 1e-5},
                            {"analytic_vs_pseudomode", 1e-6}};
        cmp["within_tolerance"] = (av < 1e-5 && ap < 1e-6);
        const fs::path report = dir / "comparison.json";
        write_text_file(report, cmp.dump(2) + "\n");
        written.push_back(report);
    }
    return written;
}

namespace {

RunConfig with_parameter(RunConfig base, const std::string& name, double v) {
    if (name == "lambda") {
        base.half_width = v;
    } else if (name == "delta") {
        base.detuning = v;
    } else if (name == "W") {
        base.strength = v;
    } else {  // r1
        const CouplingConfig cc = CouplingConfig::from_r1(v);
        base.alpha1 = cc.alpha1;
        base.alpha2 = cc.alpha2;
    }
    return base;
}

std::vector<double> sweep_point(const SweepSpec& spec, double value) {
    const RunConfig cfg = with_parameter(spec.base, spec.parameter, value);
    const LorentzianSpectrum spectrum = cfg.spectrum();
    const AmplitudeSeries series = analytic_series(
        spectrum, cfg.coupling(), cfg.initial_state(), cfg.grid("closed-form"));
    std::vector<double> row;
    row.reserve(spec.metrics.size());
    for (const std::string& m : spec.metrics) {
        if (m == "half_time")
            row.push_back(half_time(series));
        else if (m == "fit_rate")
            row.push_back(fit_rate(series, 0.5 * cfg.t_end, cfg.t_end));
        else
            row.push_back(asymptotic_rate(spectrum));
    }
    return row;
}

}  // namespace

std::vector<fs::path> run_sweep(const SweepSpec& spec) {
    validate_config(spec.base);
    const fs::path dir = ensure_directory(spec.base.out_dir);

    // Points are independent; run them concurrently and aggregate in order.
    std::vector<std::future<std::vector<double>>> futures;
    futures.reserve(spec.values.size());
    for (double v : spec.values)
        futures.push_back(std::async(std::launch::async,
                                     [&spec, v] { return sweep_point(spec, v); }));

    std::vector<std::vector<double>> rows(spec.values.size());
    for (std::size_t i = 0; i < futures.size(); ++i) {
        std::ostringstream where;
        where << "sweep point " << spec.parameter << "=" << spec.values[i]
              << ": ";
        try {
            rows[i] = futures[i].get();
        } catch (const NumericsError& e) {
            throw NumericsError(where.str() + e.what());
        } catch (const IoError& e) {
            throw IoError(where.str() + e.what());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where.str() + e.what());
        } catch (const std::exception& e) {
            throw NumericsError(where.str() + e.what());
        }
    }

    std::string body = "param,value";
    for (const std::string& m : spec.metrics) body += "," + m;
    body += '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        body += spec.parameter;
        body += ',';
        body += fmt17(spec.values[i]);
        for (double v : rows[i]) {
            body += ',';
            body += fmt17(v);
        }
        body += '\n';
    }
    const fs::path csv = dir / "sweep.csv";
    write_text_file(csv, body);

    ordered_json meta;
    meta["tool"] = "zenodyn";
    meta["version"] = kVersion;
    meta["command"] = "sweep";
    meta["parameter"] = spec.parameter;
    meta["values"] = spec.values;
    meta["metrics"] = spec.metrics;
    meta["base"] = parameters_json(spec.base);
    const fs::path sidecar = dir / "sweep.json";
    write_text_file(sidecar, meta.dump(2) + "\n");
    return {csv, sidecar};
}

std::vector<fs::path> reproduce_figure(const std::string& id,
                                       const fs::path& out_dir) {
    static const double lambdas[3] = {5.0, 8.0, 10.0};
    if (id != "fig1a" && id != "fig1b" && id != "fig2")
        throw ConfigError("reproduce: unknown figure id '" + id +
                          "' (expected fig1a|fig1b|fig2)");
    const fs::path dir = ensure_directory(out_dir);

    std::string body;
    std::string xlabel, ylabel;
    if (id == "fig2") {
        // Cavity spectrum vs offset from its center, one column per width.
        body = "Delta,J_lambda5,J_lambda8,J_lambda10\n";
        xlabel = "Delta = omega - omega_c (units of W)";
        ylabel = "J(Delta)";
        for (int i = 0; i <= 6000; ++i) {
            const double d = (i - 3000) * 0.01;
            body += fmt17(d);
            for (double lam : lambdas) {
                const LorentzianSpectrum spec(1.0, 0.0, lam, 0.0);
                body += ',';
                body += fmt17(spectral_density(spec, d));
            }
            body += '\n';
        }
    } else {
        const double delta = (id == "fig1a") ? 0.0 : 20.0;
        xlabel = "t (units of 1/W)";
        ylabel = "concurrence C(t)";
        const SolverGrid grid(10.0, 1e-3, "closed-form");
        const CouplingConfig coupling = CouplingConfig::from_r1(
            0.70710678118654752);  // r1 = r2
        std::vector<AmplitudeSeries> curves;
        for (double lam : lambdas)
            curves.push_back(analytic_series(
                LorentzianSpectrum(1.0, delta, lam, 0.0), coupling,
                InitialAmplitudes::phi_plus(), grid));
        body = "t,C_lambda5,C_lambda8,C_lambda10\n";
        for (std::size_t i = 0; i < curves[0].size(); ++i) {
            body += fmt17(curves[0].t[i]);
            for (const AmplitudeSeries& s : curves) {
                body += ',';
                body += fmt17(s.concurrence[i]);
            }
            body += '\n';
        }
    }

    const fs::path csv = dir / (id + ".csv");
    write_text_file(csv, body);
    const fs::path script = dir / (id + ".py");
    write_text_file(script,
                    plot_script(id + ".csv", id + ".png", xlabel, ylabel));
    return {csv, script};
}

bool selftest(std::ostream& log) {
    struct Case {
        double lambda;
        double delta;
    };
    // Six reference sets (two detunings x three widths) plus three
    // strong-coupling sets at lambda = 1.
    static const Case cases[] = {{5, 0},  {8, 0},  {10, 0}, {5, 20}, {8, 20},
                                 {10, 20}, {1, 0},  {1, 5},  {1, 20}};
    const CouplingConfig coupling =
        CouplingConfig::from_r1(0.70710678118654752);
    const InitialAmplitudes init = InitialAmplitudes::phi_plus();
    bool all_ok = true;
    for (const Case& c : cases) {
        const LorentzianSpectrum spec(1.0, c.delta, c.lambda, 0.0);
        const SolverGrid grid(10.0, 1e-3, "selftest");
        const AmplitudeSeries exact = analytic_series(spec, coupling, init, grid);
        const double dev_v =
            compare_series(exact, volterra_solve(spec, coupling, init, grid));
        const double dev_p =
            compare_series(exact, pseudomode_solve(spec, coupling, init, grid));
        const bool ok = dev_v < 1e-5 && dev_p < 1e-6;
        all_ok = all_ok && ok;
        log << (ok ? "[ok]   " : "[FAIL] ") << "lambda=" << c.lambda
            << " delta=" << c.delta << "  analytic_vs_volterra=" << dev_v
            << "  analytic_vs_pseudomode=" << dev_p << "\n";
    }
    log << (all_ok ? "selftest passed" : "selftest FAILED") << "\n";
    return all_ok;
}

}  // namespace zenodyn

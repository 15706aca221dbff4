#include "zenodyn/zeno.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "quadrature.hpp"
#include "zenodyn/errors.hpp"

namespace zenodyn {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::Zeno: return "Zeno";
        case Regime::AntiZeno: return "AntiZeno";
        default: return "Boundary";
    }
}

double filter_function(double omega, double omega0, double t) {
    require(std::isfinite(t) && t > 0, "filter_function: t must be > 0");
    require(std::isfinite(omega) && std::isfinite(omega0),
            "filter_function: frequencies must be finite");
    const double x = 0.5 * (omega - omega0) * t;
    const double s = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return t / (2.0 * M_PI) * s * s;
}

double effective_rate(const LorentzianSpectrum& spec, double omega0, double t) {
    require(std::isfinite(t) && t > 0, "effective_rate: t must be > 0");
    require(std::isfinite(omega0), "effective_rate: omega0 must be finite");

    const double lam = spec.half_width;
    const double w2 = spec.strength * spec.strength;
    const double peak = w2 / (M_PI * lam);  // global bound on J
    const double offset = std::abs(spec.center - omega0);

    const auto integrand = [&](double w) {
        return spectral_density(spec, w) * filter_function(w, omega0, t);
    };

    double half_window = std::max(40.0 / t, 40.0 * lam);
    for (int attempt = 0; attempt < 40; ++attempt) {
        // Panel width tracks the faster of the filter oscillation (2 pi/t)
        // and the Lorentzian scale so the composite rule cannot alias.
        const double fine = std::min(0.5 * lam, 1.0 / t);
        const std::size_t panels = static_cast<std::size_t>(std::clamp(
            std::ceil(2.0 * half_window / fine), 16.0, 8192.0));

        bool ok = true;
        double integral = detail::adaptive_simpson(
            integrand, omega0 - half_window, omega0 + half_window,
            1e-8 * peak, panels, ok);
        // Second pass with a value-scaled tolerance when the integral is
        // far below the peak scale (deep anti-Zeno points).
        if (integral > 0 && 1e-8 * peak > 1e-7 * integral) {
            integral = detail::adaptive_simpson(
                integrand, omega0 - half_window, omega0 + half_window,
                1e-7 * integral, panels, ok);
        }
        if (!ok)
            throw NumericsError(
                "effective_rate: adaptive quadrature did not converge");

        // Everything outside the window: F <= 2/(pi t (w - w0)^2) integrates
        // to 4/(pi t L); J out there is at most its value at the tail point
        // nearest the Lorentzian peak.
        const double j_tail =
            half_window > offset
                ? w2 * lam / (M_PI * ((half_window - offset) * (half_window - offset) +
                                      lam * lam))
                : peak;
        const double tail_bound = 2.0 * M_PI * j_tail * 4.0 / (M_PI * t * half_window);
        const double rate = 2.0 * M_PI * integral;
        if (tail_bound <= 0.5e-6 * rate) return rate;
        half_window *= 2.0;
    }
    throw NumericsError(
        "effective_rate: tail bound would not fall below tolerance");
}

double asymptotic_rate(const LorentzianSpectrum& spec) {
    return 2.0 * M_PI * spectral_density(spec, spec.atom_freq);
}

Regime classify_regime(double half_width, double detuning) {
    require(std::isfinite(half_width) && half_width > 0,
            "classify_regime: lambda must be > 0");
    require(std::isfinite(detuning), "classify_regime: delta must be finite");
    const double gap = half_width - std::abs(detuning);
    if (std::abs(gap) <= 1e-9 * std::max(half_width, 1.0))
        return Regime::Boundary;
    return gap > 0 ? Regime::Zeno : Regime::AntiZeno;
}

double heuristic_rate(double strength, double half_width) {
    require(std::isfinite(strength) && strength > 0,
            "heuristic_rate: W must be > 0");
    require(std::isfinite(half_width) && half_width > 0,
            "heuristic_rate: lambda must be > 0");
    return strength * strength / half_width;
}

double fit_rate(const AmplitudeSeries& series, double t_lo, double t_hi) {
    require(std::isfinite(t_lo) && std::isfinite(t_hi) && t_lo < t_hi,
            "fit_rate: window must satisfy t_lo < t_hi");
    if (series.t.empty() || t_lo < series.t.front() - 1e-12 ||
        t_hi > series.t.back() + 1e-12)
        throw std::invalid_argument("fit_rate: window outside the time grid");

    // Gather -ln P over the window.
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.t[i];
        if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
        const double p = series.survival[i];
        if (!(p > 0)) {
            std::ostringstream msg;
            msg << "fit_rate: nonpositive survival P=" << p << " at t=" << t;
            throw std::invalid_argument(msg.str());
        }
        ts.push_back(t);
        ys.push_back(-std::log(p));
    }
    if (ts.size() < 10)
        throw std::invalid_argument(
            "fit_rate: window must span at least 10 grid points");

    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        t_mean += ts[i];
        y_mean += ys[i];
    }
    t_mean /= static_cast<double>(ts.size());
    y_mean /= static_cast<double>(ts.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        num += (ts[i] - t_mean) * (ys[i] - y_mean);
        den += (ts[i] - t_mean) * (ts[i] - t_mean);
    }
    return num / den;
}

double half_time(const AmplitudeSeries& series, double level) {
    if (series.t.empty())
        throw std::invalid_argument("half_time: empty series");
    const double c0 = series.concurrence.front();
    require(std::isfinite(level) && level > 0 && level < c0,
            "half_time: level must lie in (0, C(0))");
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double c = series.concurrence[i];
        if (c <= level) {
            const double prev = series.concurrence[i - 1];
            // prev > level >= c here, so the divisor is positive.
            return series.t[i - 1] + (prev - level) * (series.t[i] - series.t[i - 1]) /
                                         (prev - c);
        }
    }
    return std::numeric_limits<double>::infinity();
}

RateReport rate_report(const LorentzianSpectrum& spec,
                       const CouplingConfig& coupling, double t_eval,
                       const SolverGrid& grid) {
    RateReport report{};
    report.elapsed = t_eval;
    report.gamma_eff = effective_rate(spec, spec.atom_freq, t_eval);
    report.gamma_asym = asymptotic_rate(spec);
    const AmplitudeSeries series =
        analytic_series(spec, coupling, InitialAmplitudes::phi_plus(), grid);
    report.gamma_fit = fit_rate(series, 0.5 * grid.t_end, grid.t_end);
    report.regime = classify_regime(spec.half_width, spec.detuning());
    return report;
}

}  // namespace zenodyn

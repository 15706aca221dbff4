#pragma once

#include "zenodyn/model.hpp"
#include "zenodyn/oracles.hpp"

namespace zenodyn {

/// Whether raising the cavity linewidth slows decay (Zeno, lambda > |delta|,
/// where dJ(w0)/dlambda < 0) or accelerates it (anti-Zeno, lambda < |delta|).
enum class Regime { Zeno, AntiZeno, Boundary };

const char* regime_name(Regime regime);

/// First-order rates for one parameter point, bundled for reporting.
struct RateReport {
    double elapsed;     // evaluation time of the filtered rate
    double gamma_eff;   // overlap integral 2 pi int J(w) F(w) dw at elapsed
    double gamma_asym;  // long-time limit 2 pi J(w0)
    double gamma_fit;   // log-linear fit of P(t) on the tail of the series
    Regime regime;
};

/// Spectral filter of first-order time-dependent perturbation theory,
///   F(w) = (t / 2 pi) sinc^2((w - w0) t / 2),   sinc x = sin(x)/x.
/// Nonnegative, even about w0, unit-normalized in w, peak t/(2 pi); tends
/// to a delta function as t grows.
double filter_function(double omega, double omega0, double t);

/// Effective decay rate Gamma(t) = 2 pi int J(w) F(w) dw by adaptive
/// composite quadrature over |w - w0| <= max(40/t, 40 lambda); the window
/// doubles until the analytic Lorentzian tail bound is negligible at
/// relative tolerance 1e-6.  Throws NumericsError if the quadrature fails
/// to converge.
double effective_rate(const LorentzianSpectrum& spec, double omega0, double t);

/// Long-time limit of the filtered rate: 2 pi J(w0) evaluated at the
/// atomic frequency of the spectrum.
double asymptotic_rate(const LorentzianSpectrum& spec);

/// Zeno for lambda > |delta|, AntiZeno for lambda < |delta|, Boundary when
/// |lambda - |delta|| <= 1e-9 * max(lambda, 1).
Regime classify_regime(double half_width, double detuning);

/// Order-of-magnitude rate W^2/lambda from the measurement picture: the
/// reservoir "observes" the atoms once per correlation time 1/lambda.
double heuristic_rate(double strength, double half_width);

/// Least-squares slope of -ln P(t) over the window [t_lo, t_hi].  The
/// window must lie inside the grid, span at least 10 grid points, and P
/// must be strictly positive on it.
double fit_rate(const AmplitudeSeries& series, double t_lo, double t_hi);

/// First time the concurrence falls to `level`, linearly interpolated
/// between grid points; +infinity when the level is never crossed.
/// Requires 0 < level < C(0).
double half_time(const AmplitudeSeries& series, double level = 0.5);

/// Evaluates all rates for one parameter point: gamma_eff at t_eval,
/// gamma_asym, and gamma_fit from the analytic series (superradiant Bell
/// initial state, fit window = second half of the grid).
RateReport rate_report(const LorentzianSpectrum& spec,
                       const CouplingConfig& coupling, double t_eval,
                       const SolverGrid& grid);

}  // namespace zenodyn

#include "zenodyn/oracles.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "zenodyn/errors.hpp"

namespace zenodyn {

namespace {

// Moments of the exponential kernel over one step, used by the product
// integration:  g0 = (1 - e^-th)/th,  g1 = (th - 1 + e^-th)/th^2  for
// th = (lambda + i delta) h.  Series guard against cancellation at small th.
std::pair<cdouble, cdouble> kernel_weights(cdouble th) {
    if (std::abs(th) < 1e-4) {
        const cdouble th2 = th * th;
        return {1.0 - th / 2.0 + th2 / 6.0 - th2 * th / 24.0,
                0.5 - th / 6.0 + th2 / 24.0 - th2 * th / 120.0};
    }
    const cdouble e = std::exp(-th);
    return {(1.0 - e) / th, (th - 1.0 + e) / (th * th)};
}

double survival_from(cdouble beta_plus, double beta_plus0_norm) {
    // Survival is defined relative to the superradiant component; an
    // initial state with no such component keeps P = 1 identically.
    if (beta_plus0_norm <= 1e-12) return 1.0;
    return std::norm(beta_plus) / beta_plus0_norm;
}

}  // namespace

SolverGrid::SolverGrid(double t_end, double step, std::string scheme)
    : t_end(t_end), step(step), scheme(std::move(scheme)) {
    if (!(std::isfinite(step) && step > 0))
        throw std::invalid_argument("SolverGrid: step h must be > 0");
    if (!(std::isfinite(t_end) && t_end >= step))
        throw std::invalid_argument("SolverGrid: t_end must be >= h");
    const double ratio = t_end / step;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument(
            "SolverGrid: t_end/h must be an integer within rounding");
}

std::size_t SolverGrid::steps() const {
    return static_cast<std::size_t>(std::llround(t_end / step));
}

std::vector<double> SolverGrid::times() const {
    const std::size_t n = steps();
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = static_cast<double>(i) * step;
    return t;
}

AmplitudeSeries volterra_solve(const LorentzianSpectrum& spec,
                               const CouplingConfig& coupling,
                               const InitialAmplitudes& init,
                               const SolverGrid& grid) {
    const double h = grid.step;
    const double lam = spec.half_width;
    const double del = spec.detuning();
    if (h * (lam + std::abs(del)) > 0.5) {
        std::ostringstream msg;
        msg << "volterra_solve: step h=" << h << " too large for kernel decay "
            << "lambda + |delta| = " << lam + std::abs(del)
            << " (need h*(lambda + |delta|) <= 0.5)";
        throw NumericsError(msg.str());
    }

    const double a1 = coupling.alpha1;
    const double a2 = coupling.alpha2;
    const double w2 = spec.strength * spec.strength;
    const double rabi2 = w2 * (a1 * a1 + a2 * a2);  // Omega_R^2
    const cdouble th = cdouble(lam, del) * h;
    const cdouble decay = std::exp(-th);
    const auto [g0, g1] = kernel_weights(th);

    // Memory integral M(t) = int_0^t e^{-mu(t - t1)} u(t1) dt1 for the
    // collective amplitude u = alpha1 c1 + alpha2 c2.  The implicit
    // trapezoidal update for u is linear and solved in closed form.
    const cdouble denom = 1.0 + 0.5 * rabi2 * h * h * g1;
    const cdouble self = 1.0 - 0.5 * rabi2 * h * h * (g0 - g1);
    const cdouble memory = 0.5 * rabi2 * h * (1.0 + decay);

    const std::vector<double> t = grid.times();
    const std::size_t n = grid.steps();
    AmplitudeSeries out;
    out.t = t;
    out.c1.reserve(n + 1);
    out.c2.reserve(n + 1);

    cdouble c1 = init.c1, c2 = init.c2;
    cdouble u = a1 * c1 + a2 * c2;
    cdouble m = 0.0;
    out.c1.push_back(c1);
    out.c2.push_back(c2);
    for (std::size_t i = 0; i < n; ++i) {
        const cdouble u_next = (self * u - memory * m) / denom;
        const cdouble m_next = decay * m + h * ((g0 - g1) * u + g1 * u_next);
        const cdouble kick = 0.5 * w2 * h * (m + m_next);
        c1 -= a1 * kick;
        c2 -= a2 * kick;
        u = u_next;
        m = m_next;
        out.c1.push_back(c1);
        out.c2.push_back(c2);
    }

    const double r1 = coupling.r1();
    const double r2 = coupling.r2();
    const double beta0 = std::norm(r1 * init.c1 + r2 * init.c2);
    out.survival.reserve(n + 1);
    out.concurrence.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out.survival.push_back(
            survival_from(r1 * out.c1[i] + r2 * out.c2[i], beta0));
        out.concurrence.push_back(concurrence(out.c1[i], out.c2[i]));
    }
    out.validate();
    return out;
}

std::vector<PseudomodeState> pseudomode_evolve(double rabi, double half_width,
                                               double detuning,
                                               cdouble beta_plus0,
                                               cdouble beta_minus,
                                               const SolverGrid& grid) {
    if (!(std::isfinite(rabi) && rabi >= 0))
        throw std::invalid_argument("pseudomode_evolve: Omega_R must be >= 0");
    if (!(std::isfinite(half_width) && half_width > 0))
        throw std::invalid_argument("pseudomode_evolve: lambda must be > 0");
    if (!std::isfinite(detuning))
        throw std::invalid_argument("pseudomode_evolve: delta must be finite");

    const cdouble mu(half_width, detuning);
    // Fastest eigenvalue of the two-level linear system; for Omega_R = 0 the
    // quasimode decays alone at |mu|.
    double s_max = std::abs(mu);
    if (rabi > 0) {
        const CharacteristicRoots roots =
            characteristic_roots(rabi, half_width, detuning);
        s_max = std::max(std::abs(roots.s_plus), std::abs(roots.s_minus));
    }
    if (grid.step * s_max > 1.0) {
        std::ostringstream msg;
        msg << "pseudomode_evolve: step h=" << grid.step
            << " unstable for max|s| = " << s_max << " (need h*max|s| <= 1)";
        throw NumericsError(msg.str());
    }

    const cdouble iw = cdouble(0.0, rabi);
    const auto deriv = [&](cdouble b, cdouble a) -> std::pair<cdouble, cdouble> {
        return {-iw * a, -iw * b - mu * a};
    };

    const std::size_t n = grid.steps();
    const double h = grid.step;
    std::vector<PseudomodeState> states;
    states.reserve(n + 1);
    cdouble b = beta_plus0;  // superradiant amplitude
    cdouble a = 0.0;         // quasimode photon amplitude
    states.push_back({b, a, beta_minus});
    for (std::size_t i = 0; i < n; ++i) {
        const auto [k1b, k1a] = deriv(b, a);
        const auto [k2b, k2a] = deriv(b + 0.5 * h * k1b, a + 0.5 * h * k1a);
        const auto [k3b, k3a] = deriv(b + 0.5 * h * k2b, a + 0.5 * h * k2a);
        const auto [k4b, k4a] = deriv(b + h * k3b, a + h * k3a);
        b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        a += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        states.push_back({b, a, beta_minus});
    }
    return states;
}

AmplitudeSeries pseudomode_solve(const LorentzianSpectrum& spec,
                                 const CouplingConfig& coupling,
                                 const InitialAmplitudes& init,
                                 const SolverGrid& grid,
                                 std::vector<PseudomodeState>* states_out) {
    const ProjectionPair proj = project_initial(coupling, init);
    const std::vector<PseudomodeState> states =
        pseudomode_evolve(coupling.rabi(spec.strength), spec.half_width,
                          spec.detuning(), proj.plus, proj.minus, grid);

    const double r1 = coupling.r1();
    const double r2 = coupling.r2();
    const double beta0 = std::norm(proj.plus);
    AmplitudeSeries out;
    out.t = grid.times();
    out.c1.reserve(states.size());
    out.c2.reserve(states.size());
    out.survival.reserve(states.size());
    out.concurrence.reserve(states.size());
    for (const PseudomodeState& st : states) {
        const cdouble c1 = r2 * st.beta_minus + r1 * st.beta_plus;
        const cdouble c2 = -r1 * st.beta_minus + r2 * st.beta_plus;
        out.c1.push_back(c1);
        out.c2.push_back(c2);
        out.survival.push_back(survival_from(st.beta_plus, beta0));
        out.concurrence.push_back(concurrence(c1, c2));
    }
    out.validate();
    if (states_out) *states_out = states;
    return out;
}

AmplitudeSeries analytic_series(const LorentzianSpectrum& spec,
                                const CouplingConfig& coupling,
                                const InitialAmplitudes& init,
                                const SolverGrid& grid) {
    const double lam = spec.half_width;
    const double del = spec.detuning();
    const CharacteristicRoots roots =
        characteristic_roots(coupling.rabi(spec.strength), lam, del);
    const ProjectionPair proj = project_initial(coupling, init);
    const double beta0 = std::norm(proj.plus);
    const double r1 = coupling.r1();
    const double r2 = coupling.r2();

    AmplitudeSeries out;
    out.t = grid.times();
    const std::size_t n = out.t.size();
    out.c1.reserve(n);
    out.c2.reserve(n);
    out.survival.reserve(n);
    out.concurrence.reserve(n);
    for (double t : out.t) {
        const cdouble eps = epsilon(t, roots, lam, del);
        const cdouble c1 = r2 * proj.minus + r1 * proj.plus * eps;
        const cdouble c2 = -r1 * proj.minus + r2 * proj.plus * eps;
        out.c1.push_back(c1);
        out.c2.push_back(c2);
        out.survival.push_back(beta0 > 1e-12 ? std::norm(eps) : 1.0);
        out.concurrence.push_back(concurrence(c1, c2));
    }
    out.validate();
    return out;
}

double compare_series(const AmplitudeSeries& a, const AmplitudeSeries& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("compare_series: grids differ in length");
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.t[i] != b.t[i])
            throw std::invalid_argument("compare_series: time grids differ");
        dev = std::max(dev, std::abs(a.c1[i] - b.c1[i]));
        dev = std::max(dev, std::abs(a.c2[i] - b.c2[i]));
    }
    return dev;
}

}  // namespace zenodyn

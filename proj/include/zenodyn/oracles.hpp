#pragma once

#include <string>
#include <vector>

#include "zenodyn/analytic.hpp"
#include "zenodyn/model.hpp"

namespace zenodyn {

/// Uniform time grid t_i = i*h, i = 0..round(t_end/h).
struct SolverGrid {
    double t_end;
    double step;
    std::string scheme;  // integrator label carried into run metadata

    SolverGrid(double t_end, double step, std::string scheme = "fixed-step");

    std::size_t steps() const;          // number of intervals
    std::vector<double> times() const;  // steps() + 1 points from 0
};

/// Instantaneous state of the quasimode picture: the superradiant
/// amplitude, the one-photon amplitude of the discrete damped mode, and
/// the conserved subradiant projection.
struct PseudomodeState {
    cdouble beta_plus;
    cdouble mode;  // b_a(t), amplitude of the quasimode photon
    cdouble beta_minus;
};

/// Direct product-integration of the memory-kernel equations
///   dc_j/dt = -alpha_j W^2 int_0^t e^{-(lambda + i delta)(t - t1)}
///                         [alpha_1 c_1(t1) + alpha_2 c_2(t1)] dt1
/// with trapezoidal weights on the smooth part and the exponential kernel
/// treated exactly through the recursion M(t+h) = e^{-mu h} M(t) +
/// increment.  Second-order accurate in h.  Rejects steps with
/// h*(lambda + |delta|) > 0.5.
AmplitudeSeries volterra_solve(const LorentzianSpectrum& spec,
                               const CouplingConfig& coupling,
                               const InitialAmplitudes& init,
                               const SolverGrid& grid);

/// Evolves the closed two-amplitude quasimode system in the rotating frame,
///   d beta_+/dt = -i Omega_R b_a,
///   d b_a/dt    = -i Omega_R beta_+ - (lambda + i delta) b_a,
/// from b_a(0) = 0 with fixed-step classical RK4.  Exact in the
/// one-excitation sector: eliminating b_a reproduces the characteristic
/// equation.  rabi = 0 is allowed (decoupled atoms).  Rejects steps with
/// h*max|s| > 1.
std::vector<PseudomodeState> pseudomode_evolve(double rabi, double half_width,
                                               double detuning,
                                               cdouble beta_plus0,
                                               cdouble beta_minus,
                                               const SolverGrid& grid);

/// pseudomode_evolve on typed inputs, with c1, c2 reconstructed from the
/// sub/superradiant decomposition.  Optionally exposes the quasimode
/// trajectory for excitation-conservation checks.
AmplitudeSeries pseudomode_solve(const LorentzianSpectrum& spec,
                                 const CouplingConfig& coupling,
                                 const InitialAmplitudes& init,
                                 const SolverGrid& grid,
                                 std::vector<PseudomodeState>* states_out = nullptr);

/// Closed-form solution sampled on the grid (the reference the numerical
/// oracles are compared against).
AmplitudeSeries analytic_series(const LorentzianSpectrum& spec,
                                const CouplingConfig& coupling,
                                const InitialAmplitudes& init,
                                const SolverGrid& grid);

/// Max over the shared grid of max(|c1_a - c1_b|, |c2_a - c2_b|).
/// Rejects series on different grids.
double compare_series(const AmplitudeSeries& a, const AmplitudeSeries& b);

}  // namespace zenodyn

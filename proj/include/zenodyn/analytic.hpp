#pragma once

#include <utility>

#include "zenodyn/model.hpp"

namespace zenodyn {

/// Roots of the characteristic equation s^2 + (lambda + i delta)s +
/// Omega_R^2 = 0 governing the superradiant amplitude.
struct CharacteristicRoots {
    cdouble s_plus;   // root with the larger real part (slow/dominant)
    cdouble s_minus;  // root with the smaller real part (fast)
    bool degenerate;  // |s_plus - s_minus| below the confluence threshold
};

/// Solves the quadratic with the principal branch of the square root, so
/// Re s_plus >= Re s_minus deterministically.  The degenerate flag is set
/// when |s_plus - s_minus| < 1e-9 * max(lambda, Omega_R).
CharacteristicRoots characteristic_roots(double rabi, double half_width,
                                         double detuning);

/// Survival amplitude of the superradiant state,
///   eps(t) = [(s+ + mu) e^{s+ t} - (s- + mu) e^{s- t}] / (s+ - s-),
/// mu = lambda + i delta.  Vieta gives s+- + mu = -s-+, so the two-root
/// form reduces to (s+ e^{s- t} - s- e^{s+ t})/(s+ - s-); near the double
/// root the confluent limit e^{s t}(1 + (s + mu)t) is used instead.
/// eps(0) = 1 and eps'(0) = 0.
cdouble epsilon(double t, const CharacteristicRoots& roots, double half_width,
                double detuning);

/// Exact amplitudes at time t:
///   c1 = r2 beta_- + r1 beta_+ eps(t),  c2 = -r1 beta_- + r2 beta_+ eps(t).
std::pair<cdouble, cdouble> amplitudes(double t, const CouplingConfig& coupling,
                                       const ProjectionPair& proj,
                                       const CharacteristicRoots& roots,
                                       double half_width, double detuning);

/// P(t) = |eps(t)|^2, the population retained by the superradiant state.
double survival_probability(double t, const CharacteristicRoots& roots,
                            double half_width, double detuning);

/// One-excitation reduced density matrix of the two atoms: populations
/// |c1|^2, |c2|^2 and coherences c1 c2* in the middle block, leakage
/// 1 - |c1|^2 - |c2|^2 on |gg><gg|.
DensityMatrix4 reduced_density_matrix(cdouble c1, cdouble c2);

/// Concurrence of the one-excitation state class: C = 2|c1||c2|.
double concurrence(cdouble c1, cdouble c2);

/// General two-qubit concurrence max(0, sqrt(mu1) - sqrt(mu2) - sqrt(mu3)
/// - sqrt(mu4)), mu_i the decreasing eigenvalues of rho sy4 rho* sy4 with
/// sy4 = sigma_y x sigma_y.  Implemented through the singular values of
/// sqrt(rho) sy4 sqrt(rho)^*, which equal sqrt(mu_i) directly and stay
/// accurate when eigenvalues of the product underflow.
double wootters_concurrence(const DensityMatrix4& rho);

}  // namespace zenodyn

#include "zenodyn/analytic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "zenodyn/errors.hpp"

namespace zenodyn {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

CharacteristicRoots characteristic_roots(double rabi, double half_width,
                                         double detuning) {
    require(std::isfinite(rabi) && rabi > 0,
            "characteristic_roots: Omega_R must be > 0");
    require(std::isfinite(half_width) && half_width > 0,
            "characteristic_roots: lambda must be > 0");
    require(std::isfinite(detuning), "characteristic_roots: delta must be finite");

    const cdouble mu(half_width, detuning);
    // Principal sqrt has Re >= 0, so s_plus carries the larger real part.
    const cdouble disc = std::sqrt(mu * mu - 4.0 * rabi * rabi);
    const cdouble s_plus = 0.5 * (-mu + disc);
    const cdouble s_minus = 0.5 * (-mu - disc);
    const bool degenerate =
        std::abs(s_plus - s_minus) < 1e-9 * std::max(half_width, rabi);
    return {s_plus, s_minus, degenerate};
}

cdouble epsilon(double t, const CharacteristicRoots& roots, double half_width,
                double detuning) {
    require(std::isfinite(t) && t >= 0.0, "epsilon: t must be >= 0");
    const cdouble mu(half_width, detuning);
    if (roots.degenerate) {
        // Confluent limit at the double root: e^{st}(1 + (s + mu)t).
        const cdouble s = 0.5 * (roots.s_plus + roots.s_minus);
        return std::exp(s * t) * (1.0 + (s + mu) * t);
    }
    // (s+- + mu) = -s-+ by Vieta, so the prefactors reduce to the opposite
    // roots and eps(0) = 1 holds exactly instead of up to rounding in mu.
    const cdouble ep = std::exp(roots.s_plus * t);
    const cdouble em = std::exp(roots.s_minus * t);
    return (roots.s_plus * em - roots.s_minus * ep) /
           (roots.s_plus - roots.s_minus);
}

std::pair<cdouble, cdouble> amplitudes(double t, const CouplingConfig& coupling,
                                       const ProjectionPair& proj,
                                       const CharacteristicRoots& roots,
                                       double half_width, double detuning) {
    const cdouble eps = epsilon(t, roots, half_width, detuning);
    const double r1 = coupling.r1();
    const double r2 = coupling.r2();
    return {r2 * proj.minus + r1 * proj.plus * eps,
            -r1 * proj.minus + r2 * proj.plus * eps};
}

double survival_probability(double t, const CharacteristicRoots& roots,
                            double half_width, double detuning) {
    return std::norm(epsilon(t, roots, half_width, detuning));
}

DensityMatrix4 reduced_density_matrix(cdouble c1, cdouble c2) {
    const double n1 = std::norm(c1);
    const double n2 = std::norm(c2);
    if (n1 + n2 > 1.0 + 1e-9)
        throw std::invalid_argument(
            "reduced_density_matrix: |c1|^2 + |c2|^2 exceeds 1 beyond 1e-9");
    DensityMatrix4 rho = DensityMatrix4::Zero();
    rho(1, 1) = n1;
    rho(2, 2) = n2;
    rho(1, 2) = c1 * std::conj(c2);
    rho(2, 1) = c2 * std::conj(c1);
    rho(3, 3) = std::max(0.0, 1.0 - n1 - n2);  // photon-loss leakage to |gg>
    return rho;
}

double concurrence(cdouble c1, cdouble c2) {
    return 2.0 * std::abs(c1) * std::abs(c2);
}

double wootters_concurrence(const DensityMatrix4& rho) {
    validate_density_matrix(rho);

    // sigma_y x sigma_y in the basis {|ee>, |eg>, |ge>, |gg>}.
    DensityMatrix4 sy4 = DensityMatrix4::Zero();
    sy4(0, 3) = -1.0;
    sy4(1, 2) = 1.0;
    sy4(2, 1) = 1.0;
    sy4(3, 0) = -1.0;

    // Hermitian square root of rho, clamping eigenvalue rounding noise.
    Eigen::SelfAdjointEigenSolver<DensityMatrix4> es(
        0.5 * (rho + rho.adjoint()));
    Eigen::Vector4d vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const DensityMatrix4 root =
        es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();

    // Singular values of sqrt(rho) sy4 sqrt(rho)^* are the sqrt(mu_i).
    const DensityMatrix4 b = root * sy4 * root.conjugate();
    Eigen::JacobiSVD<DensityMatrix4> svd(b);
    const Eigen::Vector4d s = svd.singularValues();  // sorted decreasing
    return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

}  // namespace zenodyn

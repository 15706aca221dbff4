#include "zenodyn/model.hpp"

#include <cmath>
#include <sstream>

#include "zenodyn/errors.hpp"

namespace zenodyn {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

LorentzianSpectrum::LorentzianSpectrum(double strength, double center,
                                       double half_width, double atom_freq)
    : strength(strength),
      center(center),
      half_width(half_width),
      atom_freq(atom_freq) {
    require(std::isfinite(strength) && strength > 0,
            "LorentzianSpectrum: strength W must be finite and > 0");
    require(std::isfinite(half_width) && half_width > 0,
            "LorentzianSpectrum: half_width lambda must be finite and > 0");
    require(std::isfinite(center) && std::isfinite(atom_freq),
            "LorentzianSpectrum: frequencies must be finite");
}

CouplingConfig::CouplingConfig(double alpha1, double alpha2)
    : alpha1(alpha1), alpha2(alpha2) {
    require(std::isfinite(alpha1) && std::isfinite(alpha2),
            "CouplingConfig: couplings must be finite");
    require(alpha1 != 0.0 || alpha2 != 0.0,
            "CouplingConfig: couplings must not both be zero");
}

CouplingConfig CouplingConfig::from_r1(double r1) {
    require(std::isfinite(r1) && std::abs(r1) <= 1.0,
            "CouplingConfig: r1 must lie in [-1, 1]");
    return CouplingConfig(r1, std::sqrt(1.0 - r1 * r1));
}

double CouplingConfig::norm() const { return std::hypot(alpha1, alpha2); }

InitialAmplitudes::InitialAmplitudes(cdouble c1, cdouble c2) : c1(c1), c2(c2) {
    const double n = std::norm(c1) + std::norm(c2);
    if (std::abs(n - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "InitialAmplitudes: |c1|^2 + |c2|^2 = " << n
            << " but must equal 1 within 1e-12";
        throw std::invalid_argument(msg.str());
    }
}

InitialAmplitudes InitialAmplitudes::phi_plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return InitialAmplitudes(s, s);
}

InitialAmplitudes InitialAmplitudes::psi_minus(const CouplingConfig& coupling) {
    return InitialAmplitudes(coupling.r2(), -coupling.r1());
}

void AmplitudeSeries::validate() const {
    const std::size_t n = t.size();
    auto fail = [](const std::string& what) { throw NumericsError(what); };
    if (c1.size() != n || c2.size() != n || survival.size() != n ||
        concurrence.size() != n)
        fail("AmplitudeSeries: column lengths differ");
    if (n == 0) fail("AmplitudeSeries: empty series");
    if (std::abs(t.front()) > 1e-15) fail("AmplitudeSeries: grid must start at 0");
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(t[i] > t[i - 1]))
            fail("AmplitudeSeries: time grid not strictly increasing");
        if (std::norm(c1[i]) + std::norm(c2[i]) > 1.0 + 1e-9)
            fail("AmplitudeSeries: one-excitation norm exceeds 1 at t=" +
                 std::to_string(t[i]));
        if (survival[i] < -1e-12 || survival[i] > 1.0 + 1e-9)
            fail("AmplitudeSeries: survival probability outside [0, 1]");
        if (concurrence[i] < -1e-12 || concurrence[i] > 1.0 + 1e-9)
            fail("AmplitudeSeries: concurrence outside [0, 1]");
    }
}

void validate_density_matrix(const DensityMatrix4& rho) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    require(herm <= 1e-12, "DensityMatrix4: not Hermitian within 1e-12");
    require(std::abs(rho.trace() - cdouble(1.0)) <= 1e-12,
            "DensityMatrix4: trace differs from 1 by more than 1e-12");
    for (int i = 0; i < 4; ++i)
        require(rho(i, i).real() >= -1e-12,
                "DensityMatrix4: negative diagonal entry");
}

double spectral_density(const LorentzianSpectrum& spec, double omega) {
    require(std::isfinite(omega), "spectral_density: omega must be finite");
    const double d = omega - spec.center;
    const double w2 = spec.strength * spec.strength;
    return w2 * spec.half_width /
           (M_PI * (d * d + spec.half_width * spec.half_width));
}

cdouble correlation_kernel(const LorentzianSpectrum& spec, double tau) {
    require(std::isfinite(tau) && tau >= 0.0,
            "correlation_kernel: tau must be >= 0 (callers order times)");
    const double w2 = spec.strength * spec.strength;
    return w2 * std::exp(-cdouble(spec.half_width, spec.detuning()) * tau);
}

ProjectionPair project_initial(const CouplingConfig& coupling,
                               const InitialAmplitudes& init) {
    const double r1 = coupling.r1();
    const double r2 = coupling.r2();
    return {r2 * init.c1 - r1 * init.c2, r1 * init.c1 + r2 * init.c2};
}

}  // namespace zenodyn

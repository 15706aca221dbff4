#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace zenodyn {

using cdouble = std::complex<double>;

/// Lorentzian spectral density of a lossy cavity mode,
///   J(w) = W^2 * lambda / (pi * ((w - w_c)^2 + lambda^2)),
/// with half width lambda (FWHM = 2*lambda) centered at w_c.  The atomic
/// transition sits at atom_freq; detuning() = center - atom_freq.
/// Frequencies are quoted in units of a reference frequency (hbar = 1),
/// times in its inverse; by convention strength W = 1 sets the unit.
struct LorentzianSpectrum {
    double strength;    // W, collective atom-field coupling
    double center;      // w_c, center of the Lorentzian
    double half_width;  // lambda, inverse reservoir correlation time
    double atom_freq;   // w_0, atomic transition frequency

    LorentzianSpectrum(double strength, double center, double half_width,
                       double atom_freq = 0.0);

    double detuning() const { return center - atom_freq; }

    /// Superradiant decay is near-exponential (no Rabi oscillation) when
    /// W < lambda/2.
    bool weak_coupling() const { return strength < 0.5 * half_width; }
};

/// Dimensionless couplings alpha_1, alpha_2 of the two atoms to the cavity
/// mode.  The collective quantities are the unit vector (r1, r2) and the
/// vacuum Rabi frequency Omega_R = W * sqrt(alpha1^2 + alpha2^2).
struct CouplingConfig {
    double alpha1;
    double alpha2;

    CouplingConfig(double alpha1, double alpha2);

    /// Couplings on the unit circle with alpha1 = r1; requires |r1| <= 1.
    static CouplingConfig from_r1(double r1);

    double norm() const;  // sqrt(alpha1^2 + alpha2^2), > 0
    double r1() const { return alpha1 / norm(); }
    double r2() const { return alpha2 / norm(); }
    double rabi(double strength) const { return strength * norm(); }
};

/// Normalized one-excitation amplitudes c1, c2 of |e g> and |g e> at t = 0.
struct InitialAmplitudes {
    cdouble c1;
    cdouble c2;

    InitialAmplitudes(cdouble c1, cdouble c2);

    /// Bell state |phi+> = (|eg> + |ge>)/sqrt(2).
    static InitialAmplitudes phi_plus();

    /// Subradiant (dark) state |psi-> = r2|eg> - r1|ge> for the given
    /// couplings; decoupled from the field and does not decay.
    static InitialAmplitudes psi_minus(const CouplingConfig& coupling);
};

/// Projections of the initial state onto the subradiant |psi-> = r2|eg> -
/// r1|ge> and superradiant |psi+> = r1|eg> + r2|ge> collective states.
struct ProjectionPair {
    cdouble minus;  // beta_-, conserved by the dynamics
    cdouble plus;   // beta_+, the only decaying component
};

/// Time series of the two-atom amplitudes with the derived survival
/// probability P(t) = |beta_+(t)/beta_+(0)|^2 (1 when beta_+(0) = 0) and
/// concurrence C(t) = 2|c1||c2|.
struct AmplitudeSeries {
    std::vector<double> t;
    std::vector<cdouble> c1;
    std::vector<cdouble> c2;
    std::vector<double> survival;
    std::vector<double> concurrence;

    std::size_t size() const { return t.size(); }

    /// Consistency check: equal column lengths, t strictly increasing from
    /// 0, one-excitation norm and the derived columns within tolerance.
    /// Throws NumericsError on violation; solvers call this before Return.
    void validate() const;
};

/// 4x4 density matrix in the product basis {|ee>, |eg>, |ge>, |gg>}.
using DensityMatrix4 = Eigen::Matrix4cd;

/// Throws std::invalid_argument unless rho is Hermitian (1e-12), has unit
/// trace (1e-12) and nonnegative diagonal (>= -1e-12).
void validate_density_matrix(const DensityMatrix4& rho);

/// J(w) of the Lorentzian spectrum; strictly positive, even about center.
double spectral_density(const LorentzianSpectrum& spec, double omega);

/// Reservoir correlation function f(tau) = W^2 exp(-(lambda + i delta) tau)
/// for tau >= 0 — the Fourier transform of J(w) relative to the atomic
/// frequency.  The i*delta phase is what the characteristic equation
/// s^2 + (lambda + i delta)s + Omega_R^2 = 0 requires.
cdouble correlation_kernel(const LorentzianSpectrum& spec, double tau);

/// beta_- = r2 c1 - r1 c2, beta_+ = r1 c1 + r2 c2.
ProjectionPair project_initial(const CouplingConfig& coupling,
                               const InitialAmplitudes& init);

}  // namespace zenodyn

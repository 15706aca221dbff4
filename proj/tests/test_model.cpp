#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "support/quad.hpp"
#include "zenodyn/errors.hpp"
#include "zenodyn/model.hpp"

using namespace zenodyn;
using doctest::Approx;

TEST_CASE("spectral density matches the Lorentzian closed form") {
    const LorentzianSpectrum spec(1.0, 0.0, 5.0);
    CHECK(spectral_density(spec, 0.0) ==
          Approx(1.0 / (5.0 * M_PI)).epsilon(1e-14));
    // half maximum one half-width away from the center
    CHECK(spectral_density(spec, 5.0) ==
          Approx(0.5 / (5.0 * M_PI)).epsilon(1e-14));
    CHECK(spectral_density(spec, -5.0) ==
          Approx(spectral_density(spec, 5.0)).epsilon(1e-15));
    CHECK(spectral_density(spec, 1e6) > 0.0);

    // peak value strictly decreasing as the line broadens
    double prev = 1e300;
    for (double lam : {5.0, 8.0, 10.0}) {
        const double peak = spectral_density(LorentzianSpectrum(1.0, 0.0, lam), 0.0);
        CHECK(peak < prev);
        prev = peak;
    }

    // off-center spectrum: evenness about the center, not about zero
    const LorentzianSpectrum detuned(1.0, 20.0, 5.0, 0.0);
    CHECK(spectral_density(detuned, 22.0) ==
          Approx(spectral_density(detuned, 18.0)).epsilon(1e-15));

    CHECK_THROWS_AS(spectral_density(spec, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(LorentzianSpectrum(0.0, 0.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(LorentzianSpectrum(-1.0, 0.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(LorentzianSpectrum(1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(LorentzianSpectrum(1.0, 0.0, -2.0), std::invalid_argument);
}

TEST_CASE("spectral density integrates to W^2") {
    for (const auto& [w, lam] : {std::pair{1.0, 5.0}, {2.0, 3.0}, {1.0, 0.7}}) {
        const LorentzianSpectrum spec(w, 1.5, lam, 0.0);
        const double cut = 50.0 * lam;
        const auto j = [&](double omega) { return spectral_density(spec, omega); };
        const double inner = testquad::integrate(j, spec.center - cut,
                                                 spec.center + cut, 1e-10, 64);
        // exact Lorentzian mass outside the window
        const double tail = (2.0 * w * w / M_PI) * std::atan(lam / cut);
        CHECK(std::abs(inner + tail - w * w) <= 1e-6);
    }
}

TEST_CASE("correlation kernel closed form") {
    const LorentzianSpectrum spec(1.0, 0.0, 5.0);
    CHECK(correlation_kernel(spec, 0.0) == cdouble(1.0, 0.0));
    const cdouble k = correlation_kernel(spec, 0.2);  // lambda*tau = 1
    CHECK(k.real() == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(k.imag() == Approx(0.0));

    // W^2 prefactor
    const LorentzianSpectrum strong(2.0, 0.0, 5.0);
    CHECK(correlation_kernel(strong, 0.0) == cdouble(4.0, 0.0));

    // the detuning only contributes a phase
    const LorentzianSpectrum detuned(1.0, 20.0, 5.0, 0.0);
    for (double tau : {0.1, 0.7, 2.0})
        CHECK(std::abs(correlation_kernel(detuned, tau)) ==
              Approx(std::abs(correlation_kernel(spec, tau))).epsilon(1e-14));

    CHECK_THROWS_AS(correlation_kernel(spec, -0.1), std::invalid_argument);
}

TEST_CASE("correlation kernel equals the Fourier transform of the spectrum") {
    // int J(w) e^{-i(w - w0) tau} dw over a finite window, plus a two-term
    // integration-by-parts tail estimate for the truncated wings.
    struct Case {
        double w, lam, delta;
    };
    for (const Case& c : {Case{1.0, 5.0, 0.0}, {1.0, 5.0, 20.0}, {1.5, 2.0, 7.0}}) {
        const LorentzianSpectrum spec(c.w, c.delta, c.lam, 0.0);
        const double cut = 400.0 * c.lam;
        for (double tau : {0.1, 0.5, 1.5}) {
            const auto f = [&](double omega) {
                return spectral_density(spec, omega) *
                       std::exp(cdouble(0.0, -(omega - spec.atom_freq) * tau));
            };
            const cdouble inner = testquad::integrate_complex(
                f, spec.center - cut, spec.center + cut, 1e-9, 256);
            // wings: e^{-i delta tau} (2 W^2 lam/pi) int_cut^inf cos(u tau)/(u^2+lam^2) du
            const double g = 1.0 / (cut * cut + c.lam * c.lam);
            const double gp = -2.0 * cut * g * g;
            const double wing_cos = -g * std::sin(cut * tau) / tau -
                                    gp * std::cos(cut * tau) / (tau * tau);
            const cdouble tail = std::exp(cdouble(0.0, -c.delta * tau)) *
                                 (2.0 * c.w * c.w * c.lam / M_PI) * wing_cos;
            const cdouble expected = correlation_kernel(spec, tau);
            CHECK(std::abs(inner + tail - expected) <= 1e-6);
        }
    }
}

TEST_CASE("coupling configuration invariants") {
    const CouplingConfig cc(0.6, 0.8);
    CHECK(cc.norm() == Approx(1.0).epsilon(1e-15));
    CHECK(cc.r1() == Approx(0.6).epsilon(1e-15));
    CHECK(cc.r2() == Approx(0.8).epsilon(1e-15));
    CHECK(cc.rabi(2.0) == Approx(2.0).epsilon(1e-15));

    // unnormalized couplings rescale r and the Rabi frequency only
    const CouplingConfig big(3.0, 4.0);
    CHECK(big.r1() == Approx(0.6).epsilon(1e-15));
    CHECK(big.rabi(1.0) == Approx(5.0).epsilon(1e-15));

    std::mt19937_64 rng(20260823);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const CouplingConfig r = CouplingConfig::from_r1(unit(rng));
        CHECK(std::abs(r.r1() * r.r1() + r.r2() * r.r2() - 1.0) <= 1e-12);
    }

    CHECK_THROWS_AS(CouplingConfig(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CouplingConfig::from_r1(1.5), std::invalid_argument);
}

TEST_CASE("initial amplitudes must be normalized") {
    const InitialAmplitudes bell = InitialAmplitudes::phi_plus();
    CHECK(std::norm(bell.c1) + std::norm(bell.c2) == Approx(1.0).epsilon(1e-15));
    CHECK(bell.c1 == bell.c2);

    const InitialAmplitudes dark =
        InitialAmplitudes::psi_minus(CouplingConfig(0.6, 0.8));
    CHECK(dark.c1.real() == Approx(0.8).epsilon(1e-15));
    CHECK(dark.c2.real() == Approx(-0.6).epsilon(1e-15));

    CHECK_NOTHROW(InitialAmplitudes(cdouble(0.0, 1.0), cdouble(0.0, 0.0)));
    CHECK_THROWS_AS(InitialAmplitudes(cdouble(0.5, 0.0), cdouble(0.5, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(InitialAmplitudes(cdouble(1.0, 0.0), cdouble(0.1, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("projection onto the sub/superradiant states") {
    const double s = 1.0 / std::sqrt(2.0);
    const CouplingConfig even = CouplingConfig::from_r1(s);

    // |phi+> is the superradiant state for equal couplings
    const ProjectionPair p1 = project_initial(even, InitialAmplitudes::phi_plus());
    CHECK(std::abs(p1.minus) <= 1e-15);
    CHECK(std::abs(p1.plus - 1.0) <= 1e-14);

    // the orthogonal combination is purely subradiant
    const ProjectionPair p2 =
        project_initial(even, InitialAmplitudes(cdouble(s), cdouble(-s)));
    CHECK(std::abs(p2.minus - 1.0) <= 1e-14);
    CHECK(std::abs(p2.plus) <= 1e-15);

    const ProjectionPair p3 = project_initial(
        CouplingConfig(0.6, 0.8), InitialAmplitudes(cdouble(1.0), cdouble(0.0)));
    CHECK(p3.minus.real() == Approx(0.8).epsilon(1e-14));
    CHECK(p3.plus.real() == Approx(0.6).epsilon(1e-14));
}

TEST_CASE("projection preserves the norm and round-trips") {
    std::mt19937_64 rng(74250911);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(-0.999, 0.999);
    for (int i = 0; i < 300; ++i) {
        cdouble c1(gauss(rng), gauss(rng));
        cdouble c2(gauss(rng), gauss(rng));
        const double n = std::sqrt(std::norm(c1) + std::norm(c2));
        c1 /= n;
        c2 /= n;
        const InitialAmplitudes init(c1, c2);
        const CouplingConfig coupling = CouplingConfig::from_r1(unit(rng));
        const ProjectionPair proj = project_initial(coupling, init);
        CHECK(std::abs(std::norm(proj.minus) + std::norm(proj.plus) -
                       (std::norm(c1) + std::norm(c2))) <= 1e-12);
        // reconstruction at t = 0
        const double r1 = coupling.r1(), r2 = coupling.r2();
        CHECK(std::abs(r2 * proj.minus + r1 * proj.plus - c1) <= 1e-12);
        CHECK(std::abs(-r1 * proj.minus + r2 * proj.plus - c2) <= 1e-12);
    }
}

TEST_CASE("density matrix validation") {
    DensityMatrix4 rho = DensityMatrix4::Zero();
    rho(0, 0) = 0.25;
    rho(1, 1) = 0.25;
    rho(2, 2) = 0.25;
    rho(3, 3) = 0.25;
    CHECK_NOTHROW(validate_density_matrix(rho));

    DensityMatrix4 skew = rho;
    skew(0, 1) = cdouble(0.0, 1e-3);  // no conjugate partner
    CHECK_THROWS_AS(validate_density_matrix(skew), std::invalid_argument);

    DensityMatrix4 overweight = rho;
    overweight(0, 0) = 0.5;
    CHECK_THROWS_AS(validate_density_matrix(overweight), std::invalid_argument);

    DensityMatrix4 negative = rho;
    negative(0, 0) = -0.1;
    negative(3, 3) = 0.6;
    CHECK_THROWS_AS(validate_density_matrix(negative), std::invalid_argument);
}

TEST_CASE("amplitude series consistency checks") {
    AmplitudeSeries s;
    s.t = {0.0, 0.5, 1.0};
    s.c1 = {cdouble(1.0), cdouble(0.8), cdouble(0.6)};
    s.c2 = {cdouble(0.0), cdouble(0.0), cdouble(0.0)};
    s.survival = {1.0, 0.64, 0.36};
    s.concurrence = {0.0, 0.0, 0.0};
    CHECK_NOTHROW(s.validate());

    AmplitudeSeries bad_t = s;
    bad_t.t = {0.0, 1.0, 0.5};
    CHECK_THROWS_AS(bad_t.validate(), NumericsError);

    AmplitudeSeries bad_norm = s;
    bad_norm.c1[1] = cdouble(1.2, 0.0);
    CHECK_THROWS_AS(bad_norm.validate(), NumericsError);

    AmplitudeSeries ragged = s;
    ragged.survival.pop_back();
    CHECK_THROWS_AS(ragged.validate(), NumericsError);
}

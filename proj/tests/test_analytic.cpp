#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "zenodyn/analytic.hpp"
#include "zenodyn/errors.hpp"

using namespace zenodyn;
using doctest::Approx;

namespace {

// Log-slope of the survival probability between two late times; the fast
// root is dead there, so this is the dominant decay rate.
double late_rate(const CharacteristicRoots& roots, double lam, double del) {
    const double p1 = survival_probability(5.0, roots, lam, del);
    const double p2 = survival_probability(10.0, roots, lam, del);
    return (std::log(p1) - std::log(p2)) / 5.0;
}

}  // namespace

TEST_CASE("characteristic roots solve the quadratic") {
    const CharacteristicRoots r = characteristic_roots(1.0, 5.0, 0.0);
    // (-5 + sqrt(21))/2 and (-5 - sqrt(21))/2
    CHECK(r.s_plus.real() == Approx(-0.20871215252208000).epsilon(1e-13));
    CHECK(r.s_plus.imag() == Approx(0.0));
    CHECK(r.s_minus.real() == Approx(-4.7912878474779199).epsilon(1e-13));
    CHECK_FALSE(r.degenerate);
    CHECK(r.s_plus.real() > r.s_minus.real());  // deterministic labeling

    const CharacteristicRoots r10 = characteristic_roots(1.0, 10.0, 0.0);
    CHECK(r10.s_plus.real() == Approx(-0.10102051443364380).epsilon(1e-12));

    const CharacteristicRoots dbl = characteristic_roots(1.0, 2.0, 0.0);
    CHECK(dbl.degenerate);
    CHECK(dbl.s_plus.real() == Approx(-1.0).epsilon(1e-12));
    CHECK(dbl.s_minus.real() == Approx(-1.0).epsilon(1e-12));

    CHECK_THROWS_AS(characteristic_roots(0.0, 5.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(characteristic_roots(1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(characteristic_roots(1.0, -3.0, 1.0), std::invalid_argument);
}

TEST_CASE("Vieta identities on randomized parameters") {
    std::mt19937_64 rng(11830677);
    std::uniform_real_distribution<double> range(0.1, 50.0);
    std::uniform_real_distribution<double> sign(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double rabi = range(rng);
        const double lam = range(rng);
        const double del = range(rng) * (sign(rng) < 0 ? -1.0 : 1.0);
        const CharacteristicRoots r = characteristic_roots(rabi, lam, del);
        CHECK(std::abs(r.s_plus + r.s_minus + cdouble(lam, del)) <= 1e-10);
        CHECK(std::abs(r.s_plus * r.s_minus - rabi * rabi) <= 1e-10);
    }
}

TEST_CASE("epsilon boundary values and derivative") {
    struct Case {
        double rabi, lam, del;
    };
    for (const Case& c : {Case{1.0, 5.0, 0.0}, {1.0, 5.0, 20.0}, {1.0, 2.0, 0.0},
                          {2.0, 1.0, 3.0}}) {
        const CharacteristicRoots r = characteristic_roots(c.rabi, c.lam, c.del);
        CHECK(std::abs(epsilon(0.0, r, c.lam, c.del) - 1.0) <= 1e-14);
        // second-order one-sided difference (t < 0 is outside the domain)
        const double h = 1e-5;
        const cdouble d = (4.0 * epsilon(h, r, c.lam, c.del) -
                           epsilon(2.0 * h, r, c.lam, c.del) - 3.0) /
                          (2.0 * h);
        CHECK(std::abs(d) <= 1e-6);
    }
    const CharacteristicRoots r = characteristic_roots(1.0, 5.0, 0.0);
    CHECK_THROWS_AS(epsilon(-0.1, r, 5.0, 0.0), std::invalid_argument);
}

TEST_CASE("survival amplitude never exceeds one") {
    struct Case {
        double rabi, lam, del;
    };
    for (const Case& c : {Case{1.0, 5.0, 0.0}, {1.0, 8.0, 20.0}, {1.0, 1.0, 0.0},
                          {2.0, 1.0, 5.0}, {1.0, 2.0, 0.0}}) {
        const CharacteristicRoots r = characteristic_roots(c.rabi, c.lam, c.del);
        for (int i = 0; i <= 2000; ++i) {
            const double t = 0.01 * i;
            CHECK(std::abs(epsilon(t, r, c.lam, c.del)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("dominant decay rates of the survival probability") {
    // on resonance: rate lambda - sqrt(lambda^2 - 4) decreasing in lambda
    const double expected0[] = {0.41742430504416000, 0.25403330758516580,
                                0.20204102886728761};
    const double lams[] = {5.0, 8.0, 10.0};
    double prev = 1e300;
    for (int i = 0; i < 3; ++i) {
        const CharacteristicRoots r = characteristic_roots(1.0, lams[i], 0.0);
        const double rate = late_rate(r, lams[i], 0.0);
        CHECK(rate == Approx(expected0[i]).epsilon(1e-9));
        CHECK(rate < prev);
        prev = rate;
    }

    // far detuned: rates increase with lambda and track 2 pi J(w0)
    prev = 0.0;
    const double anchors[] = {0.02353, 0.0, 0.04000};
    for (int i = 0; i < 3; ++i) {
        const CharacteristicRoots r = characteristic_roots(1.0, lams[i], 20.0);
        const double rate = late_rate(r, lams[i], 20.0);
        CHECK(rate == Approx(2.0 * std::abs(r.s_plus.real())).epsilon(1e-8));
        if (i != 1) CHECK(std::abs(rate - anchors[i]) <= 1e-3);
        CHECK(rate > prev);
        prev = rate;
    }
}

TEST_CASE("two-exponential and confluent forms agree near the double root") {
    for (double lam : {std::nextafter(2.0, 3.0), std::nextafter(2.0, 0.0)}) {
        const CharacteristicRoots split = characteristic_roots(1.0, lam, 0.0);
        CHECK_FALSE(split.degenerate);  // just outside the threshold
        CharacteristicRoots merged = split;
        merged.degenerate = true;  // force the confluent branch
        for (double t : {0.1, 1.0, 3.0, 10.0}) {
            const cdouble a = epsilon(t, split, lam, 0.0);
            const cdouble b = epsilon(t, merged, lam, 0.0);
            CHECK(std::abs(a - b) <= 1e-8);
        }
    }
}

TEST_CASE("amplitudes: subradiant invariance and round trip") {
    const CouplingConfig uneven(0.6, 0.8);
    const ProjectionPair dark{cdouble(1.0), cdouble(0.0)};
    const CharacteristicRoots r = characteristic_roots(1.0, 5.0, 0.0);
    for (double t : {0.0, 1.0, 5.0, 10.0}) {
        const auto [c1, c2] = amplitudes(t, uneven, dark, r, 5.0, 0.0);
        CHECK(std::abs(c1 - cdouble(0.8)) <= 1e-15);
        CHECK(std::abs(c2 - cdouble(-0.6)) <= 1e-15);
    }

    // equal couplings, |phi+>: both amplitudes follow eps/sqrt(2)
    const double s = 1.0 / std::sqrt(2.0);
    const CouplingConfig even = CouplingConfig::from_r1(s);
    const ProjectionPair bright{cdouble(0.0), cdouble(1.0)};
    for (double t : {0.3, 2.0, 7.5}) {
        const auto [c1, c2] = amplitudes(t, even, bright, r, 5.0, 0.0);
        const cdouble eps = epsilon(t, r, 5.0, 0.0);
        CHECK(std::abs(c1 - s * eps) <= 1e-15);
        CHECK(std::abs(c2 - s * eps) <= 1e-15);
    }

    // t = 0 recovers the initial amplitudes for random states
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(-0.99, 0.99);
    for (int i = 0; i < 100; ++i) {
        cdouble c1(gauss(rng), gauss(rng)), c2(gauss(rng), gauss(rng));
        const double n = std::sqrt(std::norm(c1) + std::norm(c2));
        c1 /= n;
        c2 /= n;
        const CouplingConfig coupling = CouplingConfig::from_r1(unit(rng));
        const ProjectionPair proj =
            project_initial(coupling, InitialAmplitudes(c1, c2));
        const auto [a1, a2] = amplitudes(0.0, coupling, proj, r, 5.0, 0.0);
        CHECK(std::abs(a1 - c1) <= 1e-12);
        CHECK(std::abs(a2 - c2) <= 1e-12);
    }
}

TEST_CASE("reduced density matrix layout") {
    const DensityMatrix4 excited = reduced_density_matrix(cdouble(1.0), cdouble(0.0));
    CHECK(excited(1, 1).real() == Approx(1.0));
    CHECK(std::abs(excited(0, 0)) + std::abs(excited(2, 2)) +
              std::abs(excited(3, 3)) <=
          1e-15);

    const DensityMatrix4 decayed = reduced_density_matrix(cdouble(0.0), cdouble(0.0));
    CHECK(decayed(3, 3).real() == Approx(1.0));
    CHECK(std::abs(decayed.trace() - cdouble(1.0)) <= 1e-15);

    const double s = 1.0 / std::sqrt(2.0);
    const DensityMatrix4 bell = reduced_density_matrix(cdouble(s), cdouble(s));
    for (int i : {1, 2})
        for (int j : {1, 2}) CHECK(bell(i, j).real() == Approx(0.5).epsilon(1e-14));
    CHECK_NOTHROW(validate_density_matrix(bell));

    // partial decay keeps the leakage on |gg><gg|
    const DensityMatrix4 mixed = reduced_density_matrix(cdouble(0.5), cdouble(0.0, 0.5));
    CHECK(mixed(3, 3).real() == Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(mixed(1, 2) - cdouble(0.5) * std::conj(cdouble(0.0, 0.5))) <=
          1e-15);
    CHECK_NOTHROW(validate_density_matrix(mixed));

    CHECK_THROWS_AS(reduced_density_matrix(cdouble(0.9), cdouble(0.9)),
                    std::invalid_argument);
}

TEST_CASE("concurrence of the one-excitation class") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(concurrence(cdouble(s), cdouble(s)) == Approx(1.0).epsilon(1e-14));
    CHECK(concurrence(cdouble(1.0), cdouble(0.0)) == 0.0);

    // equal couplings, |phi+>: C(t) equals the survival probability
    const CharacteristicRoots r = characteristic_roots(1.0, 5.0, 0.0);
    for (double t : {0.5, 2.0, 6.0}) {
        const cdouble eps = epsilon(t, r, 5.0, 0.0);
        CHECK(concurrence(s * eps, s * eps) ==
              Approx(survival_probability(t, r, 5.0, 0.0)).epsilon(1e-13));
    }
}

TEST_CASE("Wootters concurrence agrees with the product form") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(wootters_concurrence(reduced_density_matrix(cdouble(s), cdouble(s))) ==
          Approx(1.0).epsilon(1e-12));
    CHECK(wootters_concurrence(reduced_density_matrix(cdouble(0.0), cdouble(0.0))) <=
          1e-13);

    std::mt19937_64 rng(90125);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        cdouble c1(gauss(rng), gauss(rng)), c2(gauss(rng), gauss(rng));
        // random one-excitation weight, including decayed (mixed) states
        const double scale =
            std::sqrt(weight(rng) / (std::norm(c1) + std::norm(c2)));
        c1 *= scale;
        c2 *= scale;
        const double direct = concurrence(c1, c2);
        const double general = wootters_concurrence(reduced_density_matrix(c1, c2));
        CHECK(std::abs(direct - general) <= 1e-12);
    }

    DensityMatrix4 crooked = reduced_density_matrix(cdouble(s), cdouble(s));
    crooked(0, 1) = 0.1;
    CHECK_THROWS_AS(wootters_concurrence(crooked), std::invalid_argument);
    DensityMatrix4 heavy = reduced_density_matrix(cdouble(s), cdouble(s));
    heavy(0, 0) = 0.5;
    CHECK_THROWS_AS(wootters_concurrence(heavy), std::invalid_argument);
}

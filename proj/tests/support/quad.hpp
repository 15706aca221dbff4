#pragma once

// Self-contained quadrature helpers for the tests: deliberately independent
// of the library's quadrature so spectral integrals, Fourier transforms and
// filter normalizations are checked against a second implementation.

#include <cmath>
#include <complex>

namespace testquad {

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    if (depth <= 0 || std::abs(both - whole) <= 15.0 * tol)
        return both + (both - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson over [a, b] with an initial uniform split so oscillatory
// integrands cannot fool the top-level error estimate.
template <class F>
double integrate(const F& f, double a, double b, double tol,
                 int panels = 64) {
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double pa = a + i * w;
        const double pb = (i + 1 == panels) ? b : pa + w;
        const double pm = 0.5 * (pa + pb);
        const double fa = f(pa);
        const double fm = f(pm);
        const double fb = f(pb);
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_rec(f, pa, pb, fa, fm, fb, whole, tol / panels, 44);
    }
    return total;
}

template <class F>
std::complex<double> integrate_complex(const F& f, double a, double b,
                                       double tol, int panels = 64) {
    const auto re = [&](double x) { return f(x).real(); };
    const auto im = [&](double x) { return f(x).imag(); };
    return {integrate(re, a, b, tol, panels), integrate(im, a, b, tol, panels)};
}

}  // namespace testquad

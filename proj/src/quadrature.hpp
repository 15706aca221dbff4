#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace zenodyn::detail {

// Adaptive Simpson refinement of one panel with a known whole-panel
// estimate; standard Richardson acceptance at 15*tol.  `ok` flips false if
// the depth budget runs out anywhere.
template <class F>
double simpson_refine(const F& f, double a, double b, double fa, double fm,
                      double fb, double whole, double tol, int depth,
                      bool& ok) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    if (std::abs(both - whole) <= 15.0 * tol)
        return both + (both - whole) / 15.0;
    if (depth <= 0) {
        ok = false;
        return both;
    }
    return simpson_refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, ok) +
           simpson_refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, ok);
}

// Composite adaptive Simpson: the interval is pre-split into `panels`
// equal pieces (so oscillatory integrands cannot alias the top-level
// error estimate), each refined adaptively to tol/panels.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        std::size_t panels, bool& ok) {
    panels = std::max<std::size_t>(panels, 1);
    const double w = (b - a) / static_cast<double>(panels);
    const double panel_tol = tol / static_cast<double>(panels);
    double total = 0.0;
    ok = true;
    for (std::size_t i = 0; i < panels; ++i) {
        const double pa = a + static_cast<double>(i) * w;
        const double pb = (i + 1 == panels) ? b : pa + w;
        const double pm = 0.5 * (pa + pb);
        const double fa = f(pa);
        const double fm = f(pm);
        const double fb = f(pb);
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_refine(f, pa, pb, fa, fm, fb, whole, panel_tol, 40, ok);
    }
    return total;
}

}  // namespace zenodyn::detail

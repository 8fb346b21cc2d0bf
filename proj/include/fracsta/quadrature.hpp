#ifndef FRACSTA_QUADRATURE_HPP
#define FRACSTA_QUADRATURE_HPP

#include <cmath>

namespace fracsta {

namespace detail {

template <typename Real, typename F>
Real simpson_refine(const F& f, Real a, Real b, Real fa, Real fm, Real fb, Real whole, Real tol,
                    int depth)
{
    const Real m = (a + b) / 2;
    const Real lm = (a + m) / 2, rm = (m + b) / 2;
    const Real flm = f(lm), frm = f(rm);
    const Real left = (m - a) / 6 * (fa + 4 * flm + fm);
    const Real right = (b - m) / 6 * (fm + 4 * frm + fb);
    const Real diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15 * tol)
        return left + right + diff / 15;
    return simpson_refine(f, a, m, fa, flm, fm, left, tol / 2, depth - 1)
           + simpson_refine(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance `tol`. The interval is
/// first cut into `panels` pieces so narrow features near the midpoint are seen.
template <typename Real, typename F>
Real adaptive_simpson(const F& f, Real a, Real b, Real tol, int panels = 64, int max_depth = 40)
{
    const Real width = (b - a) / panels;
    Real total = 0;
    for (int k = 0; k < panels; ++k) {
        const Real lo = a + width * k;
        const Real hi = k + 1 == panels ? b : lo + width;
        const Real mid = (lo + hi) / 2;
        const Real flo = f(lo), fmid = f(mid), fhi = f(hi);
        const Real whole = (hi - lo) / 6 * (flo + 4 * fmid + fhi);
        total += detail::simpson_refine(f, lo, hi, flo, fmid, fhi, whole, tol / panels, max_depth);
    }
    return total;
}

} // namespace fracsta

#endif // FRACSTA_QUADRATURE_HPP

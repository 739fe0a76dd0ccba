#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <vector>

namespace kawahara::quad {

inline constexpr unsigned kDepth = 10;

/// Adaptive G7K15 over [a,b] split into `panels` equal pieces. The error
/// estimate (summed over panels) is written to *err when given.
template <class F>
auto gk(F&& f, double a, double b, int panels, double tol, double* err = nullptr)
{
    using boost::math::quadrature::gauss_kronrod;
    using R = decltype(f(a));
    R sum{};
    double e_tot = 0.0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double hi = (p + 1 == panels) ? b : lo + h;
        double e = 0.0;
        sum += gauss_kronrod<double, 15>::integrate(f, lo, hi, kDepth, tol, &e);
        e_tot += e;
    }
    if (err) *err = e_tot;
    return sum;
}

/// Same, over consecutive intervals of the sorted break list.
template <class F>
auto gk_breaks(F&& f, const std::vector<double>& pts, double tol, double* err = nullptr)
{
    using R = decltype(f(pts.front()));
    R sum{};
    double e_tot = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i + 1] > pts[i])) continue;
        double e = 0.0;
        sum += gk(f, pts[i], pts[i + 1], 1, tol, &e);
        e_tot += e;
    }
    if (err) *err = e_tot;
    return sum;
}

/// Fixed N-point Gauss-Legendre on [a,b].
template <unsigned N, class F>
auto gauss(F&& f, double a, double b)
{
    return boost::math::quadrature::gauss<double, N>::integrate(f, a, b);
}

}  // namespace kawahara::quad

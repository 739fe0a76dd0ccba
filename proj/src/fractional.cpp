#include "kawahara/fractional.hpp"

#include "kawahara/errors.hpp"
#include "kawahara/spectral.hpp"

#include <cmath>

namespace kawahara {

namespace {

void check_support(const HalfLineSignal& f)
{
    if (f.values.empty() || !(f.dt > 0.0))
        throw StructuralError("half-line signal needs dt > 0 and at least one sample");
    if (std::abs(f.values[0]) > 1e-14)
        throw DomainError("half-line signal does not vanish at t = 0");
}

}  // namespace

HalfLineSignal HalfLineSignal::zeros(int n, double dt)
{
    return HalfLineSignal{dt, std::vector<double>(n, 0.0)};
}

HalfLineSignal HalfLineSignal::sample(int n, double dt, const std::function<double(double)>& f)
{
    HalfLineSignal s = zeros(n, dt);
    for (int i = 0; i < n; ++i) s.values[i] = f(i * dt);
    return s;
}

HalfLineSignal riemann_liouville(const HalfLineSignal& f, double alpha)
{
    if (!(alpha > 0.0)) throw DomainError("riemann_liouville needs alpha > 0");
    check_support(f);
    const int n = f.size();
    // interior weights depend on n-j only
    std::vector<double> p(n + 2), w(n + 1);
    for (int k = 0; k <= n + 1; ++k) p[k] = std::pow(double(k), alpha + 1);
    w[0] = 1.0;
    for (int k = 1; k <= n; ++k) w[k] = p[k + 1] - 2 * p[k] + p[k - 1];
    const double c = std::pow(f.dt, alpha) / std::tgamma(alpha + 2);

    HalfLineSignal out = HalfLineSignal::zeros(n, f.dt);
    const auto& y = f.values;
    parallel_for(n, [&](std::size_t ii) {
        int i = int(ii);
        if (i == 0) return;
        double s = (p[i - 1] - (i - 1 - alpha) * std::pow(double(i), alpha)) * y[0];
        for (int j = 1; j <= i; ++j) s += w[i - j] * y[j];
        out.values[i] = c * s;
    });
    return out;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int order)
{
    // Fornberg's recursion
    const int n = int(xs.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0, c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, order);
        double c2 = 1.0, c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][order];
    return w;
}

namespace {

HalfLineSignal first_derivative(const HalfLineSignal& f)
{
    constexpr int h = 4;  // half width, 8th order
    const int n = f.size();
    if (n < 2 * h + 1) throw StructuralError("signal too short for differentiation");
    static const std::vector<double> central = [] {
        std::vector<double> xs;
        for (int k = -h; k <= h; ++k) xs.push_back(k);
        return fd_weights(0.0, xs, 1);
    }();
    // one-sided weights for the last h points: nodes n-2h-1 .. n-1
    std::vector<std::vector<double>> edge(h);
    std::vector<double> xs;
    for (int k = 0; k <= 2 * h; ++k) xs.push_back(k);
    for (int r = 0; r < h; ++r) edge[r] = fd_weights(2.0 * h - r, xs, 1);

    HalfLineSignal out = HalfLineSignal::zeros(n, f.dt);
    const auto& y = f.values;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        if (i + h < n) {
            for (int k = -h; k <= h; ++k)
                if (i + k >= 0) s += central[k + h] * y[i + k];
        } else {
            const auto& wgt = edge[n - 1 - i];
            int base = n - 1 - 2 * h;
            for (int k = 0; k <= 2 * h; ++k) s += wgt[k] * y[base + k];
        }
        out.values[i] = s / f.dt;
    }
    return out;
}

}  // namespace

HalfLineSignal time_derivative(const HalfLineSignal& f, int m)
{
    HalfLineSignal g = f;
    for (int k = 0; k < m; ++k) g = first_derivative(g);
    return g;
}

HalfLineSignal riemann_liouville_neg(const HalfLineSignal& f, double alpha, FracDiagnostics* diag)
{
    if (!(alpha < 0.0) || alpha <= -5.0)
        throw DomainError("riemann_liouville_neg needs -5 < alpha < 0");
    check_support(f);
    if (diag) {
        int n = 8;
        while (n < 2 * f.size()) n *= 2;
        Field1D z = Field1D::zeros(Grid1D::make(n, n * f.dt));
        for (int i = 0; i < f.size(); ++i) z.values[i] = f.values[i];
        diag->tail_fraction = spectral_tail_fraction(forward_transform(z), 0.5);
        diag->underresolved = diag->tail_fraction > 1e-6;
    }
    int m = int(std::ceil(-alpha - 1e-12));
    HalfLineSignal d = time_derivative(f, m);
    double rest = alpha + m;
    if (std::abs(rest) < 1e-12) return d;
    d.values[0] = 0.0;
    return riemann_liouville(d, rest);
}

HalfLineSignal fractional_integral(const HalfLineSignal& f, double alpha)
{
    if (alpha > 0.0) return riemann_liouville(f, alpha);
    if (alpha < 0.0) return riemann_liouville_neg(f, alpha);
    return f;
}

cplx halfline_power_transform(double alpha, double tau)
{
    if (tau == 0.0) throw DomainError("halfline_power_transform at tau = 0");
    double s = tau > 0 ? -1.0 : 1.0;
    return std::polar(std::pow(std::abs(tau), -alpha), s * 0.5 * pi * alpha);
}

}  // namespace kawahara

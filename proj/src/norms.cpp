#include "kawahara/norms.hpp"

#include "kawahara/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kawahara {

namespace {

template <class W>
double weighted(const Field2D& f, W&& weight)
{
    Field2D h = f.domain == Domain::physical ? forward_transform(f) : f;
    const auto& g = h.grid;
    double s = 0.0;
    for (int a = 0; a < g.nt(); ++a) {
        double tau = g.time.wavenumber(a);
        const cplx* r = h.row(a);
        for (int m = 0; m < g.nx(); ++m) {
            double w = weight(tau, g.space.wavenumber(m));
            if (w != 0.0) s += w * w * std::norm(r[m]);
        }
    }
    return std::sqrt(s / (g.time.L * g.space.L));
}

}  // namespace

double xsb_norm(const Field2D& f, double s, double b)
{
    return weighted(f, [&](double tau, double xi) {
        return std::pow(jb(xi), s) * std::pow(jb(tau - std::pow(xi, 5)), b);
    });
}

double ysb_norm(const Field2D& f, double s, double b)
{
    return weighted(f, [&](double tau, double xi) {
        return std::pow(jb(tau), s / 5.0) * std::pow(jb(tau - std::pow(xi, 5)), b);
    });
}

double dalpha_norm(const Field2D& f, double alpha)
{
    return weighted(f, [&](double tau, double xi) { return std::abs(xi) <= 1.0 ? std::pow(jb(tau), alpha) : 0.0; });
}

double xsb_dalpha_norm(const Field2D& f, double s, double b, double alpha)
{
    return std::max(xsb_norm(f, s, b), dalpha_norm(f, alpha));
}

double xsb_dyadic_sq(const Field2D& f, double s, double b)
{
    Field2D h = f.domain == Domain::physical ? forward_transform(f) : f;
    const auto& g = h.grid;
    double kmax = 0.0;
    for (int m = 0; m < g.nx(); ++m) kmax = std::max(kmax, std::abs(g.space.wavenumber(m)));
    int K = 0;
    while (std::ldexp(1.0, K - 1) < kmax) ++K;
    int J = max_modulation_index(g) + 1;
    double tot = 0.0;
    for (int a = 0; a < g.nt(); ++a) {
        double tau = g.time.wavenumber(a);
        const cplx* r = h.row(a);
        for (int m = 0; m < g.nx(); ++m) {
            double xi = g.space.wavenumber(m), mod = tau - std::pow(xi, 5);
            double e = std::norm(r[m]);
            if (e == 0.0) continue;
            double wk = 0.0, wj = 0.0;
            for (int k = 0; k <= K; ++k) {
                double c = chi(k, xi);
                wk += c * c * std::pow(2.0, 2 * s * k);
            }
            for (int j = 0; j <= J; ++j) {
                double c = chi(j, mod);
                wj += c * c * std::pow(2.0, 2 * b * j);
            }
            tot += wk * wj * e;
        }
    }
    return tot / (g.time.L * g.space.L);
}

double hs_norm(const Field1D& f, double s)
{
    Field1D h = f.domain == Domain::physical ? forward_transform(f) : f;
    double t = 0.0;
    for (int m = 0; m < h.grid.n; ++m) t += std::pow(jb(h.grid.wavenumber(m)), 2 * s) * std::norm(h.values[m]);
    return std::sqrt(t / h.grid.L);
}

double hs0_halfline_norm(const Field1D& f, double s)
{
    if (std::abs(s) >= 0.5) throw DomainError("half-line H^s norm by zero extension needs |s| < 1/2");
    if (f.domain != Domain::physical) throw StructuralError("hs0_halfline_norm expects physical samples");
    Field1D z = f;
    for (int i = 0; i < z.grid.n; ++i)
        if (z.grid.point(i) < 0.0) z.values[i] = 0.0;
    return hs_norm(z, s);
}

double hs_time_norm(const std::vector<cplx>& col, const Grid1D& time, double s)
{
    Field1D c{time, col, Domain::physical};
    return hs_norm(c, s);
}

ZNorm z_norm(const Field2D& u, double s, double b, double alpha, int ell)
{
    if (u.domain != Domain::physical) throw StructuralError("z_norm expects a physical field");
    if (ell < 0) throw DomainError("z_norm needs ell >= 0");
    const auto& g = u.grid;
    ZNorm z;
    for (int it = 0; it < g.nt(); ++it) z.sup_t_hs = std::max(z.sup_t_hs, hs_norm(u.slice(it), s));

    Field2D uh = u;
    forward_x_rows(uh);
    for (int j = 0; j <= ell; ++j) {
        Field2D d = uh;
        for (int it = 0; it < g.nt(); ++it) {
            cplx* r = d.row(it);
            for (int m = 0; m < g.nx(); ++m) {
                cplx ik = 1.0;
                double xi = g.space.wavenumber(m);
                for (int q = 0; q < j; ++q) ik *= I * xi;
                r[m] = (m == g.space.nyquist() && j % 2) ? cplx(0.0) : r[m] * ik;
            }
        }
        inverse_x_rows(d);
        double sig = (s + 2.0 - j) / 5.0, best = 0.0;
        std::vector<cplx> col(g.nt());
        for (int m = 0; m < g.nx(); ++m) {
            for (int it = 0; it < g.nt(); ++it) col[it] = d.at(it, m);
            best = std::max(best, hs_time_norm(col, g.time, sig));
        }
        z.sup_x_traces.push_back(best);
    }
    z.xsb_dalpha = xsb_dalpha_norm(u, s, b, alpha);
    z.total = z.sup_t_hs + z.xsb_dalpha;
    for (double v : z.sup_x_traces) z.total += v;
    return z;
}

}  // namespace kawahara

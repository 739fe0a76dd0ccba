#include "kawahara/propagator.hpp"

#include "kawahara/errors.hpp"
#include "kawahara/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace kawahara {

namespace {

double bump_density(double u)
{
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return std::exp(-1.0 / (u * (1.0 - u)));
}

double bump_cdf(double u)
{
    static const double total = quad::gk(bump_density, 0.0, 1.0, 4, 1e-14);
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    // symmetric density: integrate the shorter side
    if (u > 0.5) return 1.0 - bump_cdf(1.0 - u);
    return quad::gk(bump_density, 0.0, u, 2, 1e-14) / total;
}

// phi1 = (e^z-1)/z, phi2 = (e^z-1-z)/z^2
void phis(cplx z, cplx& p1, cplx& p2)
{
    if (std::abs(z) < 0.1) {
        cplx t = 1.0;
        p1 = 0.0;
        p2 = 0.0;
        double f1 = 1.0, f2 = 2.0;  // (k+1)!, (k+2)!
        for (int k = 0; k < 10; ++k) {
            p1 += t / f1;
            p2 += t / f2;
            t *= z;
            f1 *= k + 2;
            f2 *= k + 3;
        }
        return;
    }
    cplx e = std::exp(z);
    p1 = (e - 1.0) / z;
    p2 = (e - 1.0 - z) / (z * z);
}

// In-place recursion on one frequency column with stride.
void filon_column(cplx* v, std::size_t stride, int nt, double dt, double omega)
{
    cplx z = I * (omega * dt);
    cplx p1, p2;
    phis(z, p1, p2);
    cplx e = std::exp(z);
    cplx a = dt * (p1 - p2), b = dt * p2;
    cplx prev_w = v[0], acc = 0.0;
    v[0] = 0.0;
    for (int i = 1; i < nt; ++i) {
        cplx w = v[i * stride];
        acc = e * acc + a * prev_w + b * w;
        prev_w = w;
        v[i * stride] = acc;
    }
}

}  // namespace

Cutoff::Cutoff(double T) : T_(T)
{
    if (!(T > 0.0)) throw DomainError("cutoff scale must be positive");
}

double Cutoff::psi(double t)
{
    double a = std::abs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return bump_cdf(2.0 - a);
}

Field1D propagate(const Field1D& phi, double t)
{
    Field1D h = forward_transform(phi);
    for (int m = 0; m < h.grid.n; ++m) h.values[m] *= std::polar(1.0, t * std::pow(h.grid.wavenumber(m), 5));
    return inverse_transform(h);
}

Field2D propagate_field(const Field1D& phi, const SpaceTimeGrid& g)
{
    if (!(phi.grid == g.space)) throw StructuralError("propagate_field: space grid mismatch");
    Field1D h = forward_transform(phi);
    Field2D out = Field2D::zeros(g);
    for (int it = 0; it < g.nt(); ++it) {
        double t = g.time.point(it);
        cplx* r = out.row(it);
        for (int m = 0; m < g.nx(); ++m) r[m] = h.values[m] * std::polar(1.0, t * std::pow(g.space.wavenumber(m), 5));
    }
    inverse_x_rows(out);
    return out;
}

std::vector<cplx> duhamel_scalar(const std::vector<cplx>& h, double dt, double omega)
{
    std::vector<cplx> v = h;
    if (!v.empty()) filon_column(v.data(), 1, int(v.size()), dt, omega);
    return v;
}

void duhamel_xhat_inplace(Field2D& w)
{
    const auto& g = w.grid;
    double dt = g.time.dx();
    parallel_for(g.nx(), [&](std::size_t m) {
        filon_column(w.values.data() + m, g.nx(), g.nt(), dt, std::pow(g.space.wavenumber(int(m)), 5));
    });
}

Field2D duhamel(const Field2D& w)
{
    if (w.domain != Domain::physical) throw StructuralError("duhamel expects a physical field");
    if (w.grid.time.origin != 0.0) throw DomainError("duhamel needs a time axis starting at 0");
    Field2D v = w;
    forward_x_rows(v);
    duhamel_xhat_inplace(v);
    inverse_x_rows(v);
    return v;
}

Field2D apply_cutoff(const Field2D& u, double T)
{
    Cutoff psi(T);
    Field2D out = u;
    for (int it = 0; it < u.grid.nt(); ++it) {
        double c = psi(u.grid.time.point(it));
        cplx* r = out.row(it);
        for (int m = 0; m < u.grid.nx(); ++m) r[m] *= c;
    }
    return out;
}

HalfLineSignal apply_cutoff(const HalfLineSignal& u, double T)
{
    Cutoff psi(T);
    HalfLineSignal out = u;
    for (int i = 0; i < u.size(); ++i) out.values[i] *= psi(u.t(i));
    return out;
}

std::vector<cplx> trace_at(const Field2D& u, double x0, int k)
{
    if (u.domain != Domain::physical) throw StructuralError("trace_at expects a physical field");
    const auto& g = u.grid.space;
    const int n = g.n, ny = g.nyquist();
    // per-mode weights shared by every row
    std::vector<cplx> wgt(n);
    for (int m = 0; m < n; ++m) {
        double xi = g.wavenumber(m);
        cplx ik = 1.0;
        for (int j = 0; j < k; ++j) ik *= I * xi;
        if (m == ny) {
            double sgn = (k / 2) % 2 ? -1.0 : 1.0;
            wgt[m] = (k % 2) ? 0.0 : cplx(sgn * std::pow(std::abs(xi), k) * std::cos(xi * (x0 - g.origin)));
        } else {
            wgt[m] = ik * std::polar(1.0, xi * (x0 - g.origin));
        }
    }
    Field2D h = u;
    std::vector<cplx> out(u.grid.nt());
    for (int it = 0; it < u.grid.nt(); ++it) {
        cplx* r = h.row(it);
        fft_inplace(r, n, -1);
        cplx s = 0.0;
        for (int m = 0; m < n; ++m) s += r[m] * wgt[m];
        out[it] = s / double(n);
    }
    return out;
}

double periodic_integral(const Field1D& f, double a, double b)
{
    Field1D h = forward_transform(f);
    const auto& g = h.grid;
    cplx s = h.values[0] * (b - a);
    for (int m = 1; m < g.n; ++m) {
        if (m == g.nyquist()) continue;
        double xi = g.wavenumber(m);
        s += h.values[m] * (std::polar(1.0, xi * b) - std::polar(1.0, xi * a)) / (I * xi);
    }
    return std::real(s) / g.L;
}

namespace {

// Composite Simpson on samples 0..k (3/8 rule on the last panel if k odd).
double simpson(const std::vector<double>& y, int k, double h)
{
    if (k <= 0) return 0.0;
    if (k == 1) return 0.5 * h * (y[0] + y[1]);
    double s = 0.0;
    int end = k;
    if (k % 2) {
        end = k - 3;
        s += 3.0 * h / 8.0 * (y[end] + 3 * y[end + 1] + 3 * y[end + 2] + y[end + 3]);
    }
    for (int i = 0; i + 2 <= end; i += 2) s += h / 3.0 * (y[i] + 4 * y[i + 1] + y[i + 2]);
    return s;
}

}  // namespace

EnergyReport energy_identity_report(const Field2D& u, double T, HalfLine side)
{
    const auto& gt = u.grid.time;
    const auto& gx = u.grid.space;
    double kf = (T - gt.origin) / gt.dx();
    int k = int(std::lround(kf));
    if (std::abs(kf - k) > 1e-9 || k < 0 || k >= gt.n)
        throw DomainError("energy_identity_report: T is not a time-grid point");

    auto half_mass = [&](int it) {
        Field1D sq = Field1D::zeros(gx);
        const cplx* r = u.row(it);
        for (int i = 0; i < gx.n; ++i) sq.values[i] = std::norm(r[i]);
        return side == HalfLine::right ? periodic_integral(sq, 0.0, gx.origin + gx.L)
                                       : periodic_integral(sq, gx.origin, 0.0);
    };

    std::vector<std::vector<cplx>> tr(5);
    for (int d = 0; d <= 4; ++d) tr[d] = trace_at(u, 0.0, d);
    std::vector<double> flux(k + 1);
    for (int i = 0; i <= k; ++i) {
        double u0 = std::real(tr[0][i]), u1 = std::real(tr[1][i]), u2 = std::real(tr[2][i]);
        double u3 = std::real(tr[3][i]), u4 = std::real(tr[4][i]);
        flux[i] = -u2 * u2 + 2 * u3 * u1 - 2 * u4 * u0;
    }
    double F = simpson(flux, k, gt.dx());
    if (side == HalfLine::left) F = -F;

    EnergyReport rep;
    rep.initial = half_mass(0);
    rep.flux = F;
    rep.lhs = half_mass(k);
    rep.rhs = rep.initial + F;
    rep.gap = std::abs(rep.lhs - rep.rhs);

    double peak = 0.0, edge = 0.0;
    int band = std::max(1, gx.n / 20);
    for (int it = 0; it <= k; ++it) {
        const cplx* r = u.row(it);
        for (int i = 0; i < gx.n; ++i) {
            double a = std::abs(r[i]);
            peak = std::max(peak, a);
            if (i < band || i >= gx.n - band) edge = std::max(edge, a);
        }
    }
    rep.wrap_warning = peak > 0.0 && edge > 1e-8 * peak;
    return rep;
}

}  // namespace kawahara

#include "kawahara/forcing.hpp"

#include "kawahara/errors.hpp"
#include "kawahara/propagator.hpp"
#include "kawahara/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace kawahara {

double trace_constant(double lambda, Side side)
{
    if (!(lambda > -4.0)) throw DomainError("trace_constant needs lambda > -4");
    double sn = std::sin((1.0 - lambda) * pi / 5.0);
    if (std::abs(sn) < 1e-12) throw DomainError("trace_constant: lambda = 1 mod 5 is a pole");
    double c = side == Side::plus ? std::cos((1.0 + 4.0 * lambda) * pi / 10.0)
                                  : std::cos((1.0 - 6.0 * lambda) * pi / 10.0);
    return forcing_constant_M() * c / (5.0 * sn);
}

namespace {

void check_time(const HalfLineSignal& f, const SpaceTimeGrid& g)
{
    if (g.time.origin != 0.0) throw DomainError("forcing operators need a time axis starting at 0");
    if (f.size() != g.nt() || std::abs(f.dt - g.time.dx()) > 1e-12 * g.time.dx())
        throw StructuralError("boundary signal does not match the time grid");
}

// Rows of the x-spectrum of M int_0^t e^{(t-t')d^5} delta_0 h(t') dt'.
Field2D boundary_duhamel_hat(const HalfLineSignal& h, const SpaceTimeGrid& g)
{
    const double M = forcing_constant_M();
    Field2D w = Field2D::zeros(g);
    for (int it = 0; it < g.nt(); ++it) {
        cplx* r = w.row(it);
        for (int m = 0; m < g.nx(); ++m) r[m] = M * h.values[it];
    }
    for (int it = 0; it < g.nt(); ++it) w.row(it)[g.space.nyquist()] = 0.0;
    duhamel_xhat_inplace(w);
    return w;
}

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

// (1/Gamma(nu)) int_0^D z^{nu-1} w(z) e^{i z xi} dz, w = 1 on [0,D/2],
// smooth decay to 0 on [D/2, D].
cplx tapered_symbol(double nu, double xi, double D)
{
    const double a = 0.5 * D;
    cplx P;
    if (std::abs(xi) * a <= 4.0) {
        cplx term = 1.0, s = 0.0;
        for (int k = 0; k < 80; ++k) {
            cplx add = term * std::pow(a, nu + k) / (nu + k);
            s += add;
            if (std::abs(add) < 1e-18 * std::abs(s) && k > 4) break;
            term *= I * xi / double(k + 1);
        }
        P = s;
    } else {
        double sg = xi > 0 ? 1.0 : -1.0, ax = std::abs(xi);
        cplx full = std::tgamma(nu) * std::polar(std::pow(ax, -nu), 0.5 * pi * nu * sg);
        auto g = [&](double r) { return std::pow(cplx(a, sg * r / ax), nu - 1.0) * std::exp(-r); };
        cplx tail = I * sg * std::polar(1.0, a * xi) / ax * quad::gk(g, 0.0, 45.0, 3, 1e-14);
        P = full - tail;
    }
    auto q = [&](double z) {
        double wz = 1.0 - smooth_step((z - a) / (D - a));
        return std::pow(z, nu - 1.0) * wz * std::polar(1.0, z * xi);
    };
    int panels = 4 + int(std::ceil(std::abs(xi) * (D - a) / pi));
    cplx Q = 0.0;
    double h = (D - a) / panels;
    for (int p = 0; p < panels; ++p) Q += quad::gauss<20>(q, a + p * h, a + (p + 1) * h);
    return (P + Q) / std::tgamma(nu);
}

cplx ipow(cplx z, int m)
{
    cplx v = 1.0;
    for (int i = 0; i < m; ++i) v *= z;
    return v;
}

std::mutex mult_mutex;

std::vector<cplx> multiplier_table(double lambda, Side side, const Grid1D& gx, const LambdaOptions& opt)
{
    using Key = std::tuple<double, int, double, bool, int, double, double>;
    static std::map<Key, std::vector<cplx>> cache;
    Key key{lambda, int(side), opt.D, opt.force_convolution, gx.n, gx.L, gx.origin};
    {
        std::lock_guard<std::mutex> lock(mult_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<cplx> m(gx.n);
    parallel_for(gx.n, [&](std::size_t i) {
        m[i] = int(i) == gx.nyquist() ? cplx(0.0) : lambda_multiplier(lambda, side, gx.wavenumber(int(i)), opt);
    });
    std::lock_guard<std::mutex> lock(mult_mutex);
    if (cache.size() > 64) cache.clear();
    cache.emplace(key, m);
    return m;
}

}  // namespace

cplx lambda_multiplier(double lambda, Side side, double xi, const LambdaOptions& opt)
{
    cplx d = side == Side::plus ? -I * xi : I * xi;  // symbol of -d or d
    if (lambda == 0.0) return 1.0;
    if (is_integer(lambda) && lambda < 0 && !opt.force_convolution)
        return ipow(d, int(std::lround(-lambda)));
    int m = lambda > 0 ? 0 : int(std::floor(-lambda)) + 1;
    double nu = lambda + m;
    cplx k = tapered_symbol(nu, xi, opt.D);
    if (side == Side::minus) k = std::conj(k);
    return ipow(d, m) * k;
}

Field2D L0(const HalfLineSignal& f, const SpaceTimeGrid& g)
{
    check_time(f, g);
    HalfLineSignal h = riemann_liouville_neg(f, -0.8);
    Field2D v = boundary_duhamel_hat(h, g);
    inverse_x_rows(v);
    return v;
}

std::vector<double> L0_kernel(const HalfLineSignal& f, double x, const KernelTable& table)
{
    const double M = forcing_constant_M();
    HalfLineSignal h = riemann_liouville_neg(f, -0.8);
    const int n = h.size();
    const double dt = h.dt;
    // cubic Lagrange interpolation of h, zero for t <= 0
    auto hval = [&](double t) {
        if (t <= 0.0) return 0.0;
        double u = t / dt;
        int i = std::clamp(int(std::floor(u)) - 1, 0, n - 4);
        double s = 0.0;
        for (int j = i; j < i + 4; ++j) {
            double l = 1.0;
            for (int k = i; k < i + 4; ++k)
                if (k != j) l *= (u - k) / double(j - k);
            s += h.values[j] * l;
        }
        return s;
    };
    auto Bv = [&](double y) {
        if (y > table.hi()) return 0.0;
        if (y < table.lo()) {
            std::ostringstream os;
            os << "L0_kernel needs B on [" << y << ", " << table.hi() << "]";
            throw TableRangeError(os.str(), y, table.hi());
        }
        return table(y);
    };
    std::vector<double> out(n, 0.0);
    for (int i = 1; i < n; ++i) {
        double t = i * dt;
        double smax = std::pow(t, 0.8);
        auto integrand = [&](double sg) {
            double arg = sg > 0.0 ? x / std::pow(sg, 0.25) : (x > 0 ? 1e300 : (x < 0 ? -1e300 : 0.0));
            return Bv(arg) * hval(t - std::pow(sg, 1.25));
        };
        int panels = 8 + 4 * i;
        double s = 0.0, w = smax / panels;
        for (int p = 0; p < panels; ++p) s += quad::gauss<10>(integrand, p * w, (p + 1) * w);
        out[i] = 1.25 * M * s;
    }
    return out;
}

Field2D L_lambda(const HalfLineSignal& gsig, double lambda, Side side, const SpaceTimeGrid& grid,
                 const LambdaOptions& opt)
{
    if (!(lambda > -4.0 && lambda < 0.5)) throw DomainError("L_lambda needs -4 < lambda < 1/2");
    check_time(gsig, grid);
    if (!(opt.D > 0.0) || opt.D > grid.space.L) throw DomainError("kernel length D must be in (0, L]");
    HalfLineSignal h = fractional_integral(gsig, -(4.0 + lambda) / 5.0);
    Field2D v = boundary_duhamel_hat(h, grid);
    if (lambda != 0.0) {
        auto mult = multiplier_table(lambda, side, grid.space, opt);
        for (int it = 0; it < grid.nt(); ++it) {
            cplx* r = v.row(it);
            for (int m = 0; m < grid.nx(); ++m) r[m] *= mult[m];
        }
    }
    inverse_x_rows(v);
    return v;
}

FourthDerivativeLimits fourth_derivative_limits()
{
    static const FourthDerivativeLimits cached = [] {
        const double M = forcing_constant_M();
        auto b = [](int n, double x) { return eval_B(n, x).value; };
        // right: int_0^inf B''''(u)/u du; B'''' decays fast for u > 0
        double right = 0.0;
        for (int p = 0; p < 80; ++p)
            right += quad::gauss<20>([&](double u) { return b(4, u) / u; }, 0.5 * p, 0.5 * (p + 1));
        // left: near part directly, far part after three integrations by parts
        double near = 0.0;
        for (int p = 0; p < 8; ++p)
            near += quad::gauss<20>([&](double u) { return -b(4, u) / u; }, -1.0 + p / 8.0, -1.0 + (p + 1) / 8.0);
        double J = 0.0;
        const double X = 120.0;
        int panels = int(2 * X);
        for (int p = 0; p < panels; ++p) {
            double lo = -1.0 - (p + 1) * (X - 1.0) / panels, hi = -1.0 - p * (X - 1.0) / panels;
            J += quad::gauss<20>([&](double u) { return b(1, u) / (u * u * u * u); }, lo, hi);
        }
        double far = b(3, -1.0) - b(2, -1.0) + 2.0 * b(1, -1.0) - 6.0 * J;
        return FourthDerivativeLimits{5.0 * M * (near + far), 5.0 * M * right};
    }();
    return cached;
}

std::pair<double, double> default_lambda_pair(double s)
{
    double lo = std::max(s - 2.0, -3.0), hi = std::min(0.5, s + 0.5);
    double pad = 0.05 * (hi - lo);
    auto clip = [&](double v) { return std::clamp(v, lo + pad, hi - pad); };
    return {clip(s / 2.0 - 0.45), clip(std::min(0.4, s / 2.0 + 0.3))};
}

ForcingConfig build_matrix(double l1, double l2, double s)
{
    double lo = std::max(s - 2.0, -3.0), hi = std::min(0.5, s + 0.5);
    for (double l : {l1, l2}) {
        if (!(l > lo && l < hi)) {
            std::ostringstream os;
            os << "lambda = " << l << " outside the admissible window (" << lo << ", " << hi << ") for s = " << s;
            throw ConfigurationError(os.str());
        }
    }
    double q = (l1 - l2) / 5.0;
    if (std::abs(q - std::round(q)) < 1e-12) {
        std::ostringstream os;
        os << "lambda pair (" << l1 << ", " << l2 << ") differs by a multiple of 5";
        throw ConfigurationError(os.str());
    }
    ForcingConfig c;
    c.lambda1 = l1;
    c.lambda2 = l2;
    c.s = s;
    c.a1 = trace_constant(l1, Side::plus);
    c.a2 = trace_constant(l2, Side::plus);
    c.b1 = -trace_constant(l1 - 1.0, Side::plus);
    c.b2 = -trace_constant(l2 - 1.0, Side::plus);
    if (std::abs(c.det()) <= 1e-10) {
        std::ostringstream os;
        os << "boundary matrix is singular for lambda pair (" << l1 << ", " << l2 << ")";
        throw ConfigurationError(os.str());
    }
    return c;
}

GammaSolution solve_gamma(const HalfLineSignal& f, const HalfLineSignal& g, const HalfLineSignal& Ft,
                          const HalfLineSignal& Fxt, const ForcingConfig& cfg)
{
    const int n = f.size();
    if (g.size() != n || Ft.size() != n || Fxt.size() != n)
        throw StructuralError("solve_gamma: signals must share the time grid");
    if (std::abs(cfg.det()) <= 1e-10) throw ConfigurationError("solve_gamma: singular boundary matrix");

    HalfLineSignal r1 = HalfLineSignal::zeros(n, f.dt), d = r1;
    for (int i = 0; i < n; ++i) {
        r1.values[i] = f.values[i] - Ft.values[i];
        d.values[i] = g.values[i] - Fxt.values[i];
    }
    GammaSolution out;
    out.compat_error = std::max(std::abs(r1.values[0]), std::abs(d.values[0]));
    r1.values[0] = 0.0;
    d.values[0] = 0.0;
    HalfLineSignal r2 = riemann_liouville(d, 0.2);

    out.gamma1 = HalfLineSignal::zeros(n, f.dt);
    out.gamma2 = out.gamma1;
    const double det = cfg.det();
    double rmax = 0.0, emax = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = r1.values[i], y = r2.values[i];
        double g1 = (cfg.b2 * x - cfg.a2 * y) / det;
        double g2 = (-cfg.b1 * x + cfg.a1 * y) / det;
        out.gamma1.values[i] = g1;
        out.gamma2.values[i] = g2;
        rmax = std::max({rmax, std::abs(x), std::abs(y)});
        emax = std::max({emax, std::abs(cfg.a1 * g1 + cfg.a2 * g2 - x), std::abs(cfg.b1 * g1 + cfg.b2 * g2 - y)});
    }
    out.residual = rmax > 0.0 ? emax / rmax : 0.0;
    return out;
}

}  // namespace kawahara

#include "kawahara/kernel.hpp"

#include "kawahara/errors.hpp"
#include "kawahara/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace kawahara {

namespace {

constexpr double kTheta = pi / 10.0;
constexpr double kRayCut = 42.0;   // integrand below e^{-42} is dropped
constexpr double kSwitch = -10.0;  // left of this the rays start at +-R

cplx ipow(cplx z, int n)
{
    cplx v = 1.0;
    for (int i = 0; i < n; ++i) v *= z;
    return v;
}

cplx phase(double x, cplx xi)
{
    cplx x2 = xi * xi;
    return x * xi + x2 * x2 * xi;
}

// Length of the ray p + s d beyond which |integrand| < e^{-kRayCut}.
double ray_extent(int n, double x, cplx p, cplx d)
{
    auto g = [&](double s) {
        cplx xi = p + s * d;
        return std::imag(phase(x, xi)) - n * std::log(std::max(1.0, std::abs(xi)));
    };
    double ds = std::min(0.05, 1.0 / (1.0 + std::abs(x)));
    double s = 0.0, gprev = g(0.0);
    for (int it = 0; it < 100000; ++it) {
        double sn = s + ds;
        double gn = g(sn);
        if (gn >= kRayCut && gn > gprev) {
            double a = s, b = sn;
            for (int k = 0; k < 60; ++k) {
                double m = 0.5 * (a + b);
                (g(m) >= kRayCut ? b : a) = m;
            }
            return b;
        }
        s = sn;
        gprev = gn;
        ds *= 1.02;
    }
    throw NumericalError("ray extent search did not terminate", 0.0);
}

struct Piece {
    cplx value;
    double err;
};

Piece ray_integral(int n, double x, cplx p, cplx d)
{
    double smax = ray_extent(n, x, p, d);
    double freq = std::abs(x) + 5.0 * std::pow(std::abs(p), 4);
    int panels = 4 + int(std::ceil(smax * freq / 3.0));
    auto f = [&](double s) {
        cplx xi = p + s * d;
        return ipow(I * xi, n) * std::exp(I * phase(x, xi)) * d;
    };
    double err = 0.0;
    cplx v = quad::gk(f, 0.0, smax, panels, 1e-9, &err);
    return {v, err};
}

Piece segment_integral(int n, double x, double R)
{
    int panels = 4 + int(std::ceil(2.0 * R * std::abs(x) / 2.0));
    auto f = [&](double xi) {
        return ipow(I * xi, n) * std::polar(1.0, x * xi + std::pow(xi, 5));
    };
    double err = 0.0;
    cplx v = quad::gk(f, -R, R, panels, 1e-9, &err);
    return {v, err};
}

}  // namespace

KernelValue eval_B(int n, double x)
{
    if (n < 0 || n > 4) throw DomainError("kernel derivative order must be in 0..4");
    if (!std::isfinite(x)) throw DomainError("kernel argument must be finite");
    const cplx dr = std::polar(1.0, kTheta);
    const cplx dl = std::polar(1.0, 9.0 * kTheta);
    double R = 0.0;
    Piece seg{0.0, 0.0};
    if (x < kSwitch) {
        R = 1.15 * std::pow(-x / 5.0, 0.25);
        seg = segment_integral(n, x, R);
    }
    Piece right = ray_integral(n, x, cplx(R, 0.0), dr);
    Piece left = ray_integral(n, x, cplx(-R, 0.0), dl);
    cplx total = (seg.value + right.value - left.value) / (2.0 * pi);
    double err = (seg.err + right.err + left.err) / (2.0 * pi);
    if (err > 1e-8)
        throw NumericalError("kernel quadrature did not converge at x=" + std::to_string(x), err);
    return {total.real(), total.imag(), err};
}

double closed_form_at_zero(int n)
{
    switch (n) {
    case 0: return std::cos(pi / 10) / (5 * std::sin(pi / 5) * std::tgamma(0.8));
    case 1: return -std::cos(3 * pi / 10) / (5 * std::sin(2 * pi / 5) * std::tgamma(0.6));
    case 2: return -std::cos(3 * pi / 10) / (5 * std::sin(2 * pi / 5) * std::tgamma(0.4));
    case 3: return std::cos(pi / 10) / (5 * std::sin(pi / 5) * std::tgamma(0.2));
    default: throw DomainError("closed form available for orders 0..3 only");
    }
}

double value_at_zero(int n)
{
    double v = std::tgamma((n + 1) / 5.0) * std::cos(n * pi / 2 + (n + 1) * pi / 10) / (5 * pi);
    return std::abs(v) < 1e-15 ? 0.0 : v;
}

double forcing_constant_M()
{
    return 1.0 / (closed_form_at_zero(0) * std::tgamma(0.8));
}

double B_left_asymptotic(double X)
{
    double w = std::pow(X / 5.0, 0.25);
    return std::sqrt(2 * pi / (20 * w * w * w)) / pi * std::cos(0.8 * X * w - pi / 4);
}

// ---------------------------------------------------------------- table

KernelTable KernelTable::build(int n, double x_lo, double x_hi, double h0, int degree)
{
    if (!(x_hi > x_lo)) throw DomainError("kernel table needs x_hi > x_lo");
    if (degree < 1 || degree > 11) throw DomainError("interpolation degree must be in 1..11");
    auto step = [&](double x) {
        if (x < kSwitch) return h0 * std::pow(-kSwitch / -x, 0.25);
        if (x > 8.0) return h0 * (1.0 + (x - 8.0) / 8.0);
        return h0;
    };
    std::vector<double> xs;
    double start = std::clamp(0.0, x_lo, x_hi);
    for (double x = start; x > x_lo; x -= step(x)) xs.push_back(x);
    xs.push_back(x_lo);
    std::reverse(xs.begin(), xs.end());
    for (double x = start + step(start); x < x_hi; x += step(x)) xs.push_back(x);
    xs.push_back(x_hi);
    xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return b - a < 1e-12; }), xs.end());
    if (int(xs.size()) < degree + 1) {
        xs.clear();
        for (int i = 0; i <= degree; ++i) xs.push_back(x_lo + (x_hi - x_lo) * i / degree);
    }

    KernelTable t;
    t.n_ = n;
    t.degree_ = degree;
    t.xs_ = xs;
    t.ys_.assign(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t i) { t.ys_[i] = eval_B(n, xs[i]).value; });
    return t;
}

int KernelTable::stencil_start(double x) const
{
    if (!(x >= lo() && x <= hi()))
        throw TableRangeError("kernel table range [" + std::to_string(lo()) + ", " + std::to_string(hi()) +
                                  "] exceeded at x=" + std::to_string(x),
                              std::min(lo(), x), std::max(hi(), x));
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    int idx = int(it - xs_.begin()) - 1;
    int s = idx - degree_ / 2;
    return std::clamp(s, 0, int(xs_.size()) - degree_ - 1);
}

double KernelTable::operator()(double x) const
{
    int s = stencil_start(x);
    double sum = 0.0;
    for (int j = s; j <= s + degree_; ++j) {
        double l = 1.0;
        for (int m = s; m <= s + degree_; ++m)
            if (m != j) l *= (x - xs_[m]) / (xs_[j] - xs_[m]);
        sum += ys_[j] * l;
    }
    return sum;
}

double KernelTable::derivative(double x) const
{
    int s = stencil_start(x);
    double sum = 0.0;
    for (int j = s; j <= s + degree_; ++j) {
        double dl = 0.0;
        for (int m = s; m <= s + degree_; ++m) {
            if (m == j) continue;
            double p = 1.0 / (xs_[j] - xs_[m]);
            for (int l = s; l <= s + degree_; ++l)
                if (l != j && l != m) p *= (x - xs_[l]) / (xs_[j] - xs_[l]);
            dl += p;
        }
        sum += ys_[j] * dl;
    }
    return sum;
}

// ---------------------------------------------------------- integrals

HalflineIntegral integral_B_halfline(const KernelTable& table)
{
    if (table.lo() > 0.0) throw DomainError("table must cover x = 0");
    double xmax = std::min(table.hi(), 40.0);
    const auto& xs = table.abscissae();
    double sum = 0.0, coarse = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double a = std::max(xs[i], 0.0), b = std::min(xs[i + 1], xmax);
        if (!(b > a)) continue;
        sum += quad::gauss<10>(table, a, b);
        coarse += quad::gauss<5>(table, a, b);
    }
    // B decays like exp(-c x^{5/4}) to the right; bound the tail by the last
    // sample over the local decay rate.
    double tail = std::abs(table(xmax)) * 4.0 / (1.0 + std::pow(xmax, 0.25));
    if (tail > 1e-6) throw NumericalError("tail of the half-line integral is not negligible", tail);
    return {sum, tail + std::abs(sum - coarse)};
}

HalflineIntegral integral_B_halfline()
{
    static const KernelTable t = KernelTable::build(0, 0.0, 40.0, 0.05);
    return integral_B_halfline(t);
}

double mellin_closed_form(double lambda, Side side)
{
    if (side == Side::plus) {
        if (!(lambda > 0)) throw DomainError("plus-side Mellin transform needs lambda > 0");
        return 2.0 * std::tgamma(lambda) * std::cos(pi * (1 - lambda) / 5) / (5 * std::tgamma((4 + lambda) / 5));
    }
    if (!(lambda > 0 && lambda < 0.375)) throw DomainError("minus-side Mellin transform needs 0 < lambda < 3/8");
    return std::tgamma(lambda) * std::tgamma((1 - lambda) / 5) * std::cos((1 - 6 * lambda) * pi / 10) / (5 * pi);
}

double mellin_closed_form_raw(double lambda, Side side)
{
    if (side == Side::minus) return mellin_closed_form(lambda, side);
    if (!(lambda > 0)) throw DomainError("plus-side Mellin transform needs lambda > 0");
    auto raw = [](double l) {
        return std::tgamma(l) * std::tgamma((1 - l) / 5) * std::cos((1 + 4 * l) * pi / 10) / (5 * pi);
    };
    double r = (lambda - 1) / 5;
    if (std::abs(r - std::round(r)) < 1e-6 && std::round(r) >= 0) {
        // removable: the Gamma pole meets a zero of the cosine
        double d = 1e-4;
        return 0.5 * (raw(lambda - d) + raw(lambda + d));
    }
    return raw(lambda);
}

namespace {

const KernelTable& left_table()
{
    static const KernelTable t = KernelTable::build(0, -160.0, 0.5, 0.1);
    return t;
}

// int_{Xc}^infty x^{lambda-1} A(x) cos(Phi(x)) dx using the stationary-phase
// form of B(-x), integrated along the vertical line x = Xc + i v.
double left_tail(double lambda, double Xc)
{
    const double kappa = 0.8 * std::pow(5.0, -0.25);
    const double amp = std::sqrt(2 * pi / 20.0) / pi * std::pow(5.0, 3.0 / 8.0);
    auto g = [&](double v) {
        cplx x(Xc, v);
        cplx val = amp * std::pow(x, lambda - 1 - 3.0 / 8.0) *
                   std::exp(I * (kappa * std::pow(x, 1.25) - pi / 4));
        return val * I;
    };
    double err = 0.0;
    cplx v = quad::gk(g, 0.0, 40.0, 16, 1e-12, &err);
    return v.real();
}

}  // namespace

MellinResult mellin_B(double lambda, Side side)
{
    double closed = mellin_closed_form(lambda, side);
    double q = 0.0;
    if (side == Side::plus) {
        auto Bp = [](double x) { return eval_B(0, x).value; };
        // tanh-sinh absorbs the algebraic endpoint behaviour at 0; past 1
        // the integrand is smooth and decays like exp(-c x^{5/4}).
        boost::math::quadrature::tanh_sinh<double> ts;
        auto f = [&](double x) { return x <= 0.0 ? 0.0 : std::pow(x, lambda - 1) * Bp(x); };
        q = ts.integrate(f, 0.0, 1.0, 1e-13);
        for (int p = 1; p < 40; ++p) q += quad::gauss<20>(f, double(p), double(p + 1));
    } else {
        const auto& t = left_table();
        const double Xc = 150.0;
        auto fy = [&](double y) { return y <= 0.0 ? t(0.0) : t(-std::pow(y, 1.0 / lambda)); };
        double near = quad::gk(fy, 0.0, 1.0, 8, 1e-11) / lambda;
        auto f = [&](double x) { return std::pow(x, lambda - 1) * t(-x); };
        double mid = quad::gk(f, 1.0, Xc, 400, 1e-11);
        q = near + mid + left_tail(lambda, Xc);
    }
    return {closed, q, std::abs(closed - q)};
}

EnvelopeReport decay_envelope_check(int n, Direction dir, const std::vector<double>& xs)
{
    if (xs.empty()) throw DomainError("envelope check needs sample points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 0.0 || (i && !(xs[i] > xs[i - 1])))
            throw DomainError("envelope sample points must be nonnegative and increasing");
    }
    EnvelopeReport rep;
    rep.xs = xs;
    rep.envelope.resize(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        double x = xs[i];
        if (dir == Direction::right) {
            rep.envelope[i] = std::abs(eval_B(n, x).value) * std::pow(jb(x), 5);
        } else {
            double b = eval_B(n, -x).value;
            double e = std::abs(b);
            if (x >= 1.0) {
                double w = std::pow(x / 5.0, 0.25);
                double db = eval_B(n + 1 <= 4 ? n + 1 : 4, -x).value / w;
                e = std::hypot(b, db);
            }
            rep.envelope[i] = e * std::pow(jb(x), 3.0 / 8.0);
        }
    });
    rep.constant = *std::max_element(rep.envelope.begin(), rep.envelope.end());
    // slope over strictly positive samples
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0.0 || rep.envelope[i] <= 0.0) continue;
        double lx = std::log(xs[i]), ly = std::log(rep.envelope[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++m;
    }
    if (m >= 2 && m * sxx - sx * sx > 0) rep.log_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return rep;
}

}  // namespace kawahara

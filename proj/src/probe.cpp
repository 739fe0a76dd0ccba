#include "kawahara/probe.hpp"

#include "kawahara/common.hpp"
#include "kawahara/errors.hpp"
#include "kawahara/quadrature.hpp"
#include "kawahara/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace kawahara {

// ---------------------------------------------------------------- bumps

double GaussProfile::operator()(double x) const
{
    double u = (x - c) / w;
    if (std::abs(u) > kCut) return 0.0;
    return std::exp(-0.5 * u * u);
}

double GaussProfile::l2sq() const { return w * std::sqrt(pi); }

bool interval_in_shell(int k, double lo, double hi)
{
    if (k == 0) return lo >= -2.0 && hi <= 2.0;
    double a = std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k + 1);
    return (lo >= a && hi <= b) || (lo >= -b && hi <= -a);
}

bool interval_in_modulation_block(int j, double lo, double hi)
{
    if (j < 0) return false;
    return interval_in_shell(j, lo, hi);
}

int shell_of(double xi)
{
    if (xi == 0.0) throw DomainError("xi = 0 has no shell");
    return int(std::lround(std::log2(std::abs(xi))));
}

int modulation_block_of(double zeta)
{
    if (std::abs(zeta) < std::sqrt(2.0)) return 0;
    return std::max(0, int(std::lround(std::log2(std::abs(zeta)))));
}

double DyadicBump::operator()(double z, double x) const
{
    if (amp == 0.0) return 0.0;
    double px = xi(x);
    if (px == 0.0) return 0.0;
    return amp * zeta(z) * px;
}

DyadicBump DyadicBump::reflected() const
{
    DyadicBump r = *this;
    r.zeta.c = -zeta.c;
    r.xi.c = -xi.c;
    return r;
}

double DyadicBump::l2() const { return std::abs(amp) * std::sqrt(zeta.l2sq() * xi.l2sq()); }

DyadicBump DyadicBump::make(int k, int j, GaussProfile z, GaussProfile x)
{
    if (!(z.w > 0.0) || !(x.w > 0.0)) throw DomainError("bump widths must be positive");
    if (!interval_in_shell(k, x.lo(), x.hi()))
        throw DomainError("bump leaves frequency shell " + std::to_string(k));
    if (!interval_in_modulation_block(j, z.lo(), z.hi()))
        throw DomainError("bump leaves modulation block " + std::to_string(j));
    DyadicBump b;
    b.k = k;
    b.j = j;
    b.zeta = z;
    b.xi = x;
    b.amp = 1.0 / std::sqrt(z.l2sq() * x.l2sq());
    return b;
}

namespace {

double unif(std::mt19937_64& rng, double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(rng);
}

int sign_of(std::mt19937_64& rng) { return (rng() >> 11) & 1 ? 1 : -1; }

// Room around c inside shell k (k = 0 means [-2,2]).
double shell_margin(int k, double c)
{
    if (k == 0) return std::min(c + 2.0, 2.0 - c);
    double a = std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k + 1);
    double m = std::abs(c);
    return std::min(m - a, b - m);
}

// Gaussian centred at c whose cut support fills frac of the room in block k.
GaussProfile fit_profile(int k, double c, double frac)
{
    double m = shell_margin(k, c);
    if (!(m > 0.0)) throw DomainError("centre outside its block");
    return {c, frac * m / GaussProfile::kCut};
}

}  // namespace

DyadicBump DyadicBump::random(int k, int j, std::mt19937_64& rng)
{
    double cx;
    if (k == 0) cx = unif(rng, -1.2, 1.2);
    else cx = sign_of(rng) * std::ldexp(unif(rng, 0.75, 1.4), k);
    double cz;
    if (j == 0) cz = unif(rng, -1.2, 1.2);
    else cz = sign_of(rng) * std::ldexp(unif(rng, 0.75, 1.4), j);
    return make(k, j, fit_profile(j, cz, unif(rng, 0.4, 0.95)), fit_profile(k, cx, unif(rng, 0.4, 0.95)));
}

// ------------------------------------------------------- direct sums

namespace {

struct Nodes {
    std::vector<double> x, w;
};

Nodes trapezoid(double lo, double hi, int n)
{
    Nodes r;
    double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        r.x.push_back(lo + i * h);
        r.w.push_back((i == 0 || i == n - 1) ? 0.5 * h : h);
    }
    return r;
}

template <unsigned N>
Nodes legendre(double lo, double hi)
{
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    Nodes r;
    double m = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < a.size(); ++i) {
        r.x.push_back(m + h * a[i]);
        r.w.push_back(h * wt[i]);
        if (a[i] != 0.0) {
            r.x.push_back(m - h * a[i]);
            r.w.push_back(h * wt[i]);
        }
    }
    return r;
}

double max_abs_dH(const GaussProfile& p1, const GaussProfile& p2)
{
    double m = 0.0;
    for (double a : {p1.lo(), p1.c, p1.hi()})
        for (double b : {p2.lo(), p2.c, p2.hi()}) {
            double s4 = std::pow(a + b, 4);
            m = std::max({m, 5.0 * std::abs(s4 - std::pow(a, 4)), 5.0 * std::abs(s4 - std::pow(b, 4))});
        }
    return m;
}

void guard(int n_zeta, int n_xi, int limit, const char* what)
{
    if (n_zeta < 2 || n_xi < 2) throw ConfigurationError(std::string(what) + ": grids need at least 2 points");
    if (n_zeta > limit || n_xi > limit)
        throw ConfigurationError(std::string(what) + ": cost guard, at most " + std::to_string(limit) +
                                 " points per axis");
}

}  // namespace

double J2_direct(const DyadicBump& f, const DyadicBump& g, const DyadicBump& h, int n_zeta, int n_xi,
                 bool* resolved)
{
    guard(n_zeta, n_xi, 64, "J2");
    if (f.amp == 0.0 || g.amp == 0.0 || h.amp == 0.0) return 0.0;
    Nodes z1 = trapezoid(f.zeta.lo(), f.zeta.hi(), n_zeta), z2 = trapezoid(g.zeta.lo(), g.zeta.hi(), n_zeta);
    Nodes x1 = trapezoid(f.xi.lo(), f.xi.hi(), n_xi), x2 = trapezoid(g.xi.lo(), g.xi.hi(), n_xi);
    if (resolved) {
        double dH = max_abs_dH(f.xi, g.xi);
        double dx = std::max(x1.w[1], x2.w[1]);
        *resolved = dx * dH <= h.zeta.w && dx <= h.xi.w;
    }
    std::vector<double> fz(n_zeta), gz(n_zeta);
    for (int i = 0; i < n_zeta; ++i) {
        fz[i] = f.zeta(z1.x[i]) * z1.w[i];
        gz[i] = g.zeta(z2.x[i]) * z2.w[i];
    }
    double sum = 0.0;
    for (int a = 0; a < n_xi; ++a) {
        double pa = f.xi(x1.x[a]) * x1.w[a];
        if (pa == 0.0) continue;
        for (int b = 0; b < n_xi; ++b) {
            double x3 = x1.x[a] + x2.x[b];
            double pc = h.xi(x3);
            if (pc == 0.0) continue;
            double H = resonance_H(x1.x[a], x2.x[b]);
            double inner = 0.0;
            for (int i = 0; i < n_zeta; ++i) {
                double acc = 0.0;
                for (int k = 0; k < n_zeta; ++k) acc += gz[k] * h.zeta(z1.x[i] + z2.x[k] + H);
                inner += fz[i] * acc;
            }
            sum += pa * g.xi(x2.x[b]) * x2.w[b] * pc * inner;
        }
    }
    return f.amp * g.amp * h.amp * sum;
}

double J3_direct(const DyadicBump& f1, const DyadicBump& f2, const DyadicBump& f3, const DyadicBump& f4,
                 int n_zeta, int n_xi, bool* resolved)
{
    guard(n_zeta, n_xi, 16, "J3");
    if (f1.amp == 0.0 || f2.amp == 0.0 || f3.amp == 0.0 || f4.amp == 0.0) return 0.0;
    const DyadicBump* fs[3] = {&f1, &f2, &f3};
    Nodes z[3], x[3];
    std::vector<double> az[3], px[3];
    for (int i = 0; i < 3; ++i) {
        z[i] = trapezoid(fs[i]->zeta.lo(), fs[i]->zeta.hi(), n_zeta);
        x[i] = trapezoid(fs[i]->xi.lo(), fs[i]->xi.hi(), n_xi);
        for (int m = 0; m < n_zeta; ++m) az[i].push_back(fs[i]->zeta(z[i].x[m]) * z[i].w[m]);
        for (int m = 0; m < n_xi; ++m) px[i].push_back(fs[i]->xi(x[i].x[m]) * x[i].w[m]);
    }
    if (resolved) {
        double span = 0.0, dx = 0.0;
        for (int i = 0; i < 3; ++i) {
            span += std::abs(fs[i]->xi.c) + GaussProfile::kCut * fs[i]->xi.w;
            dx = std::max(dx, x[i].w[1]);
        }
        double dG = 5.0 * std::pow(span, 4) * 2.0;
        *resolved = dx * dG <= f4.zeta.w && dx <= f4.xi.w;
    }
    double sum = 0.0;
    for (int a = 0; a < n_xi; ++a)
        for (int b = 0; b < n_xi; ++b)
            for (int c = 0; c < n_xi; ++c) {
                double xa = x[0].x[a], xb = x[1].x[b], xc = x[2].x[c];
                double p = px[0][a] * px[1][b] * px[2][c];
                if (p == 0.0) continue;
                double p4 = f4.xi(xa + xb + xc);
                if (p4 == 0.0) continue;
                double G = resonance_G(xa, xb, xc);
                double acc = 0.0;
                for (int i = 0; i < n_zeta; ++i)
                    for (int k = 0; k < n_zeta; ++k) {
                        double zik = z[0].x[i] + z[1].x[k] + G;
                        double w = az[0][i] * az[1][k];
                        for (int m = 0; m < n_zeta; ++m) acc += w * az[2][m] * f4.zeta(zik + z[2].x[m]);
                    }
                sum += p * p4 * acc;
            }
    return f1.amp * f2.amp * f3.amp * f4.amp * sum;
}

// ------------------------------------------------ Plancherel route

namespace {

// Samples of a(tau + shift) on the lattice tau = n*dt covering the cut support.
struct LatticeSeq {
    long first = 0;
    std::vector<double> v;
};

LatticeSeq sharp_samples(const GaussProfile& a, double shift, double dt)
{
    LatticeSeq s;
    long lo = long(std::ceil((a.lo() - shift) / dt)), hi = long(std::floor((a.hi() - shift) / dt));
    s.first = lo;
    for (long n = lo; n <= hi; ++n) s.v.push_back(a(n * dt + shift));
    return s;
}

LatticeSeq convolve(const LatticeSeq& a, const LatticeSeq& b, double dt)
{
    LatticeSeq c;
    if (a.v.empty() || b.v.empty()) return c;
    c.first = a.first + b.first;
    c.v.assign(a.v.size() + b.v.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.v.size(); ++i)
        for (std::size_t k = 0; k < b.v.size(); ++k) c.v[i + k] += a.v[i] * b.v[k] * dt;
    return c;
}

double pair(const LatticeSeq& c, const GaussProfile& a, double shift, double dt)
{
    double s = 0.0;
    for (std::size_t i = 0; i < c.v.size(); ++i) s += c.v[i] * a((c.first + long(i)) * dt + shift);
    return s * dt;
}

double p5(double x) { return x * x * x * x * x; }

}  // namespace

double J2_plancherel(const DyadicBump& f, const DyadicBump& g, const DyadicBump& h)
{
    if (f.amp == 0.0 || g.amp == 0.0 || h.amp == 0.0) return 0.0;
    // f#(tau, xi) = f(tau + xi^5, xi); then J2 = int (f# * g#) h#.
    double dt = std::min({f.zeta.w, g.zeta.w, h.zeta.w}) / 3.0;
    Nodes x1 = legendre<40>(f.xi.lo(), f.xi.hi()), x2 = legendre<40>(g.xi.lo(), g.xi.hi());
    double sum = 0.0;
    for (std::size_t a = 0; a < x1.x.size(); ++a)
        for (std::size_t b = 0; b < x2.x.size(); ++b) {
            double xa = x1.x[a], xb = x2.x[b], xc = xa + xb;
            double p = f.xi(xa) * g.xi(xb) * h.xi(xc);
            if (p == 0.0) continue;
            auto c = convolve(sharp_samples(f.zeta, p5(xa), dt), sharp_samples(g.zeta, p5(xb), dt), dt);
            sum += x1.w[a] * x2.w[b] * p * pair(c, h.zeta, p5(xc), dt);
        }
    return f.amp * g.amp * h.amp * sum;
}

double J3_plancherel(const DyadicBump& f1, const DyadicBump& f2, const DyadicBump& f3, const DyadicBump& f4)
{
    if (f1.amp == 0.0 || f2.amp == 0.0 || f3.amp == 0.0 || f4.amp == 0.0) return 0.0;
    double dt = std::min({f1.zeta.w, f2.zeta.w, f3.zeta.w, f4.zeta.w}) / 3.0;
    Nodes x1 = legendre<24>(f1.xi.lo(), f1.xi.hi()), x2 = legendre<24>(f2.xi.lo(), f2.xi.hi()),
          x3 = legendre<24>(f3.xi.lo(), f3.xi.hi());
    double sum = 0.0;
    for (std::size_t a = 0; a < x1.x.size(); ++a)
        for (std::size_t b = 0; b < x2.x.size(); ++b) {
            double xa = x1.x[a], xb = x2.x[b];
            double pab = f1.xi(xa) * f2.xi(xb);
            if (pab == 0.0) continue;
            auto c12 = convolve(sharp_samples(f1.zeta, p5(xa), dt), sharp_samples(f2.zeta, p5(xb), dt), dt);
            for (std::size_t c = 0; c < x3.x.size(); ++c) {
                double xc = x3.x[c], xd = xa + xb + xc;
                double p = pab * f3.xi(xc) * f4.xi(xd);
                if (p == 0.0) continue;
                auto c123 = convolve(c12, sharp_samples(f3.zeta, p5(xc), dt), dt);
                sum += x1.w[a] * x2.w[b] * x3.w[c] * p * pair(c123, f4.zeta, p5(xd), dt);
            }
        }
    return f1.amp * f2.amp * f3.amp * f4.amp * sum;
}

// ------------------------------------------- semi-analytic route
//
// With Gaussian zeta profiles the zeta integrals collapse to one Gaussian in
// the resonance function. What remains is
//   int p_1 ... exp(-(sgn R(xi) - mu)^2 / (2V)) d xi.
// In the innermost variable the resonance has the form
//   Q(y) = 10 a y^4 + 20 a^3 y^2 + c0,
// monotone in y^2, so its level sets are explicit.

namespace {

using Weight = std::function<double(const double*)>;

// y^2 = Y >= 0 with Y^2 + 2 a^2 Y = D, D >= 0
double solve_Y(double a, double D)
{
    if (D <= 0.0) return 0.0;
    double a2 = a * a;
    return D / (a2 + std::sqrt(a2 * a2 + D));
}

struct YRange {
    bool empty = true;
    bool all = false;
    double lo = 0.0, hi = 0.0;  // in Y
};

// Y >= 0 with Q in [v_lo, v_hi]
YRange level_range(double a, double c0, double v_lo, double v_hi)
{
    YRange r;
    if (a == 0.0) {
        if (c0 >= v_lo && c0 <= v_hi) {
            r.empty = false;
            r.all = true;
        }
        return r;
    }
    double d_lo = (v_lo - c0) / (10.0 * a), d_hi = (v_hi - c0) / (10.0 * a);
    if (a < 0.0) std::swap(d_lo, d_hi);
    if (d_hi < 0.0) return r;
    r.empty = false;
    r.lo = solve_Y(a, d_lo);
    r.hi = solve_Y(a, d_hi);
    return r;
}

enum class Mode { full, coarea };

struct Resonant {
    double mu = 0.0;  // centre of Q
    double V = 1.0;
    double rtol = 1e-7;
    Mode mode = Mode::full;
};

constexpr double kWin = 9.0;

// int over y of pA(y - a) pB(y + a) wt(y) exp(-(Q(y) - mu)^2 / 2V)
template <class W>
double inner_level(double a, double c0, const GaussProfile& pA, const GaussProfile& pB, const W& wt,
                   const Resonant& R)
{
    double lo = std::max(pA.lo() + a, pB.lo() - a), hi = std::min(pA.hi() + a, pB.hi() - a);
    if (!(hi > lo)) return 0.0;
    auto f = [&](double y) {
        double Y = y * y;
        double q = 10.0 * a * Y * (Y + 2.0 * a * a) + (c0 - R.mu);
        double e = q * q / (2.0 * R.V);
        if (e > 60.0) return 0.0;
        return pA(y - a) * pB(y + a) * wt(y) * std::exp(-e);
    };
    if (R.mode == Mode::coarea) {
        double d = (R.mu - c0) / (10.0 * a);
        if (a == 0.0 || d <= 0.0) return 0.0;
        double Y = solve_Y(a, d);
        double y0 = std::sqrt(Y);
        double dq = std::abs(40.0 * a * y0 * (Y + a * a));
        if (dq == 0.0) return 0.0;
        double s = 0.0;
        for (double y : {y0, -y0})
            if (y >= lo && y <= hi) s += pA(y - a) * pB(y + a) * wt(y);
        return s * std::sqrt(2.0 * pi * R.V) / dq;
    }
    double sv = kWin * std::sqrt(R.V);
    YRange yr = level_range(a, c0, R.mu - sv, R.mu + sv);
    if (yr.empty) return 0.0;
    std::vector<std::pair<double, double>> pieces;
    if (yr.all) pieces.push_back({lo, hi});
    else {
        double r0 = std::sqrt(yr.lo), r1 = std::sqrt(yr.hi);
        if (r0 == 0.0) pieces.push_back({-r1, r1});
        else {
            pieces.push_back({-r1, -r0});
            pieces.push_back({r0, r1});
        }
    }
    double s = 0.0;
    for (auto [u, v] : pieces) {
        u = std::max(u, lo);
        v = std::min(v, hi);
        if (!(v > u)) continue;
        s += quad::gk(f, u, v, 1, R.rtol);
    }
    return s;
}

template <class F>
double integrate_pieces(F&& f, std::vector<double> pts, Mode mode, double rtol)
{
    std::sort(pts.begin(), pts.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i], b = pts[i + 1];
        if (!(b - a > 1e-13 * std::max(std::abs(a), std::abs(b)))) continue;
        if (mode == Mode::coarea) {
            // x = a + (b - a)(1 - cos t)/2 absorbs inverse square roots at the folds
            double h = 0.5 * (b - a);
            auto g = [&](double t) {
                double x = t < 0.5 * pi ? a + h * (1.0 - std::cos(t)) : b - h * (1.0 + std::cos(t));
                return f(std::clamp(x, a, b)) * h * std::sin(t);
            };
            s += quad::gk(g, 0.0, pi, 2, rtol);
        } else {
            s += quad::gk(f, a, b, 1, rtol);
        }
    }
    return s;
}

std::vector<double> clipped(std::vector<double> pts, double lo, double hi)
{
    std::vector<double> out{lo, hi};
    for (double p : pts)
        if (std::isfinite(p) && p > lo && p < hi) out.push_back(p);
    return out;
}

double fifth_root(double x) { return std::copysign(std::pow(std::abs(x), 0.2), x); }

Mode pick_mode(double V, double scale) { return std::sqrt(V) < 1e-7 * scale ? Mode::coarea : Mode::full; }

// Roots of g on [lo, hi] by scanning and bisection.
template <class G>
void scan_roots(const G& g, double lo, double hi, int n, std::vector<double>& out)
{
    double xp = lo, gp = g(lo);
    for (int i = 1; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n, gx = g(x);
        if ((gp < 0.0) != (gx < 0.0)) {
            double a = xp, b = x, ga = gp;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b), gm = g(m);
                if ((gm < 0.0) == (ga < 0.0)) {
                    a = m;
                    ga = gm;
                } else b = m;
            }
            out.push_back(0.5 * (a + b));
        }
        xp = x;
        gp = gx;
    }
}

}  // namespace

namespace {

// int p1(x1) p2(x2) p3(x1+x2) w(x1,x2,x3) exp(-(sgn H(x1,x2) - mu)^2 / 2V)
double resonant2(const GaussProfile& p1, const GaussProfile& p2, const GaussProfile& p3, int sgn, double mu,
                 double V, const Weight& w, double rtol)
{
    double lo = std::max(p1.lo(), p3.lo() - p2.hi()), hi = std::min(p1.hi(), p3.hi() - p2.lo());
    if (!(hi > lo)) return 0.0;
    Resonant R;
    R.mu = sgn * mu;
    R.V = V;
    R.rtol = rtol;
    double scale = 0.0;
    for (double a : {p1.lo(), p1.hi()})
        for (double b : {p2.lo(), p2.hi()}) scale = std::max(scale, std::abs(resonance_H(a, b)));
    R.mode = pick_mode(V, scale + std::abs(mu));
    auto inner = [&](double x1) {
        double pv = p1(x1);
        if (pv == 0.0) return 0.0;
        double a = 0.5 * x1;
        auto wt = [&](double y) {
            if (!w) return 1.0;
            double x[3] = {x1, y - a, y + a};
            return w(x);
        };
        return pv * inner_level(a, -30.0 * p5(a), p2, p3, wt, R);
    };
    // fold of the level set: c0(x1) = -30 (x1/2)^5 = mu
    std::vector<double> bp;
    double sv = kWin * std::sqrt(V);
    for (double m : {R.mu, R.mu - sv, R.mu + sv}) bp.push_back(2.0 * fifth_root(-m / 30.0));
    return integrate_pieces(inner, clipped(bp, lo, hi), R.mode, rtol);
}

// int p1 p2 p3 p4(x1+x2+x3) w exp(-(sgn G - mu)^2 / 2V)
double resonant3(const GaussProfile& p1, const GaussProfile& p2, const GaussProfile& p3, const GaussProfile& p4,
                 int sgn, double mu, double V, const Weight& w, double rtol)
{
    double lo = std::max(p1.lo(), p4.lo() - p2.hi() - p3.hi()), hi = std::min(p1.hi(), p4.hi() - p2.lo() - p3.lo());
    if (!(hi > lo)) return 0.0;
    Resonant R;
    R.mu = sgn * mu;
    R.V = V;
    R.rtol = rtol;
    double scale = 0.0;
    for (double a : {p1.lo(), p1.hi()})
        for (double b : {p2.lo(), p2.hi()})
            for (double c : {p3.lo(), p3.hi()}) scale = std::max(scale, std::abs(resonance_G(a, b, c)));
    R.mode = pick_mode(V, scale + std::abs(mu));
    double sv = kWin * std::sqrt(V);
    auto middle = [&](double x1) {
        double pv = p1(x1);
        if (pv == 0.0) return 0.0;
        double l2 = std::max(p2.lo(), p4.lo() - p3.hi() - x1), h2 = std::min(p2.hi(), p4.hi() - p3.lo() - x1);
        if (!(h2 > l2)) return 0.0;
        auto inner = [&](double x2) {
            double q = p2(x2);
            if (q == 0.0) return 0.0;
            double s = x1 + x2, a = 0.5 * s;
            double c0 = -30.0 * p5(a) + resonance_H(x1, x2);
            auto wt = [&](double y) {
                if (!w) return 1.0;
                double x[4] = {x1, x2, y - a, y + a};
                return w(x);
            };
            return q * inner_level(a, c0, p3, p4, wt, R);
        };
        std::vector<double> bp;
        for (double m : {R.mu, R.mu - sv, R.mu + sv}) {
            auto g = [&](double x2) { return p5(x1 + x2) / 16.0 - p5(x1) - p5(x2) - m; };
            scan_roots(g, l2, h2, 48, bp);
        }
        return pv * integrate_pieces(inner, clipped(bp, l2, h2), R.mode, rtol);
    };
    return integrate_pieces(middle, std::vector<double>{lo, hi}, R.mode, rtol);
}

}  // namespace

namespace {

// zeta part of J2: int a_f(z1) a_g(z2) a_h(z1 + z2 + sgn*H) = pref * exp(-(m_f+m_g+sgn H-m_h)^2/2V)
struct ZetaCollapse {
    double pref = 0.0, V = 1.0, mu = 0.0;
};

ZetaCollapse collapse(const std::vector<const GaussProfile*>& inputs, const GaussProfile& out)
{
    ZetaCollapse z;
    double S2 = 0.0, m = 0.0, pref = 1.0;
    for (auto* p : inputs) {
        S2 += p->w * p->w;
        m += p->c;
        pref *= std::sqrt(2.0 * pi) * p->w;
    }
    z.V = S2 + out.w * out.w;
    z.pref = pref * out.w / std::sqrt(z.V);
    z.mu = out.c - m;
    return z;
}

}  // namespace

double J2_semi(const DyadicBump& f, const DyadicBump& g, const DyadicBump& h, double rtol)
{
    if (f.amp == 0.0 || g.amp == 0.0 || h.amp == 0.0) return 0.0;
    auto z = collapse({&f.zeta, &g.zeta}, h.zeta);
    double r = resonant2(f.xi, g.xi, h.xi, +1, z.mu, z.V, nullptr, rtol);
    return f.amp * g.amp * h.amp * z.pref * r;
}

double J3_semi(const DyadicBump& f1, const DyadicBump& f2, const DyadicBump& f3, const DyadicBump& f4, double rtol)
{
    if (f1.amp == 0.0 || f2.amp == 0.0 || f3.amp == 0.0 || f4.amp == 0.0) return 0.0;
    auto z = collapse({&f1.zeta, &f2.zeta, &f3.zeta}, f4.zeta);
    double r = resonant3(f1.xi, f2.xi, f3.xi, f4.xi, +1, z.mu, z.V, nullptr, rtol);
    return f1.amp * f2.amp * f3.amp * f4.amp * z.pref * r;
}

namespace {

double rel_spread(const std::vector<double>& v)
{
    double lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
    double m = std::max(std::abs(lo), std::abs(hi));
    return m == 0.0 ? 0.0 : (hi - lo) / m;
}

}  // namespace

double J2_permutation_spread(const DyadicBump& f, const DyadicBump& g, const DyadicBump& h)
{
    return rel_spread({J2_direct(f, g, h), J2_direct(g.reflected(), h, f), J2_direct(h, f.reflected(), g)});
}

double J3_permutation_spread(const DyadicBump& f1, const DyadicBump& f2, const DyadicBump& f3, const DyadicBump& f4)
{
    return rel_spread({std::abs(J3_direct(f1, f2, f3, f4)), std::abs(J3_direct(f2, f1, f3, f4)),
                       std::abs(J3_direct(f3, f2, f1, f4)),
                       std::abs(J3_direct(f1.reflected(), f2.reflected(), f4, f3))});
}

// ------------------------------------------------ support property

namespace {

struct Span {
    double lo, hi;
};

// Signed pieces of a frequency shell / modulation block.
std::vector<Span> block_pieces(int k)
{
    if (k == 0) return {{-2.0, 2.0}};
    double a = std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k + 1);
    return {{-b, -a}, {a, b}};
}

std::vector<Span> add(const std::vector<Span>& A, const std::vector<Span>& B, double sb = 1.0)
{
    std::vector<Span> r;
    for (auto& a : A)
        for (auto& b : B) {
            double l = sb > 0 ? b.lo : -b.hi, h = sb > 0 ? b.hi : -b.lo;
            r.push_back({a.lo + l, a.hi + h});
        }
    return r;
}

bool meets(const std::vector<Span>& A, const std::vector<Span>& B)
{
    for (auto& a : A)
        for (auto& b : B)
            if (a.lo <= b.hi && b.lo <= a.hi) return true;
    return false;
}

double draw_in(const std::vector<Span>& P, std::mt19937_64& rng)
{
    const Span& s = P[rng() % P.size()];
    return unif(rng, s.lo, s.hi);
}

bool inside(const std::vector<Span>& P, double x)
{
    for (auto& s : P)
        if (x >= s.lo && x <= s.hi) return true;
    return false;
}

double resonance(const std::vector<double>& xs)
{
    return xs.size() == 2 ? resonance_H(xs[0], xs[1]) : resonance_G(xs[0], xs[1], xs[2]);
}

// Sample frequency points (xi_1..xi_{n-1}) with the sum in the last block.
std::vector<std::vector<double>> feasible_frequencies(const std::vector<Block>& blocks, std::mt19937_64& rng,
                                                      int want, int tries)
{
    int n = int(blocks.size());
    std::vector<std::vector<double>> out;
    for (int t = 0; t < tries && int(out.size()) < want; ++t) {
        int d = int(rng() % n);  // determined coordinate
        std::vector<double> x(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            if (i == d) continue;
            x[i] = draw_in(block_pieces(blocks[i].k), rng);
            s += (i == n - 1) ? -x[i] : x[i];
        }
        x[d] = (d == n - 1) ? s : -s;
        if (!inside(block_pieces(blocks[d].k), x[d])) continue;
        out.push_back(std::vector<double>(x.begin(), x.end() - 1));
    }
    return out;
}

}  // namespace

SupportCheck support_property_check(const std::vector<Block>& blocks, std::uint64_t seed, int samples)
{
    if (blocks.size() != 3 && blocks.size() != 4) throw DomainError("support check takes 3 or 4 blocks");
    for (auto& b : blocks)
        if (b.j < 0) throw DomainError("modulation index must be nonnegative");
    int n = int(blocks.size());
    SupportCheck rep;
    std::mt19937_64 rng(seed);

    // frequency rule: the sum of the first n-1 blocks meets the last one
    std::vector<Span> sum = block_pieces(blocks[0].k);
    for (int i = 1; i < n - 1; ++i) sum = add(sum, block_pieces(blocks[i].k));
    if (!meets(sum, block_pieces(blocks[n - 1].k))) {
        rep.compliant = false;
        rep.diagnostic = "frequency sum cannot reach the output shell";
    }
    std::vector<std::vector<double>> pts;
    if (rep.compliant) {
        pts = feasible_frequencies(blocks, rng, 4000, 400000);
        // modulation rule: the resonance range meets I_{j_n} - sum I_{j_i}
        std::vector<Span> need = block_pieces(blocks[n - 1].j);
        for (int i = 0; i < n - 1; ++i) need = add(need, block_pieces(blocks[i].j), -1.0);
        // sampled resonances, each with a 10% margin (the sampled set may be
        // disconnected, so no interval hull)
        std::vector<std::vector<double>> good;
        for (auto& p : pts) {
            double r = resonance(p), pad = 0.1 * std::abs(r) + 4.0;
            if (meets(need, {{r - pad, r + pad}})) good.push_back(p);
        }
        bool hit = !good.empty();
        if (hit) pts = good;
        if (pts.empty()) {
            rep.compliant = false;
            rep.diagnostic = "no frequency configuration found";
        } else if (!hit) {
            rep.compliant = false;
            rep.diagnostic = "modulations cannot absorb the resonance";
        }
    }

    for (int s = 0; s < samples; ++s) {
        std::vector<DyadicBump> f;
        if (!rep.compliant) {
            // any realization inside the blocks must give zero
            for (auto& b : blocks) f.push_back(DyadicBump::random(b.k, b.j, rng));
        } else {
            // aligned realization around a feasible point
            const auto& xs = pts[rng() % pts.size()];
            std::vector<double> cx(xs);
            double tot = 0.0;
            for (double v : xs) tot += v;
            cx.push_back(tot);
            double r = resonance(xs);
            std::vector<double> cz;
            bool ok = false;
            for (int t = 0; t < 20000 && !ok; ++t) {
                cz.clear();
                double zs = r;
                for (int i = 0; i < n - 1; ++i) {
                    cz.push_back(draw_in(block_pieces(blocks[i].j), rng));
                    zs += cz.back();
                }
                cz.push_back(zs);
                ok = inside(block_pieces(blocks[n - 1].j), zs);
            }
            if (!ok) {
                rep.diagnostic = "compliant blocks but no aligned modulation found";
                continue;
            }
            try {
                for (int i = 0; i < n; ++i)
                    f.push_back(DyadicBump::make(blocks[i].k, blocks[i].j, fit_profile(blocks[i].j, cz[i], 0.5),
                                                 fit_profile(blocks[i].k, cx[i], 0.5)));
            } catch (const DomainError&) {
                continue;  // sampled point on a block edge
            }
        }
        double J;
        if (rep.compliant) J = n == 3 ? J2_semi(f[0], f[1], f[2], 1e-6) : J3_semi(f[0], f[1], f[2], f[3], 1e-5);
        else J = n == 3 ? J2_direct(f[0], f[1], f[2], 24, 24) : J3_direct(f[0], f[1], f[2], f[3], 12, 12);
        double norms = 1.0;
        for (auto& b : f) norms *= b.l2();
        rep.max_normalized = std::max(rep.max_normalized, std::abs(J) / norms);
        ++rep.samples;
    }
    if (rep.diagnostic.empty()) rep.diagnostic = rep.compliant ? "compliant" : "violates support rule";
    return rep;
}

// --------------------------------------------------- block bounds

BlockVariant parse_block_variant(const std::string& s)
{
    static const std::map<std::string, BlockVariant> m{{"L2a", BlockVariant::L2a}, {"L2b", BlockVariant::L2b},
                                                        {"L2c", BlockVariant::L2c}, {"L3a", BlockVariant::L3a},
                                                        {"L3b1", BlockVariant::L3b1}, {"L3b2", BlockVariant::L3b2}};
    auto it = m.find(s);
    if (it == m.end()) throw ConfigurationError("unknown block variant: " + s);
    return it->second;
}

std::string to_string(BlockVariant v)
{
    switch (v) {
    case BlockVariant::L2a: return "L2a";
    case BlockVariant::L2b: return "L2b";
    case BlockVariant::L2c: return "L2c";
    case BlockVariant::L3a: return "L3a";
    case BlockVariant::L3b1: return "L3b1";
    case BlockVariant::L3b2: return "L3b2";
    }
    return "?";
}

double block_bound_rhs(BlockVariant v, const std::vector<int>& ks, const std::vector<int>& js)
{
    bool tri = v == BlockVariant::L3a || v == BlockVariant::L3b1 || v == BlockVariant::L3b2;
    std::size_t n = tri ? 4 : 3;
    if (ks.size() != n || js.size() != n)
        throw DomainError(to_string(v) + " takes " + std::to_string(n) + " frequency and modulation indices");
    for (int j : js)
        if (j < 0) throw DomainError("modulation indices must be nonnegative");
    if (tri)
        for (int k : ks)
            if (k < 0) throw DomainError("trilinear frequency indices must be nonnegative");
    auto kd = ks, jd = js;  // descending
    std::sort(kd.rbegin(), kd.rend());
    std::sort(jd.rbegin(), jd.rend());
    auto p2 = [](double e) { return std::exp2(e); };
    int jsum = 0;
    for (int j : js) jsum += j;
    switch (v) {
    case BlockVariant::L2a:
        if (kd[0] - kd[2] > 5) throw DomainError("L2a needs |k_max - k_min| <= 5");
        return p2(jd[2] / 2.0 + jd[1] / 4.0 - 0.75 * kd[0]);
    case BlockVariant::L2b: {
        if (kd[1] - kd[2] < 5) throw DomainError("L2b needs 2^k_min << 2^k_med (k_med - k_min >= 5)");
        if (kd[0] - kd[1] > 5) throw DomainError("L2b needs 2^k_med ~ 2^k_max (k_max - k_med <= 5)");
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < 3; ++i)
            best = std::min(best, p2(jsum / 2.0 - 1.5 * kd[0] - (ks[i] + js[i]) / 2.0));
        return best;
    }
    case BlockVariant::L2c: return p2(jd[2] / 2.0 + kd[2] / 2.0);
    case BlockVariant::L3a: return p2((jd[3] + jd[2]) / 2.0 + (kd[3] + kd[2]) / 2.0);
    case BlockVariant::L3b1:
    case BlockVariant::L3b2: {
        if (kd[2] > kd[0] - 10) throw DomainError(to_string(v) + " needs k_thd <= k_max - 10");
        bool hit = false;
        for (std::size_t i = 0; i < 4; ++i) hit = hit || (ks[i] == kd[2] && js[i] == jd[0]);
        if (v == BlockVariant::L3b1 && !hit) throw DomainError("L3b1 needs (k_i, j_i) = (k_thd, j_max) for some i");
        if (v == BlockVariant::L3b2 && hit) throw DomainError("L3b2 needs (k_i, j_i) != (k_thd, j_max) for all i");
        double kk = v == BlockVariant::L3b1 ? kd[2] : kd[3];
        return p2(jsum / 2.0 - 2.0 * kd[0] + kk / 2.0 - jd[0] / 2.0);
    }
    }
    return 0.0;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("slope fit needs two or more points");
    double n = double(xs.size()), mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

// ------------------------------------------------------ probes

namespace {

std::mt19937_64 member_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t member)
{
    std::seed_seq sq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(tag), std::uint32_t(member)};
    return std::mt19937_64(sq);
}

// Fill per-class maxima and slopes from the sample list.
void summarize(ProbeReport& rep, const std::vector<std::string>& names, const std::vector<bool>& diag)
{
    rep.classes.clear();
    rep.max_ratio = 0.0;
    rep.slope = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < names.size(); ++c) {
        std::map<int, double> best;
        for (auto& s : rep.samples)
            if (s.cls == names[c]) best[s.k_max] = std::max(best[s.k_max], s.ratio);
        ProbeClass pc;
        pc.name = names[c];
        pc.diagnostic = diag[c];
        std::vector<double> xs, ys;
        for (auto [k, r] : best) {
            pc.max_ratio = std::max(pc.max_ratio, r);
            if (r > 0.0) {
                xs.push_back(k);
                ys.push_back(std::log2(r));
            }
        }
        pc.slope = xs.size() >= 2 ? fit_slope(xs, ys) : 0.0;
        rep.max_ratio = std::max(rep.max_ratio, pc.max_ratio);
        rep.classes.push_back(pc);
    }
    bool any = false;
    for (auto& c : rep.classes)
        if (!c.diagnostic) {
            rep.slope = std::max(rep.slope, c.slope);
            any = true;
        }
    if (!any)
        for (auto& c : rep.classes) rep.slope = std::max(rep.slope, c.slope);
    if (rep.classes.empty()) rep.slope = 0.0;
}

// Room in a pure dyadic shell (any integer k).
double pure_margin(int k, double c)
{
    double a = std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k + 1), m = std::abs(c);
    return std::min(m - a, b - m);
}

// A configuration relative to frequency scale 1 and modulation scale 1.
// Realizing at shift s multiplies xi by 2^s and zeta by 2^{5s}.
struct RelConfig {
    std::vector<double> cx, cz, fx, fz;  // centres and width fractions
    bool pure = true;                    // shells for every k (bilinear case)
};

std::vector<DyadicBump> realize(const RelConfig& rc, int shift)
{
    std::vector<DyadicBump> out;
    for (std::size_t i = 0; i < rc.cx.size(); ++i) {
        double x = std::ldexp(rc.cx[i], shift), z = std::ldexp(rc.cz[i], 5 * shift);
        int k = shell_of(x), j = modulation_block_of(z);
        double mx = rc.pure ? pure_margin(k, x) : shell_margin(k, x);
        double mz = shell_margin(j, z);
        GaussProfile px{x, rc.fx[i] * mx / GaussProfile::kCut}, pz{z, rc.fz[i] * mz / GaussProfile::kCut};
        DyadicBump b;
        if (rc.pure && k < 0) {
            // shells below the unit one are not I_k blocks; build by hand
            b.k = k;
            b.j = j;
            b.zeta = pz;
            b.xi = px;
            b.amp = 1.0 / std::sqrt(pz.l2sq() * px.l2sq());
        } else {
            b = DyadicBump::make(k, j, pz, px);
        }
        out.push_back(b);
    }
    return out;
}

int top_label(const RelConfig& rc)
{
    int t = std::numeric_limits<int>::min();
    for (double x : rc.cx) t = std::max(t, shell_of(x));
    return t;
}

RelConfig draw_block_config(BlockVariant v, int k_lo, std::mt19937_64& rng)
{
    bool tri = v == BlockVariant::L3a || v == BlockVariant::L3b1 || v == BlockVariant::L3b2;
    int n = tri ? 4 : 3;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        RelConfig rc;
        rc.pure = !tri;
        std::vector<double> c(n - 1);
        auto mag = [&](double lo, double hi) { return sign_of(rng) * std::exp2(unif(rng, lo, hi)); };
        switch (v) {
        case BlockVariant::L2a:
            for (auto& x : c) x = mag(-4.5, 0.3);
            break;
        case BlockVariant::L2c:
            for (auto& x : c) x = mag(-7.0, 0.3);
            break;
        case BlockVariant::L2b: {
            int low = int(rng() % 3);
            if (low == 2) {
                c[0] = mag(-0.3, 0.3);
                c[1] = -c[0] + mag(-9.0, -5.5);
            } else {
                c[low] = mag(-9.0, -5.5);
                c[1 - low] = mag(-0.3, 0.3);
            }
            break;
        }
        case BlockVariant::L3a:
            for (auto& x : c) x = mag(-2.5, 0.3);
            break;
        case BlockVariant::L3b1:
        case BlockVariant::L3b2: {
            int pattern = int(rng() % 4);  // which pair of the four is low
            double e = std::max(-12.0, 0.6 - k_lo);
            double l1 = mag(e, -9.6), l2 = mag(e, -9.6), h = mag(-0.3, 0.3);
            if (pattern == 0) c = {l1, l2, h};
            else if (pattern == 1) c = {l1, h, l2};
            else if (pattern == 2) c = {h, -h - l1 + l2, l1};  // output low
            else c = {l1, h, -h - l1 + l2};
            break;
        }
        }
        double s = 0.0;
        for (double x : c) s += x;
        if (std::abs(s) < 1e-12) continue;
        rc.cx = c;
        rc.cx.push_back(s);
        int top = top_label(rc);
        bool bad = false;
        for (double x : rc.cx)
            if (tri && shell_of(x) - top < 1 - k_lo) bad = true;  // keep away from I_0
        if (bad) continue;
        // modulations, relative to 2^{5 top}
        double scale = std::exp2(5.0 * top);
        double zs = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            rc.cz.push_back(sign_of(rng) * scale * std::exp2(unif(rng, -8.0, 4.0)));
            zs += rc.cz.back();
        }
        double R = n == 3 ? resonance_H(c[0], c[1]) : resonance_G(c[0], c[1], c[2]);
        rc.cz.push_back(zs + R);
        for (int i = 0; i < n; ++i) {
            rc.fx.push_back(unif(rng, 0.3, 0.9));
            rc.fz.push_back(unif(rng, 0.3, 0.9));
        }
        // labels at the lowest scale must keep modulations out of I_0
        int shift = k_lo - top;
        bool small = false;
        for (double z : rc.cz)
            if (std::abs(std::ldexp(z, 5 * shift)) < 3.0) small = true;
        if (small) continue;
        try {
            auto bs = realize(rc, shift);
            std::vector<int> ks, js;
            for (auto& b : bs) {
                ks.push_back(b.k);
                js.push_back(b.j);
            }
            block_bound_rhs(v, ks, js);
        } catch (const DomainError&) {
            continue;
        }
        return rc;
    }
    throw DomainError("no configuration satisfies the hypotheses of " + to_string(v) + " in this range");
}

}  // namespace

ProbeReport probe_block_estimate(BlockVariant v, int k_lo, int k_hi, std::size_t ensemble, std::uint64_t seed)
{
    if (ensemble == 0) throw DomainError("empty ensemble");
    if (k_hi < k_lo) throw DomainError("empty k range");
    bool tri = v == BlockVariant::L3a || v == BlockVariant::L3b1 || v == BlockVariant::L3b2;
    if ((v == BlockVariant::L3b1 || v == BlockVariant::L3b2) && k_lo < 11)
        throw DomainError(to_string(v) + " needs k_max >= 11 for k_thd <= k_max - 10 away from I_0");
    if (tri && k_lo < 1) throw DomainError("trilinear probe needs k_lo >= 1");
    int nk = k_hi - k_lo + 1;
    if (double(ensemble) * nk * (tri ? 20.0 : 1.0) > 2e5) throw ConfigurationError("probe cost guard");

    ProbeReport rep;
    rep.variant = to_string(v);
    rep.seed = seed;
    rep.ensemble = ensemble;
    rep.samples.resize(ensemble * nk);
    parallel_for(ensemble, [&](std::size_t m) {
        auto rng = member_stream(seed, std::uint64_t(v), m);
        RelConfig rc = draw_block_config(v, k_lo, rng);
        int top = top_label(rc);
        for (int K = k_lo; K <= k_hi; ++K) {
            auto f = realize(rc, K - top);
            std::vector<int> ks, js;
            for (auto& b : f) {
                ks.push_back(b.k);
                js.push_back(b.j);
            }
            double rhs = block_bound_rhs(v, ks, js);
            double J = tri ? J3_semi(f[0], f[1], f[2], f[3], 1e-5) : J2_semi(f[0], f[1], f[2], 1e-7);
            auto& s = rep.samples[m * nk + (K - k_lo)];
            s.cls = rep.variant;
            s.k_max = K;
            s.member = m;
            s.ratio = J / rhs;  // bumps are L2-normalized
        }
    });
    summarize(rep, {rep.variant}, {false});
    return rep;
}

// ------------------------------------------------- theorem probe

namespace {

double jb_pow(double x, double p) { return std::pow(1.0 + x * x, 0.5 * p); }

// int w(x) p(x)^2 over the cut support, integrated in x - c so that large
// centres keep their resolution. kinks: points where w is not smooth.
double weighted_sq(const GaussProfile& p, const std::function<double(double)>& w,
                   std::initializer_list<double> kinks = {0.0})
{
    double r = GaussProfile::kCut * p.w;
    auto f = [&](double u) {
        double e = u / p.w;
        return w(p.c + u) * std::exp(-e * e);
    };
    std::vector<double> bp{-r, 0.0, r};
    for (double q : kinks)
        if (q - p.c > -r && q - p.c < r) bp.push_back(q - p.c);
    std::sort(bp.begin(), bp.end());
    return quad::gk_breaks(f, bp, 1e-10);
}

struct InputNorms {
    double x = 0.0, d = 0.0;
    double value() const { return std::max(x, d); }
};

InputNorms input_norm(const DyadicBump& u, double s, double b, double alpha)
{
    InputNorms n;
    double xs = weighted_sq(u.xi, [&](double x) { return jb_pow(x, 2 * s); });
    double zs = weighted_sq(u.zeta, [&](double z) { return jb_pow(z, 2 * b); });
    n.x = u.amp * std::sqrt(xs * zs);
    // D^alpha: <tau>^alpha on |xi| <= 1, tau = zeta + xi^5
    double lo = std::max(-1.0, u.xi.lo()), hi = std::min(1.0, u.xi.hi());
    if (hi > lo) {
        auto f = [&](double x) {
            double p = u.xi(x);
            if (p == 0.0) return 0.0;
            double x5 = p5(x);
            return p * p * weighted_sq(u.zeta, [&](double z) { return jb_pow(z + x5, 2 * alpha); }, {-x5});
        };
        n.d = u.amp * std::sqrt(quad::gk(f, lo, hi, 4, 1e-9));
    }
    return n;
}

// Dual norm of an (uncut-normalized) test bump: X^{-s,b} or Y^{-s,b}.
double test_norm(const GaussProfile& px, const GaussProfile& pz, double s, double b, NormSide side)
{
    if (side == NormSide::X) {
        double xs = weighted_sq(px, [&](double x) { return jb_pow(x, -2 * s); });
        double zs = weighted_sq(pz, [&](double z) { return jb_pow(z, 2 * b); });
        return std::sqrt(xs * zs);
    }
    auto f = [&](double x) {
        double p = px(x);
        if (p == 0.0) return 0.0;
        double x5 = p5(x);
        auto w = [&](double z) { return jb_pow(z + x5, -2 * s / 5) * jb_pow(z, 2 * b); };
        return p * p * weighted_sq(pz, w, {0.0, -x5});
    };
    return std::sqrt(quad::gk(f, px.lo(), px.hi(), 4, 1e-8));
}

struct ClassSpec {
    std::string name;
    int n_inputs;
};

const std::vector<ClassSpec>& classes_for(NonlinearityKind kind)
{
    static const std::vector<ClassSpec> quad{{"high_low_high", 2}, {"high_high_high", 2}, {"high_high_low", 2}};
    static const std::vector<ClassSpec> cub{{"I_hhh_h", 3}, {"II_hhl_h", 3}, {"III_hhh_l", 3}, {"IV_hll_h", 3},
                                            {"V_hhl_l", 3}};
    return kind == NonlinearityKind::quadratic_nonlocal ? quad : cub;
}

// Frequencies: entries either high (magnitude r * 2^K) or fixed low values.
struct FreqSlot {
    bool high = false;
    double v = 0.0;     // r (high) or value (low)
    int follows = -1;   // >= 0: centre = -(high partner) + v
    double fx = 0.5;
};

struct TheoremConfig {
    std::vector<FreqSlot> fs;
    std::vector<GaussProfile> zeta;  // input modulation profiles (fixed)
    std::vector<int> js;
};

TheoremConfig draw_theorem_config(const std::string& cls, std::mt19937_64& rng)
{
    auto high = [&](int sg) { return FreqSlot{true, sg * unif(rng, 0.8, 1.25), -1, unif(rng, 0.3, 0.9)}; };
    auto low = [&]() { return FreqSlot{false, sign_of(rng) * unif(rng, 0.3, 1.2), -1, unif(rng, 0.3, 0.9)}; };
    auto cancel = [&](int partner) {
        return FreqSlot{false, sign_of(rng) * unif(rng, 0.3, 1.2), partner, unif(rng, 0.3, 0.9)};
    };
    int sg = sign_of(rng);
    TheoremConfig tc;
    if (cls == "high_low_high") tc.fs = {high(sg), low()};
    else if (cls == "high_high_high") tc.fs = {high(sg), high(sg)};
    else if (cls == "high_high_low") tc.fs = {high(sg), cancel(0)};
    else if (cls == "I_hhh_h") tc.fs = {high(sg), high(sg), high(sg)};
    else if (cls == "II_hhl_h") tc.fs = {low(), high(sg), high(sg)};
    else if (cls == "III_hhh_l") {
        // xi_3 = -(xi_1 + xi_2) + d
        auto a = high(sg), b = high(sg);
        FreqSlot c{true, -(a.v + b.v), -2, unif(rng, 0.3, 0.9)};
        c.follows = -2;
        double d = sign_of(rng) * unif(rng, 0.3, 1.2);
        tc.fs = {a, b, c};
        tc.fs[2].v = d;
    } else if (cls == "IV_hll_h") tc.fs = {low(), low(), high(sg)};
    else if (cls == "V_hhl_l") tc.fs = {low(), high(sg), cancel(1)};
    else throw DomainError("unknown interaction class " + cls);
    for (std::size_t i = 0; i < tc.fs.size(); ++i) {
        int j = int(rng() % 4);
        double cz = j == 0 ? unif(rng, -1.2, 1.2) : sign_of(rng) * std::ldexp(unif(rng, 0.75, 1.4), j);
        tc.js.push_back(j);
        tc.zeta.push_back(fit_profile(j, cz, unif(rng, 0.4, 0.9)));
    }
    return tc;
}

std::vector<DyadicBump> realize_theorem(const TheoremConfig& tc, int K)
{
    std::vector<double> c(tc.fs.size());
    for (std::size_t i = 0; i < tc.fs.size(); ++i) {
        const auto& f = tc.fs[i];
        if (f.follows == -2) c[i] = -(c[0] + c[1]) + f.v;
        else if (f.follows >= 0) c[i] = -c[f.follows] + f.v;
        else c[i] = f.high ? std::ldexp(f.v, K) : f.v;
    }
    std::vector<DyadicBump> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        int k = shell_of(c[i]);
        GaussProfile px{c[i], tc.fs[i].fx * pure_margin(k, c[i]) / GaussProfile::kCut};
        DyadicBump b;
        b.k = k;
        b.j = tc.js[i];
        b.xi = px;
        b.zeta = tc.zeta[i];
        b.amp = 1.0 / std::sqrt(px.l2sq() * b.zeta.l2sq());
        out.push_back(b);
    }
    return out;
}

// Lower bound for the left norm over the product of input norms.
double theorem_ratio(NonlinearityKind kind, const std::vector<DyadicBump>& u, const TheoremProbeOptions& opt)
{
    double rhs = 1.0;
    for (auto& b : u) rhs *= input_norm(b, opt.s, opt.b, opt.alpha).value();
    if (rhs == 0.0) return 0.0;
    std::size_t n = u.size();
    std::vector<double> cs;
    double cx = 0.0, wx2 = 0.0, S2 = 0.0, mz = 0.0;
    for (auto& b : u) {
        cs.push_back(b.xi.c);
        cx += b.xi.c;
        wx2 += b.xi.w * b.xi.w;
        S2 += b.zeta.w * b.zeta.w;
        mz += b.zeta.c;
    }
    double R = n == 2 ? resonance_H(cs[0], cs[1]) : resonance_G(cs[0], cs[1], cs[2]);
    double spread2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = 5.0 * (std::pow(cx, 4) - std::pow(cs[i], 4)) * u[i].xi.w;
        spread2 += d * d;
    }
    GaussProfile px{cx, std::sqrt(wx2)};
    double amp = 1.0;
    for (auto& b : u) amp *= b.amp;
    std::function<double(const double*)> mult;
    if (kind == NonlinearityKind::quadratic_nonlocal)
        mult = [](const double* x) { return std::abs(x[2]) * jb(x[2]); };
    else mult = [](const double* x) { return std::abs(x[3]); };

    double best = 0.0;
    double narrow = std::sqrt(S2), broad = std::sqrt(S2 + spread2);
    for (double wz : {narrow, std::sqrt(narrow * broad), broad}) {
        GaussProfile pz{mz - R, wz};
        std::vector<const GaussProfile*> in;
        for (auto& b : u) in.push_back(&b.zeta);
        auto z = collapse(in, pz);
        double pairing = n == 2 ? resonant2(u[0].xi, u[1].xi, px, -1, z.mu, z.V, mult, 1e-5)
                                : resonant3(u[0].xi, u[1].xi, u[2].xi, px, -1, z.mu, z.V, mult, 1e-4);
        pairing *= amp * z.pref;
        double tn = test_norm(px, pz, opt.s, opt.b, opt.side);
        best = std::max(best, pairing / tn);
    }
    return best / rhs;
}

bool in_theorem_window(NonlinearityKind kind, const TheoremProbeOptions& o)
{
    if (!(o.b < 0.5 && o.alpha > 0.5)) return false;
    if (kind == NonlinearityKind::quadratic_nonlocal) {
        if (!(o.s > -1.25)) return false;
    } else if (!(o.s >= -0.25)) return false;
    if (o.side == NormSide::Y && o.s > 0.0) return false;
    return true;
}

}  // namespace

ProbeReport probe_theorem_ratio(NonlinearityKind kind, const TheoremProbeOptions& opt)
{
    if (opt.ensemble == 0) throw DomainError("empty ensemble");
    if (opt.k_hi < opt.k_lo || opt.k_lo < 1) throw DomainError("k range must satisfy 1 <= k_lo <= k_hi");
    if (opt.k_hi > 12) throw ConfigurationError("theorem probe cost guard: k_max <= 12");
    const auto& cls = classes_for(kind);
    int nk = opt.k_hi - opt.k_lo + 1;
    if (double(opt.ensemble) * nk * cls.size() > 4000) throw ConfigurationError("theorem probe cost guard");
    bool diag = opt.exploratory || !in_theorem_window(kind, opt);

    ProbeReport rep;
    rep.variant = to_string(kind) + (opt.side == NormSide::X ? "/X" : "/Y");
    rep.seed = opt.seed;
    rep.ensemble = opt.ensemble;
    std::size_t per = opt.ensemble * nk;
    rep.samples.resize(cls.size() * per);
    parallel_for(cls.size() * opt.ensemble, [&](std::size_t idx) {
        std::size_t c = idx / opt.ensemble, m = idx % opt.ensemble;
        auto rng = member_stream(opt.seed, 100 + c, m);
        TheoremConfig tc = draw_theorem_config(cls[c].name, rng);
        for (int K = opt.k_lo; K <= opt.k_hi; ++K) {
            auto u = realize_theorem(tc, K);
            auto& s = rep.samples[c * per + m * nk + (K - opt.k_lo)];
            s.cls = cls[c].name;
            s.k_max = K;
            s.member = m;
            s.ratio = theorem_ratio(kind, u, opt);
        }
    });
    std::vector<std::string> names;
    for (auto& c : cls) names.push_back(c.name);
    summarize(rep, names, std::vector<bool>(names.size(), diag));
    return rep;
}

// ---------------------------------------------------- Strichartz

namespace {

// int |e^{t d^5} phi|^6 dx at one time, phi^ = p (one-sided bump)
double l6_at(const GaussProfile& p, double t, int N)
{
    double c = p.c, L = 2.0 * 7.0 * p.w, de = L / N;
    std::vector<cplx> g(N);
    for (int n = 0; n < N; ++n) {
        double e = -0.5 * L + n * de;
        double e2 = e * e;
        // (c+e)^5 - c^5 - 5c^4 e: the group drift is dropped
        double ph = e2 * (10.0 * c * c * c + e * (10.0 * c * c + e * (5.0 * c + e)));
        g[n] = p(c + e) * std::exp(I * (t * ph));
    }
    fft_inplace(g.data(), N, +1);
    double dx = 2.0 * pi / (N * de), s = 0.0;
    for (auto& v : g) {
        double a = std::abs(v) * de / (2.0 * pi);
        double a2 = a * a;
        s += a2 * a2 * a2;
    }
    return s * dx;
}

double strichartz_ratio(const GaussProfile& p, int k)
{
    const int N = 16384;
    double c = std::abs(p.c), td = 1.0 / (c * c * c * p.w * p.w);
    std::vector<double> edges{0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 12.0};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        total += quad::gauss<8>([&](double t) { return l6_at(p, t, N); }, edges[i] * td, edges[i + 1] * td);
    double tmax = edges.back() * td;
    total += l6_at(p, tmax, N) * tmax;  // t^-2 tail
    total *= 2.0;                        // t < 0 mirrors t > 0
    double l2 = std::sqrt(p.l2sq() / (2.0 * pi));
    return std::pow(total, 1.0 / 6.0) / (std::exp2(-0.5 * k) * l2);
}

}  // namespace

ProbeReport probe_strichartz(int k_lo, int k_hi, std::size_t ensemble, std::uint64_t seed)
{
    if (ensemble == 0) throw DomainError("empty ensemble");
    if (k_hi < k_lo || k_lo < 3) throw DomainError("Strichartz probe needs 3 <= k_lo <= k_hi");
    if (k_hi > 14) throw ConfigurationError("Strichartz probe cost guard: k <= 14");
    int nk = k_hi - k_lo + 1;
    ProbeReport rep;
    rep.variant = "strichartz";
    rep.seed = seed;
    rep.ensemble = ensemble;
    rep.samples.resize(ensemble * nk);
    parallel_for(ensemble, [&](std::size_t m) {
        auto rng = member_stream(seed, 7, m);
        double r = unif(rng, 0.8, 1.25), w = unif(rng, 0.1, 0.3);
        for (int k = k_lo; k <= k_hi; ++k) {
            GaussProfile p{std::ldexp(r, k), w};
            auto& s = rep.samples[m * nk + (k - k_lo)];
            s.cls = "strichartz";
            s.k_max = k;
            s.member = m;
            s.ratio = strichartz_ratio(p, k);
        }
    });
    summarize(rep, {"strichartz"}, {false});
    return rep;
}

}  // namespace kawahara

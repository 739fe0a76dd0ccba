#include "kawahara/ibvp.hpp"

#include "kawahara/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kawahara {

Extension extend_initial(const Field1D& u0, double s)
{
    if (u0.domain != Domain::physical) throw StructuralError("extend_initial expects physical samples");
    Extension e{u0, 0.0};
    int i0 = 0;
    double at0 = 0.0;
    for (int i = 0; i < u0.grid.n; ++i) {
        if (u0.grid.point(i) < 0.0) e.field.values[i] = 0.0;
        else if (i0 == 0 || std::abs(u0.grid.point(i)) < std::abs(u0.grid.point(i0))) i0 = i, at0 = std::abs(u0.values[i]);
    }
    if (s >= 0.5 && at0 > 1e-8)
        throw DomainError("zero extension with u0(0) != 0 leaves H^s for s >= 1/2");
    e.hs_norm = hs_norm(e.field, s);
    return e;
}

Traces extract_traces(const Field2D& u)
{
    Traces t;
    auto re = [](const std::vector<cplx>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::real(v[i]);
        return r;
    };
    t.u = re(trace_at(u, 0.0, 0));
    t.ux = re(trace_at(u, 0.0, 1));
    t.uxx = re(trace_at(u, 0.0, 2));
    return t;
}

Signal interpolate_signal(std::vector<double> v, double dt)
{
    return [v = std::move(v), dt](double t) {
        const int n = int(v.size());
        if (t < 0.0 || n < 4 || t > (n - 1) * dt) return 0.0;
        double u = t / dt;
        int i = std::clamp(int(std::floor(u)) - 1, 0, n - 4);
        double s = 0.0;
        for (int j = i; j < i + 4; ++j) {
            double l = 1.0;
            for (int k = i; k < i + 4; ++k)
                if (k != j) l *= (u - k) / double(j - k);
            s += v[j] * l;
        }
        return s;
    };
}

namespace {

HalfLineSignal real_signal(const std::vector<cplx>& v, double dt)
{
    HalfLineSignal s = HalfLineSignal::zeros(int(v.size()), dt);
    for (std::size_t i = 0; i < v.size(); ++i) s.values[i] = std::real(v[i]);
    return s;
}

void axpy(Field2D& y, double a, const Field2D& x)
{
    for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

Field2D minus(const Field2D& a, const Field2D& b)
{
    Field2D d = a;
    axpy(d, -1.0, b);
    return d;
}

double max_abs(const Field2D& u)
{
    double m = 0.0;
    for (const auto& v : u.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double pde_residual(const Field2D& u, NonlinearityKind kind, bool linear, double T, double x_lo, double x_hi)
{
    const auto& g = u.grid;
    const double dt = g.time.dx();
    const int nt = g.nt(), nx = g.nx();
    const int kT = std::min(nt - 1, int(std::floor(T / dt + 1e-9)));
    if (kT < 6) throw DomainError("pde_residual: too few time samples in (0,T)");

    Field2D uh = u, Nh = linear ? Field2D::zeros(g) : apply_F(u, kind);
    forward_x_rows(uh);
    if (!linear) forward_x_rows(Nh);
    std::vector<char> keep(nx);
    for (int m = 0; m < nx; ++m) {
        double w5 = std::pow(std::abs(g.space.wavenumber(m)), 5);
        keep[m] = m != g.space.nyquist() && w5 * dt <= 0.5;
    }
    // r^ = e^{i t w}(d/dt)(e^{-i t w} u^) + N^, 4th-order central differences
    Field2D r = Field2D::zeros(g);
    for (int it = 2; it <= kT - 2; ++it) {
        double t = g.time.point(it);
        for (int m = 0; m < nx; ++m) {
            if (!keep[m]) continue;
            double w = std::pow(g.space.wavenumber(m), 5);
            auto v = [&](int j) { return std::polar(1.0, -w * (g.time.point(j) - t)) * uh.at(j, m); };
            cplx dv = (-v(it + 2) + 8.0 * v(it + 1) - 8.0 * v(it - 1) + v(it - 2)) / (12.0 * dt);
            r.at(it, m) = dv + Nh.at(it, m);
        }
    }
    inverse_x_rows(r);
    // normalized by the low-passed d_x^5 u
    double num = 0.0, den = 0.0;
    Field2D d5 = uh;
    for (int it = 0; it < nt; ++it)
        for (int m = 0; m < nx; ++m) {
            double xi = g.space.wavenumber(m);
            d5.at(it, m) = keep[m] ? I * std::pow(xi, 5) * uh.at(it, m) : cplx(0.0);
        }
    inverse_x_rows(d5);
    for (int it = 2; it <= kT - 2; ++it)
        for (int i = 0; i < nx; ++i) {
            double x = g.space.point(i);
            if (x < x_lo || x > x_hi) continue;
            num += std::norm(r.at(it, i));
            den += std::norm(d5.at(it, i));
        }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::pair<Field2D, SolveReport> picard_solve(const IBVPData& data, const SolverOptions& opt)
{
    const auto& idx = opt.idx;
    if (!idx.in_solver_window()) throw ConfigurationError("(b, alpha) outside 0 < b < 1/2 < alpha < 1-b");
    if (!(idx.s < 0.5)) throw ConfigurationError("s must be below 1/2");
    if (!(opt.T0 > 0.0 && opt.T0 < 1.0)) throw ConfigurationError("T0 must lie in (0,1)");
    auto dl = default_lambda_pair(idx.s);
    double l1 = opt.lambda1.value_or(dl.first), l2 = opt.lambda2.value_or(dl.second);
    ForcingConfig cfg = build_matrix(l1, l2, idx.s);

    const Grid1D gx = data.u0.grid;
    Extension ext = extend_initial(data.u0, idx.s);

    SolveReport rep;
    rep.lambda1 = l1;
    rep.lambda2 = l2;
    double T = opt.T0;
    while (true) {
        if (T < opt.T_min) {
            std::ostringstream os;
            os << "Picard iteration did not contract for any T >= " << opt.T_min
               << " (last contraction " << rep.contraction << ")";
            throw NonConvergence(os.str());
        }
        SpaceTimeGrid g{Grid1D::make(opt.nt, opt.time_factor * T), gx};
        const double dt = g.time.dx();
        HalfLineSignal fs = HalfLineSignal::zeros(opt.nt, dt), gs = fs;
        for (int i = 0; i < opt.nt; ++i) {
            fs.values[i] = data.f(i * dt);
            gs.values[i] = data.g(i * dt);
        }
        Field2D free = propagate_field(ext.field, g);
        // the Nyquist phase is the only source of an imaginary part
        for (auto& v : free.values) v = std::real(v);
        Field2D u = apply_cutoff(free, T);

        rep.deltas.clear();
        rep.contraction = 0.0;
        bool restart = false, done = false;
        double znorm_u = 0.0;
        for (int m = 0; m < opt.max_iter; ++m) {
            Field2D F = free;
            if (!opt.linear) axpy(F, -1.0, duhamel(apply_F(u, data.kind)));
            HalfLineSignal Ft = real_signal(trace_at(F, 0.0, 0), dt);
            HalfLineSignal Fxt = real_signal(trace_at(F, 0.0, 1), dt);
            GammaSolution gam = solve_gamma(fs, gs, Ft, Fxt, cfg);
            rep.compat_error = gam.compat_error;
            Field2D next = F;
            axpy(next, 1.0, L_lambda(gam.gamma1, l1, Side::plus, g, opt.forcing));
            axpy(next, 1.0, L_lambda(gam.gamma2, l2, Side::plus, g, opt.forcing));
            next = apply_cutoff(next, T);
            for (auto& v : next.values) v = std::real(v);

            double delta = z_norm(minus(next, u), idx.s, idx.b, idx.alpha).total;
            znorm_u = z_norm(next, idx.s, idx.b, idx.alpha).total;
            rep.deltas.push_back(delta);
            u = std::move(next);
            rep.iterations = m + 1;
            std::size_t k = rep.deltas.size();
            // ratios are meaningless once the deltas reach rounding level
            if (k >= 2 && rep.deltas[k - 2] > 1e3 * 1e-16 * (1.0 + znorm_u)) {
                double ratio = delta / rep.deltas[k - 2];
                rep.contraction = std::max(rep.contraction, ratio);
                if (ratio > 0.5) {
                    restart = true;
                    break;
                }
            }
            if (delta <= opt.tol * std::max(znorm_u, 1e-300) || delta == 0.0) {
                done = true;
                break;
            }
        }
        if (restart) {
            T *= 0.5;
            ++rep.restarts;
            continue;
        }
        if (!done) {
            std::ostringstream os;
            os << "Picard iteration reached " << opt.max_iter << " iterates without meeting tol " << opt.tol;
            throw NonConvergence(os.str());
        }
        rep.T = T;
        rep.fixed_point_residual = znorm_u > 0.0 ? rep.deltas.back() / znorm_u : 0.0;

        Traces tr = extract_traces(u);
        int kT = int(std::floor(T / dt + 1e-9));
        for (int i = 0; i <= kT; ++i) {
            rep.trace_error_f = std::max(rep.trace_error_f, std::abs(tr.u[i] - fs.values[i]));
            rep.trace_error_g = std::max(rep.trace_error_g, std::abs(tr.ux[i] - gs.values[i]));
        }
        for (int i = 0; i < gx.n; ++i)
            if (gx.point(i) >= 0.0)
                rep.initial_error = std::max(rep.initial_error, std::abs(u.at(0, i) - data.u0.values[i]));
        double x_hi = gx.origin + gx.L - 0.1 * gx.L;
        rep.pde_residual = max_abs(u) > 0.0 ? pde_residual(u, data.kind, opt.linear, T, 2.0, x_hi) : 0.0;
        return {std::move(u), rep};
    }
}

Field2D ivp_solve(const Field1D& u0, NonlinearityKind kind, const SpaceTimeGrid& g, int substeps)
{
    if (!(u0.grid == g.space)) throw StructuralError("ivp_solve: initial data not on the space grid");
    if (substeps < 1) throw DomainError("ivp_solve needs at least one substep");
    const int nx = g.nx();
    const double h = g.time.dx() / substeps;
    std::vector<double> w(nx);
    for (int m = 0; m < nx; ++m) w[m] = std::pow(g.space.wavenumber(m), 5);

    // state: x-spectrum of u; Nyquist kept at zero
    Field1D uh = forward_transform(u0);
    uh.values[g.space.nyquist()] = 0.0;
    auto rhs = [&](const Field1D& spec) {
        Field1D phys = inverse_transform(spec);
        for (auto& v : phys.values) v = std::real(v);
        Field1D n = forward_transform(apply_F(phys, kind));
        for (auto& v : n.values) v = -v;
        n.values[g.space.nyquist()] = 0.0;
        return n;
    };
    std::vector<cplx> e_half(nx), e_full(nx);
    for (int m = 0; m < nx; ++m) {
        e_half[m] = std::polar(1.0, 0.5 * h * w[m]);
        e_full[m] = e_half[m] * e_half[m];
    }
    Field2D out = Field2D::zeros(g);
    auto store = [&](int it) {
        Field1D p = inverse_transform(uh);
        for (auto& v : p.values) v = std::real(v);
        out.set_slice(it, p);
    };
    store(0);
    for (int it = 1; it < g.nt(); ++it) {
        for (int s = 0; s < substeps; ++s) {
            Field1D k1 = rhs(uh), a = uh;
            for (int m = 0; m < nx; ++m) a.values[m] = e_half[m] * (uh.values[m] + 0.5 * h * k1.values[m]);
            Field1D k2 = rhs(a);
            for (int m = 0; m < nx; ++m) a.values[m] = e_half[m] * uh.values[m] + 0.5 * h * k2.values[m];
            Field1D k3 = rhs(a);
            for (int m = 0; m < nx; ++m) a.values[m] = e_full[m] * uh.values[m] + h * e_half[m] * k3.values[m];
            Field1D k4 = rhs(a);
            for (int m = 0; m < nx; ++m)
                uh.values[m] = e_full[m] * uh.values[m] +
                               h / 6.0 * (e_full[m] * k1.values[m] + 2.0 * e_half[m] * (k2.values[m] + k3.values[m]) + k4.values[m]);
        }
        store(it);
    }
    return out;
}

}  // namespace kawahara

#include "kawahara/verify.hpp"

#include "kawahara/errors.hpp"
#include "kawahara/forcing.hpp"
#include "kawahara/ibvp.hpp"
#include "kawahara/kernel.hpp"
#include "kawahara/nonlinearity.hpp"
#include "kawahara/probe.hpp"
#include "kawahara/propagator.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace kawahara {

using json = nlohmann::ordered_json;

bool VerifyReport::pass() const
{
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

const std::vector<std::pair<std::string, std::vector<int>>>& verify_groups()
{
    static const std::vector<std::pair<std::string, std::vector<int>>> g{
        {"kernel", {1, 2, 3, 4}}, {"propagator", {5}}, {"fractional", {6}},  {"forcing", {7}},
        {"resonance", {8}},       {"functionals", {9}}, {"blocks", {10}},    {"theorem", {11}},
        {"energy", {12}},         {"ibvp", {13}},       {"scaling", {14}},   {"determinism", {15}},
    };
    return g;
}

std::vector<int> select_criteria(const std::vector<std::string>& only)
{
    std::set<int> ids;
    if (only.empty())
        for (int i = 1; i <= 15; ++i) ids.insert(i);
    for (const auto& name : only) {
        bool found = false;
        for (const auto& [g, v] : verify_groups())
            if (g == name || (name == "probe" && (g == "functionals" || g == "blocks" || g == "theorem"))) {
                ids.insert(v.begin(), v.end());
                found = true;
            }
        if (!found) {
            std::size_t pos = 0;
            int id = 0;
            try {
                id = std::stoi(name, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != name.size() || id < 1 || id > 15) throw ConfigurationError("unknown criterion: " + name);
            ids.insert(id);
        }
    }
    return {ids.begin(), ids.end()};
}

namespace {

std::string group_of(int id)
{
    for (const auto& [g, v] : verify_groups())
        if (std::find(v.begin(), v.end(), id) != v.end()) return g;
    return "";
}

struct Builder {
    CriterionResult r;
    void le(const std::string& name, double v, double lim) { r.checks.push_back({name, v, lim, false, v <= lim}); }
    void ge(const std::string& name, double v, double lim) { r.checks.push_back({name, v, lim, true, v >= lim}); }
    void diag(const std::string& name, double v) { r.diagnostics.push_back({name, v, 0.0, false, true}); }
};

double bump(double t, double a, double b)
{
    if (t <= a || t >= b) return 0.0;
    double u = (t - a) / (b - a);
    return std::exp(-1.0 / (u * (1.0 - u)) + 4.0);
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

double l2(const Field1D& f)
{
    double s = 0.0;
    for (auto& v : f.values) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// ------------------------------------------------------------ kernel

KernelTable origin_table(bool corrupt)
{
    auto t = KernelTable::build(0, -5.0, 40.0, 0.05);
    if (corrupt)
        for (auto& v : t.mutable_values()) v *= 1.01;
    return t;
}

void c1(Builder& b, const VerifyOptions& o)
{
    double worst = 0.0;
    for (int n = 0; n <= 3; ++n) {
        double e = std::abs(eval_B(n, 0.0).value - closed_form_at_zero(n));
        b.diag("n" + std::to_string(n) + "_abs_error", e);
        worst = std::max(worst, e);
    }
    b.le("eval_vs_closed_form", worst, 1e-8);
    auto t = origin_table(o.corrupt_kernel_table);
    b.le("table_at_zero_vs_closed_form", std::abs(t(0.0) - closed_form_at_zero(0)), 1e-8);
}

void c2(Builder& b, const VerifyOptions& o)
{
    auto t = KernelTable::build(0, 0.0, 40.0, 0.05);
    if (o.corrupt_kernel_table)
        for (auto& v : t.mutable_values()) v *= 1.01;
    auto r = integral_B_halfline(t);
    b.diag("integral", r.value);
    b.diag("error_estimate", r.error_estimate);
    b.le("abs_error_vs_2/5", std::abs(r.value - 0.4), 1e-6);
}

void c3(Builder& b, const VerifyOptions&)
{
    double plus = 0.0, minus = 0.0;
    for (double l : {0.5, 1.0, 1.5}) {
        auto m = mellin_B(l, Side::plus);
        b.diag("plus_" + std::to_string(l).substr(0, 4), m.difference);
        plus = std::max(plus, std::abs(m.difference));
    }
    for (double l : {0.15, 0.3}) {
        auto m = mellin_B(l, Side::minus);
        b.diag("minus_" + std::to_string(l).substr(0, 4), m.difference);
        minus = std::max(minus, std::abs(m.difference));
    }
    b.le("plus_side_max_diff", plus, 1e-6);
    b.le("minus_side_max_diff", minus, 1e-4);
}

void c4(Builder& b, const VerifyOptions& o)
{
    std::vector<double> xr, xl;
    for (int i = 0; i <= 45; ++i) xr.push_back(5.0 + i);
    for (int i = 0; i <= 60; ++i) xl.push_back(10.0 * std::pow(50.0, i / 60.0));
    auto r = decay_envelope_check(0, Direction::right, xr);
    auto l = decay_envelope_check(0, Direction::left, xl);
    b.le("right_envelope_log_slope", r.log_slope, 0.05);
    b.diag("right_envelope_max", r.constant);
    b.le("left_envelope_log_slope", l.log_slope, 0.05);
    b.diag("left_envelope_max", l.constant);
    // the table used by the solver must agree with direct evaluation
    auto t = origin_table(o.corrupt_kernel_table);
    double e = 0.0;
    for (double x = -5.0; x <= 10.0; x += 0.37) e = std::max(e, std::abs(t(x) - eval_B(0, x).value));
    b.le("table_vs_direct", e, 1e-6);
}

// -------------------------------------------------------- propagator

void c5(Builder& b, const VerifyOptions& o)
{
    auto g = Grid1D::make(512, 64.0, -32.0);
    auto phi = Field1D::sample(g, [](double x) { return std::exp(-x * x / 2.0) * std::polar(1.0, 0.7 * x); });
    double n0 = l2(phi), unit = 0.0, group = 0.0;
    for (double t : {0.01, 0.1, 1.0}) {
        unit = std::max(unit, std::abs(l2(propagate(phi, t)) - n0) / n0);
        auto a = propagate(propagate(phi, t), 0.5 * t), c = propagate(phi, 1.5 * t);
        double d = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i) d += std::norm(a.values[i] - c.values[i]);
        group = std::max(group, std::sqrt(d) / n0);
    }
    b.le("unitarity_rel", unit, 1e-12);
    b.le("group_law_rel", group, 1e-12);
    auto s = probe_strichartz(3, 8, 8, o.seed);
    b.le("strichartz_slope", s.slope, 0.05);
    b.diag("strichartz_max_ratio", s.max_ratio);
}

// -------------------------------------------------------- fractional

void c6(Builder& b, const VerifyOptions&)
{
    int n = 1024;
    double dt = 2.0 / n;
    auto f = HalfLineSignal::sample(n, dt, [](double t) { return bump(t, 0.2, 1.2); });
    auto half = riemann_liouville(riemann_liouville(f, 0.5), 0.5);
    auto one = riemann_liouville(f, 1.0);
    b.le("semigroup_half_half", rel_l2(half.values, one.values), 1e-4);
    auto back = riemann_liouville_neg(riemann_liouville(f, 0.8), -0.8);
    b.le("inverse_order_0.8", rel_l2(back.values, f.values), 1e-4);
}

// ----------------------------------------------------------- forcing

void c7(Builder& b, const VerifyOptions&)
{
    int nx = 1024, nt = 256;
    double L = 256.0;
    SpaceTimeGrid g{Grid1D::make(nt, 0.6), Grid1D::make(nx, L, -0.75 * L)};
    auto f = HalfLineSignal::sample(nt, g.time.dx(), [](double t) { return bump(t, 0.05, 0.45); });
    double mf = max_abs(f.values);
    auto u = L0(f, g);
    auto tr = trace_at(u, 0.0, 0);
    double e = 0.0;
    for (int i = 0; i < nt; ++i) e = std::max(e, std::abs(tr[i] - f.values[i]));
    b.le("L0_trace_rel", e / mf, 1e-3);

    double worst = 0.0;
    for (double lam : {-0.5, -1.0, 0.25})
        for (Side s : {Side::plus, Side::minus}) {
            auto v = L_lambda(f, lam, s, g);
            auto tv = trace_at(v, 0.0, 0);
            double c = trace_constant(lam, s), er = 0.0;
            for (int i = 0; i < nt; ++i) er = std::max(er, std::abs(tv[i] - c * f.values[i]));
            worst = std::max(worst, er / mf);
        }
    b.le("trace_constant_rel", worst, 1e-3);

    double ident = 0.0;
    for (int k = 1; k <= 2; ++k) {
        LambdaOptions opt;
        opt.force_convolution = true;
        auto a = L_lambda(f, -k, Side::plus, g, opt);
        auto c = L0(riemann_liouville(f, k / 5.0), g);
        double er = 0.0, mx = 0.0;
        for (int it = 0; it < nt; ++it) {
            auto d = spectral_derivative(c.slice(it), k);
            for (int i = 0; i < nx; ++i) {
                if (g.space.point(i) < 0.0) continue;
                cplx ref = (k % 2 ? -1.0 : 1.0) * d.values[i];
                er = std::max(er, std::abs(a.at(it, i) - ref));
                mx = std::max(mx, std::abs(ref));
            }
        }
        ident = std::max(ident, er / mx);
    }
    b.le("integer_order_identity_rel", ident, 1e-3);
}

// --------------------------------------------------------- resonance

void c8(Builder& b, const VerifyOptions& o)
{
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> U(-100.0, 100.0);
    double eh = 0.0, eg = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double a = U(rng), c = U(rng), d = U(rng);
        // relative to the size of the terms that cancel
        double sh = std::pow(std::abs(a + c), 5) + std::pow(std::abs(a), 5) + std::pow(std::abs(c), 5);
        eh = std::max(eh, std::abs(resonance_H(a, c) - resonance_H_expanded(a, c)) / sh);
        double sg = std::pow(std::abs(a + c + d), 5) + std::pow(std::abs(a), 5) + std::pow(std::abs(c), 5) +
                    std::pow(std::abs(d), 5);
        eg = std::max(eg, std::abs(resonance_G(a, c, d) - resonance_G_expanded(a, c, d)) / sg);
    }
    b.le("H_rel", eh, 1e-10);
    b.le("G_rel", eg, 1e-10);
}

// ------------------------------------------------------- functionals

DyadicBump plain_bump(double zc, double zw, double xc, double xw)
{
    DyadicBump f;
    f.zeta = {zc, zw};
    f.xi = {xc, xw};
    f.k = shell_of(xc == 0.0 ? 1.0 : xc);
    f.j = modulation_block_of(zc);
    f.amp = 1.0 / std::sqrt(f.zeta.l2sq() * f.xi.l2sq());
    return f;
}

void c9(Builder& b, const VerifyOptions& o)
{
    const int n = 20;
    std::vector<double> e2(n), p2(n), e3(n), p3(n);
    std::vector<std::vector<DyadicBump>> in2(n), in3(n);
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    // small low-frequency instances whose grids resolve every factor
    for (int t = 0; t < n; ++t) {
        double xw = 0.08 + 0.04 * U(rng);
        auto f = plain_bump(2 * U(rng) - 1, 0.8 + 0.4 * U(rng), 1.2 * U(rng) - 0.6, xw);
        auto g = plain_bump(2 * U(rng) - 1, 0.8 + 0.4 * U(rng), 1.2 * U(rng) - 0.6, xw);
        auto h = plain_bump(f.zeta.c + g.zeta.c + resonance_H(f.xi.c, g.xi.c) + 0.5 * (U(rng) - 0.5),
                            0.8 + 0.4 * U(rng), f.xi.c + g.xi.c, xw * std::sqrt(2.0));
        in2[t] = {f, g, h};
        double w3 = 0.06 * (1 + 0.2 * U(rng)), z3 = 0.8 + 0.4 * U(rng);
        std::vector<DyadicBump> q;
        for (int i = 0; i < 3; ++i) q.push_back(plain_bump(2 * U(rng) - 1, z3, 0.8 * U(rng) - 0.4, w3));
        q.push_back(plain_bump(q[0].zeta.c + q[1].zeta.c + q[2].zeta.c +
                                   resonance_G(q[0].xi.c, q[1].xi.c, q[2].xi.c) + 0.5 * (U(rng) - 0.5),
                               z3, q[0].xi.c + q[1].xi.c + q[2].xi.c, w3));
        in3[t] = q;
    }
    parallel_for(n, [&](std::size_t t) {
        const auto& a = in2[t];
        double d = J2_direct(a[0], a[1], a[2], 64, 64);
        e2[t] = std::abs(d - J2_plancherel(a[0], a[1], a[2])) / std::abs(d);
        p2[t] = J2_permutation_spread(a[0], a[1], a[2]);
        const auto& q = in3[t];
        double d3 = J3_direct(q[0], q[1], q[2], q[3]);
        e3[t] = std::abs(d3 - J3_plancherel(q[0], q[1], q[2], q[3])) / std::abs(d3);
        p3[t] = J3_permutation_spread(q[0], q[1], q[2], q[3]);
    });
    auto mx = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
    b.le("J2_direct_vs_plancherel", mx(e2), 1e-8);
    b.le("J3_direct_vs_plancherel", mx(e3), 1e-8);
    b.le("J2_permutation_spread", mx(p2), 1e-8);
    b.le("J3_permutation_spread", mx(p3), 1e-8);

    double vanish = 0.0;
    bool flagged = true;
    for (auto blocks : std::vector<std::vector<Block>>{{{10, 2}, {3, 2}, {3, 3}},
                                                       {{6, 1}, {6, 1}, {7, 1}},
                                                       {{12, 1}, {3, 1}, {3, 2}, {3, 1}}}) {
        auto r = support_property_check(blocks, o.seed, 6);
        flagged = flagged && !r.compliant;
        vanish = std::max(vanish, r.max_normalized);
    }
    b.le("support_violation_max_normalized", vanish, 1e-10);
    b.ge("violations_detected", flagged ? 1.0 : 0.0, 1.0);
    auto ok = support_property_check({{4, 1}, {0, 1}, {4, 19}}, o.seed, 4);
    b.diag("compliant_example_flag", ok.compliant ? 1.0 : 0.0);
    b.diag("compliant_example_max_normalized", ok.max_normalized);
}

void c10(Builder& b, const VerifyOptions& o)
{
    for (auto v : {BlockVariant::L2a, BlockVariant::L2c, BlockVariant::L3a}) {
        auto r = probe_block_estimate(v, 2, 8, 100, o.seed);
        b.le(to_string(v) + "_slope", r.slope, 0.05);
        b.diag(to_string(v) + "_max_ratio", r.max_ratio);
    }
}

void c11(Builder& b, const VerifyOptions& o)
{
    struct Run {
        NonlinearityKind kind;
        NormSide side;
        double s;
        std::size_t ens;
    };
    for (auto run : {Run{NonlinearityKind::quadratic_nonlocal, NormSide::X, 0.0, 6},
                     Run{NonlinearityKind::cubic, NormSide::X, 0.0, 3},
                     Run{NonlinearityKind::quadratic_nonlocal, NormSide::Y, -0.2, 6},
                     Run{NonlinearityKind::cubic, NormSide::Y, -0.2, 3}}) {
        TheoremProbeOptions t;
        t.s = run.s;
        t.b = 0.45;
        t.alpha = 0.55;
        t.k_lo = 2;
        t.k_hi = 10;
        t.ensemble = run.ens;
        t.seed = o.seed;
        t.side = run.side;
        auto r = probe_theorem_ratio(run.kind, t);
        for (auto& c : r.classes) {
            std::string key = r.variant + "/" + c.name + "_slope";
            if (c.diagnostic) b.diag(key, c.slope);
            else b.le(key, c.slope, 0.1);
        }
    }
    // below the threshold: reported only
    TheoremProbeOptions t;
    t.s = -1.5;
    t.ensemble = 4;
    t.seed = o.seed;
    t.exploratory = true;
    auto r = probe_theorem_ratio(NonlinearityKind::quadratic_nonlocal, t);
    for (auto& c : r.classes) b.diag("exploratory_s=-1.5/" + c.name + "_slope", c.slope);
}

// ------------------------------------------------------------ energy

void c12(Builder& b, const VerifyOptions&)
{
    auto gx = Grid1D::make(512, 128.0, -64.0);
    auto phi = Field1D::sample(gx, [](double x) { return std::exp(-x * x / 8.0); });
    double T = 0.05;
    int nt = 256;
    SpaceTimeGrid g{Grid1D::make(nt, T * nt / (nt / 2)), gx};
    auto u = propagate_field(phi, g);
    auto r = energy_identity_report(u, T);
    auto l = energy_identity_report(u, T, HalfLine::left);
    b.le("right_gap_rel", std::abs(r.gap) / (r.lhs + r.rhs), 1e-4);
    b.le("left_gap_rel", std::abs(l.gap) / (l.lhs + l.rhs), 1e-4);
    b.diag("boundary_flux", r.flux);
    b.diag("wrap_warning", r.wrap_warning ? 1.0 : 0.0);
}

// -------------------------------------------------------------- IBVP

Field1D compact_bump(const Grid1D& gx, double A, double a, double c)
{
    return Field1D::sample(gx, [=](double x) { return A * bump(x, a, c); });
}

void c13(Builder& b, const VerifyOptions&)
{
    const int nx = 1024, nt = 256;
    const double L = 256.0, T0 = 0.25;
    auto gx = Grid1D::make(nx, L, -0.75 * L);
    auto u0 = compact_bump(gx, 1.0, 1.0, 9.0);
    SpaceTimeGrid gr{Grid1D::make(nt, 2.5 * T0), gx};
    auto v = ivp_solve(u0, NonlinearityKind::cubic, gr, 4);
    auto tr = extract_traces(v);
    double dt = gr.time.dx();
    IBVPData d{u0, interpolate_signal(tr.u, dt), interpolate_signal(tr.ux, dt), NonlinearityKind::cubic};
    SolverOptions opt;
    opt.T0 = T0;
    opt.nt = nt;
    opt.idx = {0.0, 0.4, 0.55};
    auto [u, rep] = picard_solve(d, opt);
    b.le("contraction", rep.contraction, 0.5);
    b.diag("iterations", rep.iterations);
    b.diag("restarts", rep.restarts);
    b.diag("T", rep.T);
    b.diag("pde_residual", rep.pde_residual);
    if (!(u.grid == gr)) throw StructuralError("solver changed its grid; the comparison needs T = T0");
    int kT = int(std::lround(rep.T / dt));
    double num = 0.0, den = 0.0;
    for (int it = 0; it <= kT; ++it)
        for (int i = 0; i < nx; ++i) {
            if (gx.point(i) < 0.0) continue;
            num += std::norm(u.at(it, i) - v.at(it, i));
            den += std::norm(v.at(it, i));
        }
    b.le("restriction_rel_l2", std::sqrt(num / den), 1e-3);
    auto ut = extract_traces(u);
    double ef = 0.0, eg = 0.0;
    for (int it = 0; it <= kT; ++it) {
        ef = std::max(ef, std::abs(ut.u[it] - tr.u[it]));
        eg = std::max(eg, std::abs(ut.ux[it] - tr.ux[it]));
    }
    b.le("trace_u_rel", ef / max_abs(tr.u), 1e-3);
    b.le("trace_ux_rel", eg / max_abs(tr.ux), 1e-3);
}

// ----------------------------------------------------------- scaling

double scaling_defect(NonlinearityKind kind)
{
    const double lam = 2.0, A = 2.0;
    auto gx = Grid1D::make(512, 128.0, -64.0);
    auto u0 = compact_bump(gx, A, -4.0, 4.0);
    SpaceTimeGrid g{Grid1D::make(128, 0.25), gx};
    auto v = ivp_solve(u0, kind, g, 4);
    auto vs = scaling_map(v, lam);
    auto w = ivp_solve(scaling_map(u0, lam), kind, vs.grid, 4);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        num += std::norm(w.values[i] - vs.values[i]);
        den += std::norm(vs.values[i]);
    }
    return std::sqrt(num / den);
}

void c14(Builder& b, const VerifyOptions&)
{
    b.le("cubic_defect", scaling_defect(NonlinearityKind::cubic), 1e-3);
    b.ge("quadratic_nonlocal_defect", scaling_defect(NonlinearityKind::quadratic_nonlocal), 1e-2);
}

// ------------------------------------------------------- determinism

std::string seeded_fingerprint(std::uint64_t seed)
{
    json j;
    auto blk = probe_block_estimate(BlockVariant::L2b, 2, 6, 12, seed);
    for (auto& s : blk.samples) j["blocks"].push_back(s.ratio);
    TheoremProbeOptions t;
    t.k_hi = 5;
    t.ensemble = 2;
    t.seed = seed;
    auto th = probe_theorem_ratio(NonlinearityKind::quadratic_nonlocal, t);
    for (auto& s : th.samples) j["theorem"].push_back(s.ratio);
    auto st = probe_strichartz(3, 5, 2, seed);
    for (auto& s : st.samples) j["strichartz"].push_back(s.ratio);
    auto sp = support_property_check({{4, 1}, {0, 1}, {4, 19}}, seed, 3);
    j["support"] = sp.max_normalized;
    return j.dump();
}

void c15(Builder& b, const VerifyOptions& o)
{
    auto a = seeded_fingerprint(o.seed), c = seeded_fingerprint(o.seed);
    b.ge("repeat_identical", a == c ? 1.0 : 0.0, 1.0);
    auto d = seeded_fingerprint(o.seed + 1);
    b.diag("other_seed_differs", d != a ? 1.0 : 0.0);
}

struct Entry {
    int id;
    const char* title;
    void (*fn)(Builder&, const VerifyOptions&);
};

const Entry kEntries[] = {
    {1, "kernel closed forms at the origin", c1},
    {2, "half-line integral of B", c2},
    {3, "Mellin transforms of B", c3},
    {4, "kernel decay envelopes", c4},
    {5, "group unitarity, group law, Strichartz probe", c5},
    {6, "fractional integral laws", c6},
    {7, "boundary forcing traces and integer identity", c7},
    {8, "resonance factorizations", c8},
    {9, "J2/J3 oracles, symmetries, support vanishing", c9},
    {10, "block estimate scale uniformity", c10},
    {11, "theorem ratio probes", c11},
    {12, "linear half-line energy identity", c12},
    {13, "half-line solve vs whole-line reference", c13},
    {14, "scaling symmetry", c14},
    {15, "determinism under a fixed seed", c15},
};

}  // namespace

VerifyReport run_verify(const VerifyOptions& opt, const std::function<void(const CriterionResult&)>& on_done)
{
    VerifyReport rep;
    rep.seed = opt.seed;
    for (int id : select_criteria(opt.only)) {
        const Entry& e = kEntries[id - 1];
        Builder b;
        b.r.id = id;
        b.r.group = group_of(id);
        b.r.title = e.title;
        try {
            e.fn(b, opt);
            b.r.pass = !b.r.checks.empty() &&
                       std::all_of(b.r.checks.begin(), b.r.checks.end(), [](const Check& c) { return c.pass; });
        } catch (const std::exception& ex) {
            b.r.pass = false;
            b.r.error = ex.what();
        }
        for (auto& c : b.r.checks)
            if (!std::isfinite(c.value)) c.pass = b.r.pass = false;
        if (on_done) on_done(b.r);
        rep.criteria.push_back(std::move(b.r));
    }
    return rep;
}

namespace {

json number(double v)
{
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

std::string report_json(const VerifyReport& rep)
{
    json j;
    j["schema_version"] = 1;
    j["seed"] = rep.seed;
    j["pass"] = rep.pass();
    j["criteria"] = json::array();
    for (const auto& c : rep.criteria) {
        json e;
        e["id"] = c.id;
        e["group"] = c.group;
        e["title"] = c.title;
        e["pass"] = c.pass;
        e["checks"] = json::array();
        for (const auto& k : c.checks)
            e["checks"].push_back(
                {{"name", k.name}, {"value", number(k.value)}, {"limit", k.limit},
                 {"relation", k.at_least ? ">=" : "<="}, {"pass", k.pass}});
        e["diagnostics"] = json::object();
        for (const auto& d : c.diagnostics) e["diagnostics"][d.name] = number(d.value);
        if (!c.error.empty()) e["error"] = c.error;
        j["criteria"].push_back(e);
    }
    return j.dump(2) + "\n";
}

}  // namespace kawahara

#include "kawahara/errors.hpp"
#include "kawahara/forcing.hpp"
#include "kawahara/ibvp.hpp"
#include "kawahara/kernel.hpp"
#include "kawahara/nonlinearity.hpp"
#include "kawahara/norms.hpp"
#include "kawahara/probe.hpp"
#include "kawahara/propagator.hpp"
#include "kawahara/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace kawahara;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0, kExitUsage = 1, kExitNumeric = 2;

struct Common {
    std::uint64_t seed = 1;
    std::string out;
    std::string config;
};

// Output sink: a file inside --out when given, stdout otherwise.
class Sink {
public:
    Sink(const std::string& dir, const std::string& name, bool to_stdout)
    {
        if (!dir.empty()) {
            fs::create_directories(dir);
            file_.open(fs::path(dir) / name);
            if (!file_) throw ConfigurationError("cannot write " + (fs::path(dir) / name).string());
            os_ = &file_;
        } else if (to_stdout) {
            os_ = &std::cout;
        }
    }
    explicit operator bool() const { return os_ != nullptr; }
    std::ostream& os() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json jnum(double v)
{
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

void write_json(Sink& s, json j)
{
    if (s) s.os() << j.dump(2) << "\n";
}

double bump(double t, double a, double b)
{
    if (t <= a || t >= b) return 0.0;
    double u = (t - a) / (b - a);
    return std::exp(-1.0 / (u * (1.0 - u)) + 4.0);
}

// "name:p1,p2,..." -> name and parameters
std::pair<std::string, std::vector<double>> parse_spec(const std::string& spec)
{
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<double> p;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                p.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw ConfigurationError("bad number '" + item + "' in '" + spec + "'");
            }
        }
    }
    return {name, p};
}

void need_params(const std::string& spec, const std::vector<double>& p, std::size_t n)
{
    if (p.size() != n)
        throw ConfigurationError("'" + spec + "' needs " + std::to_string(n) + " parameters");
}

// Spatial profile: zero | bump:amp,a,b | gaussian:amp,center,width
std::function<double(double)> profile(const std::string& spec)
{
    auto [name, p] = parse_spec(spec);
    if (name == "zero") return [](double) { return 0.0; };
    if (name == "bump") {
        need_params(spec, p, 3);
        if (!(p[1] < p[2])) throw ConfigurationError("bump needs a < b");
        return [p](double x) { return p[0] * bump(x, p[1], p[2]); };
    }
    if (name == "gaussian") {
        need_params(spec, p, 3);
        if (!(p[2] > 0)) throw ConfigurationError("gaussian width must be positive");
        return [p](double x) { double z = (x - p[1]) / p[2]; return p[0] * std::exp(-0.5 * z * z); };
    }
    throw ConfigurationError("unknown profile '" + spec + "'");
}

void check_grid(int n, double L)
{
    if (n < 8 || (n & (n - 1))) throw ConfigurationError("grid size must be a power of two >= 8");
    if (!(L > 0)) throw ConfigurationError("domain length must be positive");
}

// Flat JSON object whose keys are long option names of the subcommand.
// Nested objects are flattened one level ("grid": {"nx": ..} -> --nx).
void apply_config(CLI::App* sub, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigurationError("malformed config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigurationError("config must be a JSON object");
    std::vector<std::pair<std::string, json>> flat;
    for (auto& [k, v] : j.items()) {
        if (v.is_object())
            for (auto& [k2, v2] : v.items()) flat.emplace_back(k2, v2);
        else
            flat.emplace_back(k, v);
    }
    for (auto& [k, v] : flat) {
        std::string name = k;
        std::replace(name.begin(), name.end(), '_', '-');
        CLI::Option* opt = nullptr;
        try {
            opt = sub->get_option("--" + name);
        } catch (const CLI::OptionNotFound&) {
            throw ConfigurationError("config key '" + k + "' is not an option of " + sub->get_name());
        }
        if (opt->count() > 0 || name == "config") continue;  // command line wins
        std::vector<std::string> vals;
        auto one = [&](const json& x) {
            if (x.is_string()) vals.push_back(x.get<std::string>());
            else if (x.is_boolean()) vals.push_back(x.get<bool>() ? "true" : "false");
            else if (x.is_number_integer()) vals.push_back(std::to_string(x.get<long long>()));
            else if (x.is_number()) vals.push_back(num(x.get<double>()));
            else throw ConfigurationError("config key '" + k + "' has an unsupported value");
        };
        if (v.is_array())
            for (auto& x : v) one(x);
        else
            one(v);
        opt->add_result(vals);
        try {
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw ConfigurationError("config key '" + k + "': " + e.what());
        }
    }
}

void add_common(CLI::App* sub, Common& c, const std::string& out_help)
{
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    sub->add_option("--out", c.out, out_help);
    sub->add_option("--config", c.config, "JSON file of option values (command line wins)");
}

// ------------------------------------------------------------ kernel

struct KernelArgs {
    int order = 0;
    double x_min = -20.0, x_max = 20.0;
    int samples = 401;
};

int run_kernel(const KernelArgs& a, const Common& c)
{
    if (a.order < 0 || a.order > 4) throw DomainError("kernel order must be in 0..4");
    if (a.samples < 2) throw ConfigurationError("need at least 2 samples");
    if (!(a.x_min < a.x_max)) throw ConfigurationError("need x-min < x-max");
    Sink s(c.out, "kernel.csv", true);
    s.os() << "x,value,imag_residual\n";
    for (int i = 0; i < a.samples; ++i) {
        double x = a.x_min + (a.x_max - a.x_min) * i / (a.samples - 1);
        auto v = eval_B(a.order, x);
        s.os() << num(x) << "," << num(v.value) << "," << num(v.imag_residual) << "\n";
    }
    return kExitOk;
}

// ------------------------------------------------------------ propagate

struct PropagateArgs {
    std::string data = "gaussian:1,0,2";
    double t = 0.01;
    int n = 1024;
    double L = 128.0;
    double origin = std::nan("");
    double xi0 = 0.0;
};

int run_propagate(const PropagateArgs& a, const Common& c)
{
    check_grid(a.n, a.L);
    double origin = std::isnan(a.origin) ? -0.5 * a.L : a.origin;
    auto g = Grid1D::make(a.n, a.L, origin);
    auto shape = profile(a.data);
    double xi0 = a.xi0;
    auto phi = Field1D::sample(g, [&](double x) { return shape(x) * std::exp(I * xi0 * x); });
    auto u = propagate(phi, a.t);
    Sink s(c.out, "propagate.csv", true);
    s.os() << "x,re,im\n";
    for (int i = 0; i < a.n; ++i)
        s.os() << num(g.point(i)) << "," << num(u.values[i].real()) << "," << num(u.values[i].imag()) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------ forcing

struct ForcingArgs {
    double lambda = 0.0;
    std::string side = "plus";
    std::string data = "bump:1,0.05,0.45";
    int nx = 1024, nt = 256;
    double L = 256.0, T = 0.6;
    int x_stride = 8, t_stride = 4;
};

Side parse_side(const std::string& s)
{
    if (s == "plus" || s == "+") return Side::plus;
    if (s == "minus" || s == "-") return Side::minus;
    throw ConfigurationError("side must be plus or minus");
}

int run_forcing(const ForcingArgs& a, const Common& c)
{
    check_grid(a.nx, a.L);
    check_grid(a.nt, a.T);
    if (a.x_stride < 1 || a.t_stride < 1) throw ConfigurationError("strides must be positive");
    Side side = parse_side(a.side);
    SpaceTimeGrid g{Grid1D::make(a.nt, a.T), Grid1D::make(a.nx, a.L, -0.75 * a.L)};
    auto shape = profile(a.data);
    auto f = HalfLineSignal::sample(a.nt, g.time.dx(), shape);
    Field2D u = a.lambda == 0.0 ? L0(f, g) : L_lambda(f, a.lambda, side, g);
    double cst = a.lambda == 0.0 ? 1.0 : trace_constant(a.lambda, side);
    auto tr = trace_at(u, 0.0, 0);
    double err = 0.0, mf = 0.0;
    for (int i = 0; i < a.nt; ++i) {
        err = std::max(err, std::abs(tr[i] - cst * f.values[i]));
        mf = std::max(mf, std::abs(f.values[i]));
    }
    double rel = mf > 0 ? err / mf : err;

    Sink csv(c.out, "forcing_field.csv", false);
    if (csv) {
        csv.os() << "t,x,re,im\n";
        for (int it = 0; it < a.nt; it += a.t_stride)
            for (int ix = 0; ix < a.nx; ix += a.x_stride)
                csv.os() << num(g.time.point(it)) << "," << num(g.space.point(ix)) << ","
                         << num(u.at(it, ix).real()) << "," << num(u.at(it, ix).imag()) << "\n";
    }
    json j;
    j["schema_version"] = 1;
    j["lambda"] = a.lambda;
    j["side"] = a.side;
    j["trace_constant"] = jnum(cst);
    j["trace_max_abs_error"] = jnum(err);
    j["trace_rel_error"] = jnum(rel);
    j["trace_ok"] = rel <= 1e-3;
    Sink rep(c.out, "forcing_report.json", true);
    write_json(rep, j);
    return kExitOk;
}

// ------------------------------------------------------------ norms

struct NormsArgs {
    std::string field;
    std::string data = "gaussian:1,0,2";
    int nx = 256, nt = 128;
    double L = 128.0, T = 1.0;
    double s = 0.0, b = 0.4, alpha = 0.55;
    int ell = 1;
};

// CSV with header t,x,re,im on a uniform row-major grid.
Field2D read_field_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open field " + path);
    std::string line;
    std::getline(in, line);
    if (line.rfind("t,x,re,im", 0) != 0) throw ConfigurationError("field file needs header t,x,re,im");
    std::vector<double> ts, xs;
    std::vector<cplx> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        double t, x, re, im;
        char c1, c2, c3;
        if (!(ss >> t >> c1 >> x >> c2 >> re >> c3 >> im)) throw ConfigurationError("bad field row: " + line);
        if (ts.empty() || ts.back() != t) ts.push_back(t);
        if (ts.size() == 1) xs.push_back(x);
        vals.emplace_back(re, im);
    }
    int nt = int(ts.size()), nx = int(xs.size());
    if (nt < 2 || nx < 2 || std::size_t(nt) * nx != vals.size())
        throw ConfigurationError("field file is not a full rectangular grid");
    double dt = ts[1] - ts[0], dx = xs[1] - xs[0];
    SpaceTimeGrid g{Grid1D::make(nt, nt * dt, ts[0]), Grid1D::make(nx, nx * dx, xs[0])};
    Field2D f = Field2D::zeros(g);
    f.values = std::move(vals);
    return f;
}

int run_norms(const NormsArgs& a, const Common& c)
{
    Field2D u;
    if (!a.field.empty()) {
        u = read_field_csv(a.field);
    } else {
        check_grid(a.nx, a.L);
        check_grid(a.nt, a.T);
        auto gx = Grid1D::make(a.nx, a.L, -0.5 * a.L);
        SpaceTimeGrid g{Grid1D::make(a.nt, a.T, -0.5 * a.T), gx};
        auto shape = profile(a.data);
        auto phi = Field1D::sample(gx, shape);
        u = Field2D::zeros(g);
        for (int it = 0; it < a.nt; ++it) {
            double t = g.time.point(it);
            auto v = propagate(phi, t);
            double cut = Cutoff(0.25 * a.T)(t);
            for (auto& z : v.values) z *= cut;
            u.set_slice(it, v);
        }
    }
    if (a.ell < 0 || a.ell > 4) throw ConfigurationError("ell must be in 0..4");
    auto z = z_norm(u, a.s, a.b, a.alpha, a.ell);
    json j;
    j["schema_version"] = 1;
    j["s"] = a.s;
    j["b"] = a.b;
    j["alpha"] = a.alpha;
    j["nt"] = u.grid.nt();
    j["nx"] = u.grid.nx();
    j["xsb"] = jnum(xsb_norm(u, a.s, a.b));
    j["ysb"] = jnum(ysb_norm(u, a.s, a.b));
    j["dalpha"] = jnum(dalpha_norm(u, a.alpha));
    j["xsb_dalpha"] = jnum(xsb_dalpha_norm(u, a.s, a.b, a.alpha));
    j["xsb_dyadic"] = jnum(std::sqrt(xsb_dyadic_sq(u, a.s, a.b)));
    json zj;
    zj["sup_t_hs"] = jnum(z.sup_t_hs);
    json tr = json::array();
    for (double v : z.sup_x_traces) tr.push_back(jnum(v));
    zj["sup_x_traces"] = tr;
    zj["xsb_dalpha"] = jnum(z.xsb_dalpha);
    zj["total"] = jnum(z.total);
    j["z_norm"] = zj;
    Sink s(c.out, "norms.json", true);
    write_json(s, j);
    return kExitOk;
}

// ------------------------------------------------------------ probe

struct ProbeArgs {
    std::string variant = "L2a";
    std::string side = "X";
    double s = 0.0, b = 0.45, alpha = 0.55;
    int kmin = 2, kmax = 8;
    std::size_t ensemble = 20;
    bool exploratory = false;
};

int run_probe(const ProbeArgs& a, const Common& c)
{
    if (a.kmin > a.kmax) throw ConfigurationError("need kmin <= kmax");
    ProbeReport r;
    if (a.variant == "theorem-quadratic" || a.variant == "theorem-cubic") {
        TheoremProbeOptions o;
        o.s = a.s;
        o.b = a.b;
        o.alpha = a.alpha;
        o.k_lo = a.kmin;
        o.k_hi = a.kmax;
        o.ensemble = a.ensemble;
        o.seed = c.seed;
        o.exploratory = a.exploratory;
        if (a.side == "X") o.side = NormSide::X;
        else if (a.side == "Y") o.side = NormSide::Y;
        else throw ConfigurationError("side must be X or Y");
        auto kind = a.variant == "theorem-cubic" ? NonlinearityKind::cubic : NonlinearityKind::quadratic_nonlocal;
        r = probe_theorem_ratio(kind, o);
    } else if (a.variant == "strichartz") {
        r = probe_strichartz(a.kmin, a.kmax, a.ensemble, c.seed);
    } else {
        r = probe_block_estimate(parse_block_variant(a.variant), a.kmin, a.kmax, a.ensemble, c.seed);
    }
    Sink csv(c.out, "probe_ratios.csv", false);
    if (csv) {
        csv.os() << "class,k_max,member,ratio\n";
        for (const auto& p : r.samples)
            csv.os() << p.cls << "," << p.k_max << "," << p.member << "," << num(p.ratio) << "\n";
    }
    json j;
    j["schema_version"] = 1;
    j["variant"] = r.variant;
    j["seed"] = r.seed;
    j["ensemble"] = r.ensemble;
    j["kmin"] = a.kmin;
    j["kmax"] = a.kmax;
    j["max_ratio"] = jnum(r.max_ratio);
    j["slope"] = jnum(r.slope);
    json cl = json::array();
    for (const auto& k : r.classes)
        cl.push_back({{"name", k.name}, {"max_ratio", jnum(k.max_ratio)}, {"slope", jnum(k.slope)},
                      {"diagnostic", k.diagnostic}});
    j["classes"] = cl;
    Sink rep(c.out, "probe_report.json", true);
    write_json(rep, j);
    return kExitOk;
}

// ------------------------------------------------------------ solve-ibvp

struct SolveArgs {
    int nx = 1024, nt = 256;
    double L = 256.0;
    double s = 0.0, b = 0.4, alpha = 0.55;
    std::vector<double> lambda1, lambda2;  // optional, at most one value each
    double T0 = 0.25;
    double tol = 1e-10;
    int max_iter = 60;
    std::string kind = "cubic";
    std::string u0 = "bump:1,1,9";
    std::string f = "reference";
    std::string g = "reference";
    bool linear = false;
    int x_stride = 4, t_stride = 1;
};

int run_solve(const SolveArgs& a, const Common& c)
{
    check_grid(a.nx, a.L);
    if (a.nt < 16 || (a.nt & (a.nt - 1))) throw ConfigurationError("nt must be a power of two >= 16");
    if (a.x_stride < 1 || a.t_stride < 1) throw ConfigurationError("strides must be positive");
    auto kind = parse_kind(a.kind);
    auto gx = Grid1D::make(a.nx, a.L, -0.75 * a.L);
    auto u0 = Field1D::sample(gx, profile(a.u0));
    SolverOptions opt;
    opt.idx = {a.s, a.b, a.alpha};
    opt.T0 = a.T0;
    opt.tol = a.tol;
    opt.max_iter = a.max_iter;
    opt.nt = a.nt;
    opt.linear = a.linear;
    if (a.lambda1.size() > 1 || a.lambda2.size() > 1) throw ConfigurationError("lambda1/lambda2 take one value");
    if (!a.lambda1.empty()) opt.lambda1 = a.lambda1[0];
    if (!a.lambda2.empty()) opt.lambda2 = a.lambda2[0];

    // "reference": boundary data taken from the whole-line solution with the
    // same initial data, so the data are compatible by construction.
    Signal fs, gs;
    if (a.f == "reference" || a.g == "reference") {
        SpaceTimeGrid gr{Grid1D::make(a.nt, opt.time_factor * a.T0), gx};
        auto v = a.linear ? propagate_field(u0, gr) : ivp_solve(u0, kind, gr, 4);
        auto tr = extract_traces(v);
        double dt = gr.time.dx();
        if (a.f == "reference") fs = interpolate_signal(tr.u, dt);
        if (a.g == "reference") gs = interpolate_signal(tr.ux, dt);
    }
    if (!fs) fs = profile(a.f);
    if (!gs) gs = profile(a.g);

    IBVPData d{u0, fs, gs, kind};
    auto [u, rep] = picard_solve(d, opt);

    Sink csv(c.out, "solution.csv", false);
    if (csv) {
        csv.os() << "t,x,re,im\n";
        int kT = int(std::lround(rep.T / u.grid.time.dx()));
        for (int it = 0; it <= std::min(kT, u.grid.nt() - 1); it += a.t_stride)
            for (int ix = 0; ix < u.grid.nx(); ix += a.x_stride) {
                if (u.grid.space.point(ix) < 0.0) continue;
                csv.os() << num(u.grid.time.point(it)) << "," << num(u.grid.space.point(ix)) << ","
                         << num(u.at(it, ix).real()) << "," << num(u.at(it, ix).imag()) << "\n";
            }
    }
    json j;
    j["schema_version"] = 1;
    j["kind"] = to_string(kind);
    j["T"] = jnum(rep.T);
    j["lambda1"] = jnum(rep.lambda1);
    j["lambda2"] = jnum(rep.lambda2);
    j["iterations"] = rep.iterations;
    j["restarts"] = rep.restarts;
    json dl = json::array();
    for (double v : rep.deltas) dl.push_back(jnum(v));
    j["deltas"] = dl;
    j["contraction"] = jnum(rep.contraction);
    j["fixed_point_residual"] = jnum(rep.fixed_point_residual);
    j["pde_residual"] = jnum(rep.pde_residual);
    j["trace_error_f"] = jnum(rep.trace_error_f);
    j["trace_error_g"] = jnum(rep.trace_error_g);
    j["initial_error"] = jnum(rep.initial_error);
    j["compat_error"] = jnum(rep.compat_error);
    Sink rj(c.out, "solve_report.json", true);
    write_json(rj, j);
    return kExitOk;
}

// ------------------------------------------------------------ verify

struct VerifyArgs {
    std::vector<std::string> only;
    std::string fault;
};

int run_verify_cmd(const VerifyArgs& a, const Common& c)
{
    VerifyOptions o;
    o.seed = c.seed;
    for (const auto& item : a.only) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) o.only.push_back(part);
    }
    if (!a.fault.empty()) {
        if (a.fault != "kernel-table") throw ConfigurationError("unknown fault '" + a.fault + "'");
        o.corrupt_kernel_table = true;
    }
    select_criteria(o.only);  // reject bad names before any work
    auto rep = run_verify(o, [](const CriterionResult& r) {
        std::cerr << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " [" << r.group << "] " << r.title;
        if (!r.error.empty()) std::cerr << " : " << r.error;
        std::cerr << "\n";
        for (const auto& ch : r.checks)
            if (!ch.pass)
                std::cerr << "    " << ch.name << " = " << ch.value << (ch.at_least ? " < " : " > ") << ch.limit
                          << "\n";
    });
    Sink s(c.out, "verify_report.json", true);
    if (s) s.os() << report_json(rep) << "\n";
    return rep.pass() ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fifth-order KdV (Kawahara-type) half-line toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");
    const std::string out_dir = "Directory for output files (default: main output on stdout)";

    Common c;

    KernelArgs ka;
    auto* kernel = app.add_subcommand(
        "kernel",
        "Evaluate B^(n)(x) = (1/2pi) int (i xi)^n exp(i x xi + i xi^5) d xi by contour rotation.\n"
        "Writes CSV x,value,imag_residual (kernel.csv).");
    kernel->add_option("--order,-n", ka.order, "derivative order n in 0..4")->capture_default_str();
    kernel->add_option("--x-min", ka.x_min)->capture_default_str();
    kernel->add_option("--x-max", ka.x_max)->capture_default_str();
    kernel->add_option("--samples", ka.samples, "uniform sample count")->capture_default_str();
    add_common(kernel, c, out_dir);

    PropagateArgs pa;
    auto* prop = app.add_subcommand(
        "propagate",
        "Apply the free group exp(t d_x^5) (Fourier multiplier exp(i t xi^5)) to periodic data.\n"
        "Writes CSV x,re,im (propagate.csv).");
    prop->add_option("--data", pa.data, "zero | bump:amp,a,b | gaussian:amp,center,width")->capture_default_str();
    prop->add_option("--xi0", pa.xi0, "carrier wavenumber multiplying the profile")->capture_default_str();
    prop->add_option("--t", pa.t, "time")->capture_default_str();
    prop->add_option("--n", pa.n, "grid points (power of two)")->capture_default_str();
    prop->add_option("--L", pa.L, "period")->capture_default_str();
    prop->add_option("--origin", pa.origin, "left end of the grid (default -L/2)");
    add_common(prop, c, out_dir);

    ForcingArgs fa;
    auto* forcing = app.add_subcommand(
        "forcing",
        "Boundary forcing operators: L^0 f (Duhamel forcing by M I_{-4/5} f at x = 0) and\n"
        "L^lambda_+- f (Riemann-Liouville in x of L^0 I_{-lambda/5} f). Checks the trace\n"
        "at x = 0 against the closed-form constant. Writes forcing_report.json and, with --out,\n"
        "forcing_field.csv (t,x,re,im).");
    forcing->add_option("--lambda", fa.lambda, "order, -4 < lambda < 1/2; 0 selects L^0")->capture_default_str();
    forcing->add_option("--side", fa.side, "plus | minus")->capture_default_str();
    forcing->add_option("--data", fa.data, "boundary signal in t: bump:amp,a,b | gaussian:amp,center,width")
        ->capture_default_str();
    forcing->add_option("--nx", fa.nx)->capture_default_str();
    forcing->add_option("--nt", fa.nt)->capture_default_str();
    forcing->add_option("--L", fa.L, "spatial period")->capture_default_str();
    forcing->add_option("--T", fa.T, "time grid length")->capture_default_str();
    forcing->add_option("--x-stride", fa.x_stride, "subsampling of the CSV dump in x")->capture_default_str();
    forcing->add_option("--t-stride", fa.t_stride, "subsampling of the CSV dump in t")->capture_default_str();
    add_common(forcing, c, out_dir);

    NormsArgs na;
    auto* norms = app.add_subcommand(
        "norms",
        "Space-time norms of a field: X^{s,b} (weight <xi>^s <tau - xi^5>^b), Y^{s,b}\n"
        "(<tau>^{s/5} <tau - xi^5>^b), D^alpha (<tau>^alpha on |xi| <= 1), the dyadic form and\n"
        "the solution-space norm Z. Field from --field (CSV t,x,re,im) or a cut-off free solution.\n"
        "Writes norms.json.");
    norms->add_option("--field", na.field, "CSV t,x,re,im on a uniform grid");
    norms->add_option("--data", na.data, "initial profile when no field is given")->capture_default_str();
    norms->add_option("--nx", na.nx)->capture_default_str();
    norms->add_option("--nt", na.nt)->capture_default_str();
    norms->add_option("--L", na.L)->capture_default_str();
    norms->add_option("--T", na.T, "time window length (centred at 0)")->capture_default_str();
    norms->add_option("--s", na.s)->capture_default_str();
    norms->add_option("--b", na.b)->capture_default_str();
    norms->add_option("--alpha", na.alpha)->capture_default_str();
    norms->add_option("--ell", na.ell, "highest trace derivative in Z")->capture_default_str();
    add_common(norms, c, out_dir);

    ProbeArgs pb;
    auto* probe = app.add_subcommand(
        "probe",
        "Numerical probes of the multilinear estimates on random dyadic ensembles:\n"
        "block estimates (L2a L2b L2c L3a L3b1 L3b2), the bilinear/trilinear X^{s,b} and\n"
        "Y^{s,b} bounds (theorem-quadratic, theorem-cubic) and the L^6 Strichartz bound\n"
        "(strichartz). Reports the max ratio and the log2-slope against the top frequency.\n"
        "Writes probe_report.json and, with --out, probe_ratios.csv.");
    probe->add_option("--variant", pb.variant)->capture_default_str();
    probe->add_option("--side", pb.side, "X | Y (theorem variants)")->capture_default_str();
    probe->add_option("--s", pb.s)->capture_default_str();
    probe->add_option("--b", pb.b)->capture_default_str();
    probe->add_option("--alpha", pb.alpha)->capture_default_str();
    probe->add_option("--kmin", pb.kmin, "lowest top-frequency shell")->capture_default_str();
    probe->add_option("--kmax", pb.kmax, "highest top-frequency shell")->capture_default_str();
    probe->add_option("--ensemble", pb.ensemble, "configurations per class")->capture_default_str();
    probe->add_flag("--exploratory", pb.exploratory, "allow parameters outside the proven window");
    add_common(probe, c, out_dir);

    SolveArgs sa;
    auto* solve = app.add_subcommand(
        "solve-ibvp",
        "Solve the half-line problem u_t - u_xxxxx + F(u) = 0, u(0) = u0, u(t,0) = f, u_x(t,0) = g\n"
        "by Picard iteration of the boundary-forced Duhamel map. F is the nonlocal quadratic\n"
        "(1 - d^2)^{1/2} d_x(u^2) or the cubic d_x(u^3). Writes solve_report.json and, with\n"
        "--out, solution.csv (t,x,re,im for x >= 0). Exit 2 when the iteration does not converge.");
    solve->add_option("--nx", sa.nx)->capture_default_str();
    solve->add_option("--nt", sa.nt)->capture_default_str();
    solve->add_option("--L", sa.L)->capture_default_str();
    solve->add_option("--s", sa.s)->capture_default_str();
    solve->add_option("--b", sa.b)->capture_default_str();
    solve->add_option("--alpha", sa.alpha)->capture_default_str();
    solve->add_option("--lambda1", sa.lambda1, "forcing order (default from s)")->expected(0, 1);
    solve->add_option("--lambda2", sa.lambda2, "forcing order (default from s)")->expected(0, 1);
    solve->add_option("--T0", sa.T0, "requested existence time")->capture_default_str();
    solve->add_option("--tol", sa.tol)->capture_default_str();
    solve->add_option("--max-iter", sa.max_iter)->capture_default_str();
    solve->add_option("--kind", sa.kind, "quadratic | cubic")->capture_default_str();
    solve->add_option("--u0", sa.u0, "initial profile")->capture_default_str();
    solve->add_option("--f", sa.f, "boundary value in t, or 'reference'")->capture_default_str();
    solve->add_option("--g", sa.g, "boundary derivative in t, or 'reference'")->capture_default_str();
    solve->add_flag("--linear", sa.linear, "drop the nonlinearity");
    solve->add_option("--x-stride", sa.x_stride)->capture_default_str();
    solve->add_option("--t-stride", sa.t_stride)->capture_default_str();
    add_common(solve, c, out_dir);

    VerifyArgs va;
    auto* verify = app.add_subcommand(
        "verify",
        "Run the acceptance criteria: kernel values, integrals, Mellin transforms and decay;\n"
        "unitarity, group law and Strichartz scaling; fractional integrals; forcing traces;\n"
        "resonance identities; J2/J3 functionals; block and theorem probes; the half-line\n"
        "energy identity; the IBVP solve against a whole-line reference; scaling; determinism.\n"
        "Prints PASS/FAIL per criterion and writes verify_report.json. Exit 2 on any failure.");
    verify->add_option("--only", va.only, "group name or criterion number (repeatable, comma lists)");
    verify->add_option("--inject-fault", va.fault, "kernel-table: perturb the kernel table");
    add_common(verify, c, "Directory for verify_report.json (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!c.config.empty()) apply_config(sub, c.config);
        if (sub == kernel) return run_kernel(ka, c);
        if (sub == prop) return run_propagate(pa, c);
        if (sub == forcing) return run_forcing(fa, c);
        if (sub == norms) return run_norms(na, c);
        if (sub == probe) return run_probe(pb, c);
        if (sub == solve) return run_solve(sa, c);
        if (sub == verify) return run_verify_cmd(va, c);
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << " (achieved " << e.achieved << ")\n";
        return kExitNumeric;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

#include "kawahara/nonlinearity.hpp"

#include "kawahara/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kawahara {

NonlinearityKind parse_kind(const std::string& s)
{
    if (s == "quadratic" || s == "quadratic-nonlocal" || s == "quadratic_nonlocal")
        return NonlinearityKind::quadratic_nonlocal;
    if (s == "cubic") return NonlinearityKind::cubic;
    throw ConfigurationError("unknown nonlinearity kind '" + s + "'");
}

std::string to_string(NonlinearityKind k)
{
    return k == NonlinearityKind::cubic ? "cubic" : "quadratic-nonlocal";
}

Field1D apply_F(const Field1D& u, NonlinearityKind kind, NonlinearDiagnostics* diag)
{
    if (u.domain != Domain::physical) throw StructuralError("apply_F expects a physical field");
    const auto& g = u.grid;
    const int degree = kind == NonlinearityKind::cubic ? 3 : 2;
    const int cut = g.n / (degree + 1);
    double peak = 0.0, im = 0.0;
    for (const auto& x : u.values) {
        peak = std::max(peak, std::abs(x));
        im = std::max(im, std::abs(std::imag(x)));
    }
    if (im > 1e-10 * (1.0 + peak)) throw DomainError("apply_F expects a real field");

    Field1D h = forward_transform(u);
    double tot = 0.0, lost = 0.0;
    for (int m = 0; m < g.n; ++m) {
        int mm = m < g.n / 2 ? m : m - g.n;
        double e = std::norm(h.values[m]);
        tot += e;
        if (std::abs(mm) > cut) {
            lost += e;
            h.values[m] = 0.0;
        }
    }
    if (diag) {
        diag->aliasing_fraction = tot > 0.0 ? lost / tot : 0.0;
        diag->warning = diag->aliasing_fraction > 1e-6;
    }
    Field1D v = inverse_transform(h);
    for (auto& x : v.values) {
        double r = std::real(x);
        x = degree == 3 ? r * r * r : r * r;
    }
    Field1D p = forward_transform(v);
    for (int m = 0; m < g.n; ++m) {
        int mm = m < g.n / 2 ? m : m - g.n;
        if (std::abs(mm) > cut) {
            p.values[m] = 0.0;
            continue;
        }
        double xi = g.wavenumber(m);
        p.values[m] *= degree == 3 ? I * xi : I * xi * jb(xi);
    }
    Field1D out = inverse_transform(p);
    for (auto& x : out.values) x = std::real(x);
    return out;
}

Field2D apply_F(const Field2D& u, NonlinearityKind kind)
{
    Field2D out = u;
    for (int it = 0; it < u.grid.nt(); ++it) out.set_slice(it, apply_F(u.slice(it), kind));
    return out;
}

double resonance_H(double a, double b)
{
    double c = a + b;
    return 2.5 * a * b * c * (a * a + b * b + c * c);
}

double resonance_H_expanded(double a, double b)
{
    return std::pow(a + b, 5) - std::pow(a, 5) - std::pow(b, 5);
}

double resonance_G(double a, double b, double c)
{
    double s = a + b + c;
    return 2.5 * (a + b) * (b + c) * (c + a) * (a * a + b * b + c * c + s * s);
}

double resonance_G_expanded(double a, double b, double c)
{
    return std::pow(a + b + c, 5) - std::pow(a, 5) - std::pow(b, 5) - std::pow(c, 5);
}

Field1D scaling_map(const Field1D& u, double lam)
{
    if (!(lam > 0.0)) throw DomainError("scaling parameter must be positive");
    Field1D out = u;
    out.grid = Grid1D::make(u.grid.n, u.grid.L / lam, u.grid.origin / lam);
    for (auto& v : out.values) v *= lam * lam;
    return out;
}

Field2D scaling_map(const Field2D& u, double lam)
{
    if (!(lam > 0.0)) throw DomainError("scaling parameter must be positive");
    if (u.domain != Domain::physical) throw StructuralError("scaling_map expects a physical field");
    Field2D out = u;
    double l5 = std::pow(lam, 5);
    out.grid.space = Grid1D::make(u.grid.nx(), u.grid.space.L / lam, u.grid.space.origin / lam);
    out.grid.time = Grid1D::make(u.grid.nt(), u.grid.time.L / l5, u.grid.time.origin / l5);
    for (auto& v : out.values) v *= lam * lam;
    return out;
}

}  // namespace kawahara

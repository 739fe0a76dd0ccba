#pragma once

#include "kawahara/fractional.hpp"
#include "kawahara/spectral.hpp"

#include <string>
#include <vector>

namespace kawahara {

/// psi = 1 on [-1,1], 0 for |t| >= 2, S(2-|t|) between, where S is the
/// normalized integral of exp(-1/(u(1-u))) over [0,u].
class Cutoff {
public:
    explicit Cutoff(double T);
    static double psi(double t);
    double operator()(double t) const { return psi(t / T_); }
    double T() const { return T_; }

private:
    double T_;
};

/// e^{t d_x^5} phi: multiplier e^{i t xi^5}.
Field1D propagate(const Field1D& phi, double t);

/// Rows e^{t_i d_x^5} phi for every time sample of g.
Field2D propagate_field(const Field1D& phi, const SpaceTimeGrid& g);

/// Dw(t) = int_0^t e^{(t-t') d_x^5} w(t') dt'. Exact integration of the
/// piecewise linear (in t) interpolant of w against the oscillatory factor.
Field2D duhamel(const Field2D& w);

/// Same recursion applied in place to rows that already hold x-spectra.
void duhamel_xhat_inplace(Field2D& w_hat);

/// Scalar version: v(t_i) = int_0^{t_i} e^{i omega (t_i - s)} h(s) ds.
std::vector<cplx> duhamel_scalar(const std::vector<cplx>& h, double dt, double omega);

Field2D apply_cutoff(const Field2D& u, double T);
HalfLineSignal apply_cutoff(const HalfLineSignal& u, double T);

/// d^k u/dx^k (t_i, x0) for every row, by Fourier interpolation.
std::vector<cplx> trace_at(const Field2D& u, double x0, int k);

/// int_a^b g(x) dx for a periodic field given by samples, exact for the
/// trigonometric interpolant.
double periodic_integral(const Field1D& g, double a, double b);

enum class HalfLine { right, left };

struct EnergyReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double initial = 0.0;
    double flux = 0.0;
    bool wrap_warning = false;
};

/// Half-line L^2 balance of a linear solution between t=0 and t=T (a grid
/// time). Right: int_0^inf u^2(T) = int_0^inf u^2(0) - int u_xx^2
/// + 2 int u_xxx u_x - 2 int u_xxxx u. Left: boundary terms flip sign.
EnergyReport energy_identity_report(const Field2D& u, double T, HalfLine side = HalfLine::right);

}  // namespace kawahara

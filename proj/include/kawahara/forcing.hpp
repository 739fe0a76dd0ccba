#pragma once

#include "kawahara/fractional.hpp"
#include "kawahara/kernel.hpp"
#include "kawahara/spectral.hpp"

namespace kawahara {

/// L^lambda_+- g(t,0) / g(t). Plus side:
/// M cos((1+4 lam) pi/10) / (5 sin((1-lam) pi/5)); minus side uses
/// cos((1-6 lam) pi/10).
double trace_constant(double lambda, Side side);

/// L^0 f = M int_0^t e^{(t-t') d^5} delta_0 h(t') dt', h = I_{-4/5} f.
/// Spectral route: every wavenumber is forced by M h(t), integrated in
/// time like duhamel(). f must live on g.time.
Field2D L0(const HalfLineSignal& f, const SpaceTimeGrid& g);

/// Kernel route at a single x: (5/4) M int_0^{t^{4/5}} B(x sigma^{-1/4})
/// h(t - sigma^{5/4}) d sigma. Arguments beyond table.hi() count as zero;
/// arguments below table.lo() raise TableRangeError.
std::vector<double> L0_kernel(const HalfLineSignal& f, double x, const KernelTable& table);

struct LambdaOptions {
    /// Length of the x-kernel (y-x)^{lam-1}: tapered to zero on [D/2, D].
    double D = 32.0;
    /// Integer lam normally uses the exact multiplier (-i xi)^k; this
    /// routes it through the tapered convolution kernel instead.
    bool force_convolution = false;
};

/// L^lam_+ g = Gamma(lam)^{-1} int_x^inf (y-x)^{lam-1} L^0(I_{-lam/5} g)(t,y) dy
/// (and the mirror for the minus side), -4 < lam < 1/2.
Field2D L_lambda(const HalfLineSignal& g, double lambda, Side side, const SpaceTimeGrid& grid,
                 const LambdaOptions& opt = {});

/// Symbol of the x-convolution used by L_lambda at wavenumber xi.
cplx lambda_multiplier(double lambda, Side side, double xi, const LambdaOptions& opt = {});

struct FourthDerivativeLimits {
    double left = 0.0;   // lim_{x->0-} d_x^4 L^0 f / I_{-4/5} f
    double right = 0.0;  // lim_{x->0+}
};

/// One-sided limits of d_x^4 L^0 f at x = 0 in units of I_{-4/5} f(t),
/// from 5M int B''''(u)/|u| du over each half-line.
FourthDerivativeLimits fourth_derivative_limits();

struct ForcingConfig {
    double lambda1 = 0.0, lambda2 = 0.0;
    double s = 0.0;
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
    double det() const { return a1 * b2 - a2 * b1; }
};

/// Default pair (s/2 - 0.45, min(0.4, s/2 + 0.3)) pulled inside the window.
std::pair<double, double> default_lambda_pair(double s);

/// a_j = trace of L^{lam_j}_+ at x = 0, b_j = trace of I_{1/5} d_x L^{lam_j}_+,
/// which is -trace_constant(lam_j - 1, plus).
ForcingConfig build_matrix(double lambda1, double lambda2, double s);

struct GammaSolution {
    HalfLineSignal gamma1, gamma2;
    double residual = 0.0;     // max |A gamma - rhs| / max |rhs|
    double compat_error = 0.0; // |rhs(0)| before it is set to zero
};

/// [g1; g2] = A^{-1} [f - F(t,0); I_{1/5} g - I_{1/5} F_x(t,0)] pointwise in t.
GammaSolution solve_gamma(const HalfLineSignal& f, const HalfLineSignal& g, const HalfLineSignal& F_trace,
                          const HalfLineSignal& Fx_trace, const ForcingConfig& cfg);

}  // namespace kawahara

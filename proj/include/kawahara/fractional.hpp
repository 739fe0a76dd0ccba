#pragma once

#include "kawahara/common.hpp"

#include <string>
#include <vector>

namespace kawahara {

/// Samples f(i*dt), i = 0..n-1, of a function vanishing for t <= 0.
struct HalfLineSignal {
    double dt = 0.0;
    std::vector<double> values;

    static HalfLineSignal zeros(int n, double dt);
    static HalfLineSignal sample(int n, double dt, const std::function<double(double)>& f);

    int size() const { return int(values.size()); }
    double t(int i) const { return i * dt; }
};

struct FracDiagnostics {
    bool underresolved = false;
    double tail_fraction = 0.0;
};

/// I_alpha f(t) = Gamma(alpha)^{-1} int_0^t (t-s)^{alpha-1} f(s) ds, alpha > 0.
/// Product integration against the piecewise linear interpolant of f.
HalfLineSignal riemann_liouville(const HalfLineSignal& f, double alpha);

/// Negative order, -5 < alpha < 0: I_alpha = I_{alpha+m} d^m/dt^m with
/// m = ceil(-alpha). The derivative is 8th-order finite differences.
HalfLineSignal riemann_liouville_neg(const HalfLineSignal& f, double alpha,
                                     FracDiagnostics* diag = nullptr);

/// Dispatch on the sign of alpha; alpha = 0 is the identity.
HalfLineSignal fractional_integral(const HalfLineSignal& f, double alpha);

/// d^m f/dt^m, zero extension to t < 0, one-sided stencils at the right end.
HalfLineSignal time_derivative(const HalfLineSignal& f, int m);

/// Fourier transform of t_+^{alpha-1}/Gamma(alpha) at tau != 0.
cplx halfline_power_transform(double alpha, double tau);

/// Finite-difference weights for derivative `order` at x0 from nodes xs.
std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int order);

}  // namespace kawahara

#pragma once

#include "kawahara/common.hpp"

#include <vector>

namespace kawahara {

/// B^{(n)}(x) = (1/2pi) int (i xi)^n e^{i x xi + i xi^5} d xi.
struct KernelValue {
    double value = 0.0;
    double imag_residual = 0.0;
    double error_estimate = 0.0;
};

/// Contour-rotated evaluation, n in 0..4. For x >= -10 the two rays
/// arg xi = pi/10, 9pi/10 start at 0; further left they start at +-R
/// past the stationary points and the segment [-R,R] is done on the axis.
KernelValue eval_B(int n, double x);

/// Closed forms of B^{(n)}(0), n = 0..3.
double closed_form_at_zero(int n);

/// General value Gamma((n+1)/5) cos(n pi/2 + (n+1) pi/10) / (5 pi).
double value_at_zero(int n);

/// M = 1 / (B(0) Gamma(4/5)).
double forcing_constant_M();

/// Leading stationary-phase term of B(-X), X > 0.
double B_left_asymptotic(double X);

class KernelTable {
public:
    /// Samples B^{(n)} on [x_lo, x_hi]. Spacing h0 near the origin,
    /// shrinking like |x|^{-1/4} on the oscillatory left side and growing
    /// geometrically on the right.
    static KernelTable build(int n, double x_lo, double x_hi, double h0 = 0.1, int degree = 7);

    int order() const { return n_; }
    double lo() const { return xs_.front(); }
    double hi() const { return xs_.back(); }
    const std::vector<double>& abscissae() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }
    std::vector<double>& mutable_values() { return ys_; }

    /// Local Lagrange interpolation. Throws TableRangeError outside.
    double operator()(double x) const;
    double derivative(double x) const;
    /// Interpolated value, 0 outside the table (for kernels that decay).
    bool contains(double x) const { return x >= lo() && x <= hi(); }

private:
    int stencil_start(double x) const;
    int n_ = 0;
    int degree_ = 7;
    std::vector<double> xs_, ys_;
};

struct HalflineIntegral {
    double value;
    double error_estimate;
};

/// int_0^infty B(y) dy by quadrature of the tabulated kernel plus a tail bound.
HalflineIntegral integral_B_halfline(const KernelTable& table);
HalflineIntegral integral_B_halfline();

enum class Side { plus, minus };

struct MellinResult {
    double closed_form;
    double quadrature;
    double difference;
};

/// int_0^infty x^{lambda-1} B(+-x) dx.
MellinResult mellin_B(double lambda, Side side);
/// Closed form only, unsimplified; at the removable poles
/// lambda = 1+5n the limit is taken by symmetric perturbation.
double mellin_closed_form_raw(double lambda, Side side);
/// Pole-free rewriting of the plus-side closed form.
double mellin_closed_form(double lambda, Side side);

struct EnvelopeReport {
    double constant = 0.0;      // max of the weighted envelope
    double log_slope = 0.0;     // least-squares slope of log envelope vs log x
    std::vector<double> xs, envelope;
};

enum class Direction { left, right };

/// right: |B(x)| <x>^5. left: sqrt(B(-x)^2 + (B'(-x)/w)^2) <x>^{3/8},
/// w = (x/5)^{1/4} the local wavenumber, which removes the oscillation.
EnvelopeReport decay_envelope_check(int n, Direction dir, const std::vector<double>& xs);

}  // namespace kawahara

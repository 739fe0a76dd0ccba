#pragma once

#include "kawahara/spectral.hpp"

namespace kawahara {

struct SobolevIndex {
    double s = 0.0;
    double b = 0.4;
    double alpha = 0.55;
    /// 0 < b < 1/2 < alpha < 1 - b
    bool in_solver_window() const { return b > 0.0 && b < 0.5 && alpha > 0.5 && alpha < 1.0 - b; }
};

// Space-time norms are Plancherel-normalized: with all exponents zero they
// equal the L^2 norm of the samples over the grid, (sum |f|^2 dt dx)^{1/2}.

/// <xi>^s <tau - xi^5>^b
double xsb_norm(const Field2D& f, double s, double b);
/// <tau>^{s/5} <tau - xi^5>^b
double ysb_norm(const Field2D& f, double s, double b);
/// <tau>^alpha restricted to |xi| <= 1
double dalpha_norm(const Field2D& f, double alpha);
/// max(X^{s,b}, D^alpha)
double xsb_dalpha_norm(const Field2D& f, double s, double b, double alpha);

/// sum_k sum_j 2^{2sk} 2^{2bj} ||eta_j chi_k f~||^2 (square of the dyadic norm).
double xsb_dyadic_sq(const Field2D& f, double s, double b);

double hs_norm(const Field1D& f, double s);
/// H^s norm of the zero extension of f restricted to x >= 0, |s| < 1/2.
double hs0_halfline_norm(const Field1D& f, double s);
/// H^s norm in t of a column sampled on a time grid.
double hs_time_norm(const std::vector<cplx>& col, const Grid1D& time, double s);

struct ZNorm {
    double sup_t_hs = 0.0;
    std::vector<double> sup_x_traces;  // j = 0..ell
    double xsb_dalpha = 0.0;
    double total = 0.0;
};

/// sup_t ||u||_{H^s} + sum_{j<=ell} sup_x ||d_x^j u||_{H^{(s+2-j)/5}_t} + ||u||_{X^{s,b} cap D^alpha}
ZNorm z_norm(const Field2D& u, double s, double b, double alpha, int ell = 1);

}  // namespace kawahara

#pragma once

#include "kawahara/forcing.hpp"
#include "kawahara/nonlinearity.hpp"
#include "kawahara/norms.hpp"
#include "kawahara/propagator.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kawahara {

using Signal = std::function<double(double)>;

struct IBVPData {
    /// Samples on the solver's spatial grid; values at x < 0 are ignored.
    Field1D u0;
    Signal f;  // u(t,0)
    Signal g;  // u_x(t,0)
    NonlinearityKind kind = NonlinearityKind::cubic;
};

struct SolverOptions {
    SobolevIndex idx;
    std::optional<double> lambda1, lambda2;
    double T0 = 0.25;
    double T_min = 1.0 / 1024.0;
    double tol = 1e-10;
    int max_iter = 60;
    int nt = 256;
    /// time grid length as a multiple of T (the cutoff vanishes past 2T)
    double time_factor = 2.5;
    bool linear = false;
    LambdaOptions forcing;
};

struct SolveReport {
    int iterations = 0;
    int restarts = 0;
    std::vector<double> deltas;
    double contraction = 0.0;
    double T = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0;
    double fixed_point_residual = 0.0;
    double pde_residual = 0.0;
    double trace_error_f = 0.0;
    double trace_error_g = 0.0;
    double initial_error = 0.0;
    double compat_error = 0.0;
};

struct Extension {
    Field1D field;
    double hs_norm = 0.0;
};

/// Zero extension of u0 to x < 0.
Extension extend_initial(const Field1D& u0, double s);

/// Picard iteration of the solution map. The returned field lives on the
/// whole torus; its restriction to x >= 0 is the solution on (0,T).
std::pair<Field2D, SolveReport> picard_solve(const IBVPData& data, const SolverOptions& opt);

struct Traces {
    std::vector<double> u, ux, uxx;
};
Traces extract_traces(const Field2D& u);

/// Relative L^2 size of d_t u - d_x^5 u + F(u) on t in (0,T), x in [x_lo, x_hi],
/// from the interaction-picture time derivative of the modes with
/// xi^5 dt <= 1/2 (the rest is discarded on both sides).
double pde_residual(const Field2D& u, NonlinearityKind kind, bool linear, double T, double x_lo, double x_hi);

/// Whole-line (torus) reference: integrating-factor RK4 with `substeps`
/// steps per time-grid interval, same nonlinearity as the solver.
Field2D ivp_solve(const Field1D& u0, NonlinearityKind kind, const SpaceTimeGrid& g, int substeps = 4);

/// Local cubic interpolation of samples v at t_i = i*dt, 0 beyond the ends.
Signal interpolate_signal(std::vector<double> v, double dt);

}  // namespace kawahara

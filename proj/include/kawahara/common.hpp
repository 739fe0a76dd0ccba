#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>

namespace kawahara {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Japanese bracket (1+x^2)^{1/2}.
inline double jb(double x) { return std::sqrt(1.0 + x * x); }

/// Worker count from KAWAHARA_THREADS (default 1).
int thread_count();

/// Runs body(i) for i in [0, n). Each index is handled by exactly one
/// worker, so results written to slot i are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Smooth step: 0 for u<=0, 1 for u>=1, C-infinity, closed form
/// e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}).
double smooth_step(double u);

}  // namespace kawahara

#pragma once

#include "kawahara/nonlinearity.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace kawahara {

/// Gaussian e^{-(x-c)^2/(2w^2)} cut to |x-c| <= kCut*w.
struct GaussProfile {
    static constexpr double kCut = 6.0;
    double c = 0.0;
    double w = 1.0;
    double operator()(double x) const;
    double lo() const { return c - kCut * w; }
    double hi() const { return c + kCut * w; }
    /// integral of the square, cut ignored
    double l2sq() const;
};

/// Frequency shell k: 2^{k-1} <= |xi| <= 2^{k+1} (any integer k).
/// Modulation block j >= 1 as above, j = 0: |zeta| <= 2.
bool interval_in_shell(int k, double lo, double hi);
bool interval_in_modulation_block(int j, double lo, double hi);
int shell_of(double xi);
int modulation_block_of(double zeta);

/// f(zeta, xi) = amp a(zeta) p(xi), nonnegative, L2 norm 1 (amp = 0 allowed
/// for the zero function). Support lies in block j (zeta) x shell k (xi).
struct DyadicBump {
    int k = 0;
    int j = 0;
    GaussProfile zeta;
    GaussProfile xi;
    double amp = 1.0;

    double operator()(double z, double x) const;
    /// f*(zeta, xi) = f(-zeta, -xi)
    DyadicBump reflected() const;
    double l2() const;

    /// Throws DomainError when the cut support leaves the block.
    static DyadicBump make(int k, int j, GaussProfile zeta, GaussProfile xi);
    /// Random centre and width inside the block, random sign of xi.
    static DyadicBump random(int k, int j, std::mt19937_64& rng);
};

// Functionals on bumps. "direct" sums every factor but the last on its own
// trapezoid grid and evaluates the last one at the shifted argument.
// "plancherel" integrates the sharp transforms f(tau + xi^5, xi) by lattice
// convolution in tau and Gauss-Legendre in xi. "semi" integrates the zeta
// variables in closed form (cut ignored) and the xi variables adaptively.

double J2_direct(const DyadicBump& f, const DyadicBump& g, const DyadicBump& h, int n_zeta = 48, int n_xi = 48,
                 bool* resolved = nullptr);
double J2_plancherel(const DyadicBump& f, const DyadicBump& g, const DyadicBump& h);
double J2_semi(const DyadicBump& f, const DyadicBump& g, const DyadicBump& h, double rtol = 1e-7);

double J3_direct(const DyadicBump& f1, const DyadicBump& f2, const DyadicBump& f3, const DyadicBump& f4,
                 int n_zeta = 16, int n_xi = 16, bool* resolved = nullptr);
double J3_plancherel(const DyadicBump& f1, const DyadicBump& f2, const DyadicBump& f3, const DyadicBump& f4);
double J3_semi(const DyadicBump& f1, const DyadicBump& f2, const DyadicBump& f3, const DyadicBump& f4,
               double rtol = 1e-6);

/// Relative spread of J2(f,g,h), J2(g*,h,f), J2(h,f*,g) (direct sums).
double J2_permutation_spread(const DyadicBump& f, const DyadicBump& g, const DyadicBump& h);
/// Relative spread of J3 over the swaps (2,1,3,4), (3,2,1,4), (1*,2*,4,3).
double J3_permutation_spread(const DyadicBump& f1, const DyadicBump& f2, const DyadicBump& f3,
                             const DyadicBump& f4);

struct Block {
    int k = 0;
    int j = 0;
};

struct SupportCheck {
    bool compliant = true;
    std::string diagnostic;
    /// largest |J| / prod ||f|| over the sampled realizations
    double max_normalized = 0.0;
    int samples = 0;
};

/// Bilinear (3 blocks) or trilinear (4 blocks). Compliance follows the
/// frequency and modulation support rules; realizations are sampled with
/// the seed and evaluated with the semi-analytic functional.
SupportCheck support_property_check(const std::vector<Block>& blocks, std::uint64_t seed = 1, int samples = 8);

enum class BlockVariant { L2a, L2b, L2c, L3a, L3b1, L3b2 };
BlockVariant parse_block_variant(const std::string& s);
std::string to_string(BlockVariant v);

/// Right side of the block estimate without the constant. Throws DomainError
/// naming the violated hypothesis.
double block_bound_rhs(BlockVariant v, const std::vector<int>& ks, const std::vector<int>& js);

struct ProbeSample {
    std::string cls;
    int k_max = 0;
    std::size_t member = 0;
    double ratio = 0.0;
};

struct ProbeClass {
    std::string name;
    double max_ratio = 0.0;
    /// least-squares slope of log2(max ratio at k_max) against k_max
    double slope = 0.0;
    bool diagnostic = false;
};

struct ProbeReport {
    std::string variant;
    std::vector<ProbeSample> samples;
    std::vector<ProbeClass> classes;
    double max_ratio = 0.0;
    /// largest class slope over the non-diagnostic classes
    double slope = 0.0;
    std::uint64_t seed = 0;
    std::size_t ensemble = 0;
};

/// Each ensemble member is a configuration relative to the top shell; it is
/// realized at every k_max in [k_lo, k_hi].
ProbeReport probe_block_estimate(BlockVariant v, int k_lo, int k_hi, std::size_t ensemble, std::uint64_t seed);

enum class NormSide { X, Y };

struct TheoremProbeOptions {
    double s = 0.0;
    double b = 0.45;
    double alpha = 0.55;
    int k_lo = 2;
    int k_hi = 10;
    std::size_t ensemble = 4;  // per class
    std::uint64_t seed = 1;
    NormSide side = NormSide::X;
    /// pass mode requires the theorem window; otherwise classes are diagnostic
    bool exploratory = false;
};

/// Inputs u(tau, xi) = a(tau - xi^5) p(xi) in the interaction classes
/// hlh/hhh/hhl (quadratic) or I..V (cubic). The left norm is bounded below by
/// the pairing with an output bump divided by its dual norm.
ProbeReport probe_theorem_ratio(NonlinearityKind kind, const TheoremProbeOptions& opt);

/// ||e^{t d^5} phi||_{L^6_{t,x}} / (2^{-k/2} ||phi||_2) for bumps phi in shell k.
ProbeReport probe_strichartz(int k_lo, int k_hi, std::size_t ensemble, std::uint64_t seed);

/// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace kawahara

#include "kawahara/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kawahara;

namespace {

// DFT by definition, same normalization as forward_transform.
std::vector<cplx> dft(const Field1D& f)
{
    const auto& g = f.grid;
    std::vector<cplx> out(g.n);
    for (int m = 0; m < g.n; ++m) {
        cplx s = 0;
        for (int i = 0; i < g.n; ++i) s += f.values[i] * std::exp(-I * g.wavenumber(m) * g.point(i));
        out[m] = g.dx() * s;
    }
    return out;
}

Field1D random_field(const Grid1D& g, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N;
    auto f = Field1D::zeros(g);
    for (auto& v : f.values) v = {N(rng), N(rng)};
    return f;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

}  // namespace

TEST_SUITE("spectral")
{
    TEST_CASE("constant field puts mass L at the zero mode")
    {
        auto g = Grid1D::make(32, 10.0, -3.0);
        auto f = Field1D::sample(g, [](double) { return 1.0; });
        auto h = forward_transform(f);
        CHECK(h.domain == Domain::frequency);
        CHECK(std::abs(h.values[0] - 10.0) < 1e-12);
        for (int m = 1; m < g.n; ++m) CHECK(std::abs(h.values[m]) < 1e-12);
    }

    TEST_CASE("grid mode lands in one bin")
    {
        auto g = Grid1D::make(32, 2 * pi);
        double xi = g.wavenumber(5);
        auto h = forward_transform(Field1D::sample(g, [&](double x) { return std::exp(I * xi * x); }));
        for (int m = 0; m < g.n; ++m) CHECK(std::abs(h.values[m]) == doctest::Approx(m == 5 ? 2 * pi : 0.0).epsilon(1e-12));
    }

    TEST_CASE("forward transform matches the DFT sum, Plancherel, round trip")
    {
        auto g = Grid1D::make(16, 7.0, -2.0);
        auto f = random_field(g, 3);
        auto h = forward_transform(f);
        CHECK(max_diff(h.values, dft(f)) < 1e-12);
        double a = 0, b = 0;
        for (auto v : f.values) a += std::norm(v) * g.dx();
        for (auto v : h.values) b += std::norm(v) / g.L;
        CHECK(std::abs(a - b) / a < 1e-12);
        CHECK(max_diff(inverse_transform(h).values, f.values) < 1e-12);
    }

    TEST_CASE("inverse of zero and of the DC bin")
    {
        auto g = Grid1D::make(16, 4.0);
        auto z = Field1D::zeros(g, Domain::frequency);
        for (auto v : inverse_transform(z).values) CHECK(std::abs(v) == 0.0);
        z.values[0] = 4.0;
        for (auto v : inverse_transform(z).values) CHECK(std::abs(v - 1.0) < 1e-14);
    }

    TEST_CASE("Littlewood-Paley projections")
    {
        auto g = Grid1D::make(64, 2 * pi);  // integer wavenumbers
        const int k = 3;
        auto mode = Field1D::sample(g, [](double x) { return std::exp(I * 8.0 * x); });
        CHECK(max_diff(lp_project(mode, k).values, mode.values) < 1e-12);
        for (auto v : lp_project(mode, k + 3).values) CHECK(std::abs(v) < 1e-12);

        // low band: |xi| <= 1 is fixed by P_0
        auto low = Field1D::sample(g, [](double x) { return 1.0 + 0.3 * std::cos(x) - 0.2 * std::sin(x); });
        CHECK(max_diff(lp_project(low, 0).values, low.values) < 1e-12);

        // telescoping sum over k <= K on a band-limited field
        const int K = 4;
        auto fh = Field1D::zeros(g, Domain::frequency);
        std::mt19937_64 rng(5);
        std::normal_distribution<double> N;
        for (int m = 0; m < g.n; ++m)
            if (std::abs(g.wavenumber(m)) <= 16) fh.values[m] = {N(rng), N(rng)};
        auto f = inverse_transform(fh);
        auto sum = Field1D::zeros(g);
        for (int kk = 0; kk <= K; ++kk) {
            auto p = lp_project(f, kk);
            for (int i = 0; i < g.n; ++i) sum.values[i] += p.values[i];
        }
        CHECK(max_diff(sum.values, f.values) < 1e-12);
    }

    TEST_CASE("modulation projections")
    {
        SpaceTimeGrid g{Grid1D::make(4096, 2 * pi), Grid1D::make(8, 2 * pi)};
        auto c = Field2D::zeros(g);
        for (auto& v : c.values) v = 1.0;
        CHECK(max_diff(modulation_project(c, 0).values, c.values) < 1e-12);

        auto w = Field2D::zeros(g);
        for (int it = 0; it < g.nt(); ++it)
            for (int ix = 0; ix < g.nx(); ++ix) w.at(it, ix) = std::exp(I * 1024.0 * g.time.point(it));
        CHECK(max_diff(modulation_project(w, 10).values, w.values) < 1e-9);
        double mx = 0;
        for (auto v : modulation_project(w, 3).values) mx = std::max(mx, std::abs(v));
        CHECK(mx < 1e-12);

        SpaceTimeGrid gs{Grid1D::make(32, 3.0), Grid1D::make(16, 5.0)};
        auto r = Field2D::zeros(gs);
        std::mt19937_64 rng(9);
        std::normal_distribution<double> N;
        for (auto& v : r.values) v = {N(rng), N(rng)};
        auto sum = Field2D::zeros(gs);
        for (int j = 0; j <= max_modulation_index(gs); ++j) {
            auto p = modulation_project(r, j);
            for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += p.values[i];
        }
        CHECK(max_diff(sum.values, r.values) < 1e-12);
    }

    TEST_CASE("projections commute")
    {
        SpaceTimeGrid g{Grid1D::make(32, 3.0), Grid1D::make(32, 6.0)};
        auto r = Field2D::zeros(g);
        std::mt19937_64 rng(2);
        std::normal_distribution<double> N;
        for (auto& v : r.values) v = {N(rng), N(rng)};
        auto a = modulation_project(lp_project(r, 2), 4);
        auto b = lp_project(modulation_project(r, 4), 2);
        CHECK(max_diff(a.values, b.values) < 1e-12);
    }
}

#include "kawahara/nonlinearity.hpp"
#include "kawahara/norms.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kawahara;

TEST_SUITE("nonlinearity")
{
    TEST_CASE("F of zero")
    {
        auto g = Grid1D::make(64, 2 * pi);
        for (auto k : {NonlinearityKind::cubic, NonlinearityKind::quadratic_nonlocal})
            for (auto v : apply_F(Field1D::zeros(g), k).values) CHECK(std::abs(v) == 0.0);
    }

    TEST_CASE("cubic of a cosine lives on xi0 and 3 xi0")
    {
        auto g = Grid1D::make(64, 2 * pi);
        auto u = Field1D::sample(g, [](double x) { return std::cos(2 * x); });
        auto h = forward_transform(apply_F(u, NonlinearityKind::cubic));
        for (int m = 0; m < g.n; ++m) {
            double xi = std::abs(g.wavenumber(m));
            if (xi != 2 && xi != 6) CHECK(std::abs(h.values[m]) < 1e-12);
        }
        // d_x cos^3 = -(3/4) sin x * ... : compare pointwise
        auto f = apply_F(u, NonlinearityKind::cubic);
        for (int i = 0; i < g.n; i += 5) {
            double x = g.point(i);
            CHECK(f.values[i].real() == doctest::Approx(-6 * std::cos(2 * x) * std::cos(2 * x) * std::sin(2 * x)).epsilon(1e-10));
        }
    }

    TEST_CASE("quadratic nonlocal term has zero mean")
    {
        auto g = Grid1D::make(128, 40.0, -20.0);
        auto u = Field1D::sample(g, [](double x) { return std::exp(-x * x); });
        auto f = apply_F(u, NonlinearityKind::quadratic_nonlocal);
        cplx s = 0;
        for (auto v : f.values) s += v;
        CHECK(std::abs(s) * g.dx() < 1e-12);
    }

    TEST_CASE("resonance functions")
    {
        CHECK(resonance_H(1, 1) == doctest::Approx(30));
        CHECK(resonance_H(2, 1) == doctest::Approx(210));
        CHECK(resonance_H(1.7, -1.7) == 0.0);
        CHECK(resonance_G(1, 1, 1) == doctest::Approx(240));
        CHECK(resonance_G(1, -1, 0.3) == 0.0);
        CHECK(resonance_G(2, 1, -1) == 0.0);
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> U(-3, 3);
        for (int i = 0; i < 100; ++i) {
            double a = U(rng), b = U(rng), c = U(rng);
            double ref = std::pow(a + b + c, 5) - std::pow(a, 5) - std::pow(b, 5) - std::pow(c, 5);
            CHECK(std::abs(resonance_G(a, b, c) - ref) < 1e-9 * (1 + std::abs(ref)));
            CHECK(std::abs(resonance_G_expanded(a, b, c) - ref) < 1e-9 * (1 + std::abs(ref)));
            double r2 = std::pow(a + b, 5) - std::pow(a, 5) - std::pow(b, 5);
            CHECK(std::abs(resonance_H(a, b) - r2) < 1e-9 * (1 + std::abs(r2)));
        }
    }

    TEST_CASE("scaling map")
    {
        auto g = Grid1D::make(32, 8.0, -4.0);
        auto u = Field1D::sample(g, [](double x) { return std::exp(-x * x); });
        auto same = scaling_map(u, 1.0);
        CHECK(same.grid == g);
        for (int i = 0; i < g.n; ++i) CHECK(same.values[i] == u.values[i]);

        // homogeneous L2 norm scales like lam^{3/2}
        auto gm = Grid1D::make(64, 2 * pi * 8);
        auto mode = Field1D::sample(gm, [](double x) { return std::exp(-0.1 * x * x) * std::exp(I * x); });
        auto s = scaling_map(mode, 2.0);
        CHECK(hs_norm(s, 0.0) == doctest::Approx(std::pow(2.0, 1.5) * hs_norm(mode, 0.0)).epsilon(1e-12));
    }
}

#include "kawahara/norms.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kawahara;

namespace {

Field2D mode(const SpaceTimeGrid& g, double tau, double xi, double A)
{
    auto f = Field2D::zeros(g);
    for (int it = 0; it < g.nt(); ++it)
        for (int ix = 0; ix < g.nx(); ++ix)
            f.at(it, ix) = A * std::exp(I * (tau * g.time.point(it) + xi * g.space.point(ix)));
    return f;
}

}  // namespace

TEST_SUITE("norms")
{
    const SpaceTimeGrid g{Grid1D::make(16, 2 * pi), Grid1D::make(16, 2 * pi)};
    const double meas = 2 * pi;  // sqrt(T L)

    TEST_CASE("single mode weights")
    {
        double A = 1.7, s = 0.6, b = 0.4;
        auto f = mode(g, 3.0, 1.0, A);
        CHECK(xsb_norm(f, s, b) == doctest::Approx(A * std::pow(jb(1.0), s) * std::pow(jb(2.0), b) * meas).epsilon(1e-12));
        CHECK(ysb_norm(f, s, b) == doctest::Approx(A * std::pow(jb(3.0), s / 5) * std::pow(jb(2.0), b) * meas).epsilon(1e-12));
        CHECK(xsb_norm(f, 0, 0) == doctest::Approx(A * meas).epsilon(1e-12));
    }

    TEST_CASE("D^alpha sees only low frequencies")
    {
        CHECK(dalpha_norm(mode(g, 3.0, 2.0, 1.0), 0.55) < 1e-12);
        CHECK(dalpha_norm(mode(g, 3.0, 0.0, 1.0), 0.55) == doctest::Approx(std::pow(jb(3.0), 0.55) * meas).epsilon(1e-12));
        auto f = mode(g, 3.0, 0.0, 1.0);
        CHECK(xsb_dalpha_norm(f, 0, 0.4, 0.55) == doctest::Approx(std::max(xsb_norm(f, 0, 0.4), dalpha_norm(f, 0.55))));
    }

    TEST_CASE("dyadic form is comparable")
    {
        SpaceTimeGrid gg{Grid1D::make(32, 4.0), Grid1D::make(64, 20.0)};
        std::mt19937_64 rng(11);
        std::normal_distribution<double> N;
        auto f = Field2D::zeros(gg);
        for (auto& v : f.values) v = {N(rng), N(rng)};
        double r = std::sqrt(xsb_dyadic_sq(f, 0.5, 0.4)) / xsb_norm(f, 0.5, 0.4);
        CHECK(r > 0.25);
        CHECK(r < 4.0);
    }

    TEST_CASE("Sobolev norms and Z")
    {
        auto gx = Grid1D::make(32, 2 * pi);
        auto m = Field1D::sample(gx, [](double x) { return std::exp(I * 3.0 * x); });
        CHECK(hs_norm(m, 0.7) == doctest::Approx(std::pow(jb(3.0), 0.7) * std::sqrt(2 * pi)).epsilon(1e-12));
        auto z = z_norm(Field2D::zeros(g), 0.0, 0.4, 0.55);
        CHECK(z.total == 0.0);
        // weights grow with s
        auto f = mode(g, 3.0, 2.0, 1.0);
        CHECK(z_norm(f, 0.3, 0.4, 0.55).total > z_norm(f, 0.0, 0.4, 0.55).total);
    }

    TEST_CASE("zero extension stays bounded at s = 0.3")
    {
        auto gx = Grid1D::make(512, 64.0, -32.0);
        double worst = 0;
        for (double c : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
            auto f = Field1D::sample(gx, [&](double x) { return std::exp(-(x - c) * (x - c)); });
            worst = std::max(worst, hs0_halfline_norm(f, 0.3) / hs_norm(f, 0.3));
        }
        CHECK(worst < 3.0);
    }
}

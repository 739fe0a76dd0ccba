#include "kawahara/errors.hpp"
#include "kawahara/forcing.hpp"
#include "kawahara/propagator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kawahara;

namespace {

double bump(double t, double a, double b)
{
    if (t <= a || t >= b) return 0.0;
    double u = (t - a) / (b - a);
    return std::exp(-1.0 / (u * (1.0 - u)) + 4.0);
}

}  // namespace

TEST_SUITE("forcing")
{
    TEST_CASE("trace constants")
    {
        double M = 1.0 / (closed_form_at_zero(0) * std::tgamma(0.8));
        CHECK(trace_constant(0.0, Side::plus) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(trace_constant(-0.5, Side::plus) ==
              doctest::Approx(M * std::cos(-pi / 10) / (5 * std::sin(3 * pi / 10))).epsilon(1e-12));
        CHECK(trace_constant(-0.5, Side::minus) ==
              doctest::Approx(M * std::cos(4 * pi / 10) / (5 * std::sin(3 * pi / 10))).epsilon(1e-12));
    }

    TEST_CASE("L0 of zero and its trace on a bump")
    {
        SpaceTimeGrid g{Grid1D::make(128, 0.6), Grid1D::make(512, 128.0, -96.0)};
        auto z = HalfLineSignal::zeros(128, g.time.dx());
        for (auto v : L0(z, g).values) CHECK(std::abs(v) == 0.0);

        auto f = HalfLineSignal::sample(128, g.time.dx(), [](double t) { return bump(t, 0.05, 0.45); });
        auto u = L0(f, g);
        auto tr = trace_at(u, 0.0, 0);
        double e = 0;
        for (int i = 0; i < 128; ++i) e = std::max(e, std::abs(tr[i] - f.values[i]));
        CHECK(e <= 1e-3);
    }

    TEST_CASE("boundary matrix")
    {
        auto c = build_matrix(-0.4, 0.2, 0.0);
        CHECK(c.a1 == trace_constant(-0.4, Side::plus));
        CHECK(c.a2 == trace_constant(0.2, Side::plus));
        CHECK(c.b1 == -trace_constant(-1.4, Side::plus));
        CHECK(std::abs(c.det()) > 1e-3);
        CHECK_THROWS_AS(build_matrix(0.1, 0.1, 0.0), ConfigurationError);
        CHECK_THROWS_AS(build_matrix(-2.5, 0.1, 0.0), ConfigurationError);
    }

    TEST_CASE("solving for the boundary densities")
    {
        auto c = build_matrix(-0.4, 0.2, 0.0);
        const int n = 64;
        const double dt = 0.01;
        auto f = HalfLineSignal::sample(n, dt, [](double t) { return bump(t, 0.02, 0.5); });
        auto g = HalfLineSignal::sample(n, dt, [](double t) { return std::sin(9 * t) * bump(t, 0.05, 0.6); });
        auto z = HalfLineSignal::zeros(n, dt);

        auto same = solve_gamma(f, g, f, g, c);
        for (int i = 0; i < n; ++i) {
            CHECK(same.gamma1.values[i] == 0.0);
            CHECK(same.gamma2.values[i] == 0.0);
        }

        // rhs equal to the first column of A gives (1, 0): g chosen so that I_{1/5} g = b1
        auto one = HalfLineSignal::sample(n, dt, [&](double t) { return t > 0 ? c.a1 : 0.0; });
        auto gb = HalfLineSignal::sample(n, dt, [&](double t) {
            return t > 0 ? c.b1 * std::pow(t, -0.2) / std::tgamma(0.8) : 0.0;
        });
        auto col = solve_gamma(one, gb, z, z, c);
        for (int i = n / 2; i < n; ++i) {
            CHECK(col.gamma1.values[i] == doctest::Approx(1.0).epsilon(0.05));
            CHECK(std::abs(col.gamma2.values[i]) < 0.05);
        }

        // direct 2x2 inverse
        auto r = solve_gamma(f, g, z, z, c);
        auto r2 = riemann_liouville(g, 0.2);
        for (int i = 1; i < n; ++i) {
            double x = f.values[i], y = r2.values[i];
            double g1 = (c.b2 * x - c.a2 * y) / c.det(), g2 = (c.a1 * y - c.b1 * x) / c.det();
            CHECK(std::abs(r.gamma1.values[i] - g1) < 1e-12);
            CHECK(std::abs(r.gamma2.values[i] - g2) < 1e-12);
        }
        CHECK(r.residual < 1e-12);
    }

    TEST_CASE("multiplier of the lambda operators")
    {
        // integer order: exact (-i xi)^k
        CHECK(std::abs(lambda_multiplier(-1.0, Side::plus, 2.0) - cplx(0, -2.0)) < 1e-12);
        CHECK(std::abs(lambda_multiplier(-2.0, Side::plus, 2.0) - cplx(-4.0, 0)) < 1e-12);
    }
}

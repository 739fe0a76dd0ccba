#include "kawahara/fractional.hpp"

#include <doctest.h>

#include <cmath>

using namespace kawahara;

namespace {

double bump(double t, double a, double b)
{
    if (t <= a || t >= b) return 0.0;
    double u = (t - a) / (b - a);
    return std::exp(-1.0 / (u * (1.0 - u)) + 4.0);
}

double rel_err(const HalfLineSignal& a, const HalfLineSignal& b, int from = 0, int to = -1)
{
    if (to < 0) to = a.size();
    double n = 0, d = 0;
    for (int i = from; i < to; ++i) {
        n += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
        d += b.values[i] * b.values[i];
    }
    return std::sqrt(n / d);
}

}  // namespace

TEST_SUITE("fractional")
{
    TEST_CASE("integer order one is the running integral")
    {
        auto f = HalfLineSignal::sample(201, 0.01, [](double t) { return t; });
        auto g = riemann_liouville(f, 1.0);
        for (int i = 0; i < g.size(); ++i) CHECK(g.values[i] == doctest::Approx(0.5 * f.t(i) * f.t(i)).epsilon(1e-12));
    }

    TEST_CASE("powers of t map to powers of t")
    {
        // I_a t = t^{1+a} / Gamma(2+a); exact for piecewise linear input
        auto f = HalfLineSignal::sample(101, 0.02, [](double t) { return t; });
        for (double a : {0.2, 0.5, 0.8}) {
            auto g = riemann_liouville(f, a);
            for (int i = 1; i < g.size(); i += 7)
                CHECK(g.values[i] == doctest::Approx(std::pow(f.t(i), 1 + a) / std::tgamma(2 + a)).epsilon(1e-10));
        }
    }

    TEST_CASE("zero maps to zero")
    {
        auto z = HalfLineSignal::zeros(64, 0.1);
        for (double v : riemann_liouville(z, 0.3).values) CHECK(v == 0.0);
        for (double v : riemann_liouville_neg(z, -0.5).values) CHECK(v == 0.0);
    }

    TEST_CASE("negative orders")
    {
        const int n = 1024;
        const double dt = 1.0 / 512;
        auto f = HalfLineSignal::sample(n, dt, [](double t) { return bump(t, 0.1, 1.2); });
        auto df = HalfLineSignal::sample(n, dt, [](double t) {
            if (t <= 0.1 || t >= 1.2) return 0.0;
            double u = (t - 0.1) / 1.1;
            return bump(t, 0.1, 1.2) * (1 - 2 * u) / (u * u * (1 - u) * (1 - u)) / 1.1;
        });
        CHECK(rel_err(riemann_liouville_neg(f, -1.0), df) < 1e-6);
        CHECK(rel_err(fractional_integral(fractional_integral(f, 0.8), -0.8), f) < 1e-4);
    }

    TEST_CASE("semigroup")
    {
        auto f = HalfLineSignal::sample(1024, 1.0 / 512, [](double t) { return bump(t, 0.1, 1.2); });
        for (double a : {0.2, 0.5, 1.0})
            for (double b : {0.2, 0.5, 1.0}) {
                auto lhs = riemann_liouville(riemann_liouville(f, b), a);
                CHECK(rel_err(lhs, riemann_liouville(f, a + b)) <= 1e-4);
            }
    }

    TEST_CASE("Fourier transform of t_+^{a-1}/Gamma(a)")
    {
        CHECK(std::abs(halfline_power_transform(1.0, 2.0) - cplx(0, -0.5)) < 1e-14);
        CHECK(std::abs(halfline_power_transform(0.5, 1.0) - std::exp(-I * pi / 4.0)) < 1e-14);
    }

    TEST_CASE("finite-difference weights")
    {
        auto w = fd_weights(0.0, {-1.0, 0.0, 1.0}, 2);
        CHECK(w[0] == doctest::Approx(1.0));
        CHECK(w[1] == doctest::Approx(-2.0));
        CHECK(w[2] == doctest::Approx(1.0));
    }
}

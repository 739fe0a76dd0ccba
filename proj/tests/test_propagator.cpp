#include "kawahara/propagator.hpp"

#include <doctest.h>

#include <cmath>

using namespace kawahara;

TEST_SUITE("propagator")
{
    TEST_CASE("identity at t = 0 and eigenmodes")
    {
        auto g = Grid1D::make(64, 2 * pi, -pi);
        auto phi = Field1D::sample(g, [](double x) { return std::exp(-x * x); });
        auto u = propagate(phi, 0.0);
        for (int i = 0; i < g.n; ++i) CHECK(std::abs(u.values[i] - phi.values[i]) < 1e-14);

        double xi = 3.0, t = 0.37;
        auto m = Field1D::sample(g, [&](double x) { return std::exp(I * xi * x); });
        auto v = propagate(m, t);
        for (int i = 0; i < g.n; ++i)
            CHECK(std::abs(v.values[i] - std::exp(I * t * std::pow(xi, 5)) * m.values[i]) < 1e-11);
    }

    TEST_CASE("unitary on a Gaussian")
    {
        auto g = Grid1D::make(64, 40.0, -20.0);
        auto phi = Field1D::sample(g, [](double x) { return std::exp(-x * x / 4); });
        auto u = propagate(phi, 0.01);
        double a = 0, b = 0;
        for (int i = 0; i < g.n; ++i) {
            a += std::norm(phi.values[i]);
            b += std::norm(u.values[i]);
        }
        CHECK(std::abs(std::sqrt(a) - std::sqrt(b)) / std::sqrt(a) < 1e-12);
    }

    TEST_CASE("Duhamel integral")
    {
        SpaceTimeGrid g{Grid1D::make(64, 1.0), Grid1D::make(16, 2 * pi)};
        auto z = Field2D::zeros(g);
        for (auto v : duhamel(z).values) CHECK(std::abs(v) == 0.0);

        // constant in t at xi0: (e^{i t xi0^5} - 1) / (i xi0^5)
        double xi = 2.0, w5 = std::pow(xi, 5);
        auto w = Field2D::zeros(g);
        for (int it = 0; it < g.nt(); ++it)
            for (int ix = 0; ix < g.nx(); ++ix) w.at(it, ix) = std::exp(I * xi * g.space.point(ix));
        auto d = duhamel(w);
        double e = 0;
        for (int it = 0; it < g.nt(); ++it) {
            double t = g.time.point(it);
            cplx f = (std::exp(I * t * w5) - 1.0) / (I * w5);
            for (int ix = 0; ix < g.nx(); ++ix)
                e = std::max(e, std::abs(d.at(it, ix) - f * std::exp(I * xi * g.space.point(ix))));
        }
        CHECK(e < 1e-12);

        // scalar recursion against a fine trapezoid sum for h(t) = sin(3t)
        const int n = 65;
        const double dt = 1.0 / 64, om = 5.0;
        std::vector<cplx> h(n);
        for (int i = 0; i < n; ++i) h[i] = std::sin(3.0 * i * dt);
        auto v = duhamel_scalar(h, dt, om);
        const int M = 200000;
        double T = (n - 1) * dt, hh = T / M;
        cplx ref = 0;
        for (int k = 0; k <= M; ++k) {
            double s = k * hh;
            cplx term = std::exp(I * om * (T - s)) * std::sin(3.0 * s);
            ref += (k == 0 || k == M ? 0.5 : 1.0) * term;
        }
        ref *= hh;
        // piecewise linear interpolation of h: O(dt^2)
        CHECK(std::abs(v.back() - ref) < 1e-4);
    }

    TEST_CASE("time cutoff")
    {
        Cutoff c(0.5);
        CHECK(c(0.0) == 1.0);
        CHECK(c(0.5) == 1.0);
        CHECK(c(1.0) == 0.0);
        CHECK(Cutoff::psi(1.5) == doctest::Approx(0.5));
        auto s = HalfLineSignal::sample(64, 1.0 / 64, [](double) { return 1.0; });
        auto cs = apply_cutoff(s, 0.25);
        for (int i = 0; i < s.size(); ++i) {
            CHECK(cs.values[i] == doctest::Approx(c.psi(s.t(i) / 0.25)));
            CHECK(std::abs(cs.values[i]) <= 1.0);
        }
        auto in = HalfLineSignal::sample(64, 1.0 / 64, [](double t) { return t < 0.2 ? std::sin(t) : 0.0; });
        auto ci = apply_cutoff(in, 0.25);
        for (int i = 0; i < in.size(); ++i) CHECK(ci.values[i] == in.values[i]);
    }

    TEST_CASE("energy identity degenerate cases")
    {
        SpaceTimeGrid g{Grid1D::make(64, 0.1), Grid1D::make(256, 64.0, -32.0)};
        auto r = energy_identity_report(Field2D::zeros(g), 0.05);
        CHECK(r.lhs == 0.0);
        CHECK(r.rhs == 0.0);

        auto phi = Field1D::sample(g.space, [](double x) { return std::exp(-(x - 12) * (x - 12) / 8); });
        auto u = propagate_field(phi, g);
        auto e = energy_identity_report(u, 0.05);
        double m = 0;
        for (int i = 0; i < g.nx(); ++i)
            if (g.space.point(i) >= 0) m += std::norm(phi.values[i]) * g.space.dx();
        CHECK(e.lhs == doctest::Approx(m).epsilon(1e-4));
        CHECK(std::abs(e.gap) <= 1e-4 * m);
    }

    TEST_CASE("periodic integral and traces")
    {
        auto g = Grid1D::make(32, 2 * pi);
        auto f = Field1D::sample(g, [](double x) { return std::cos(x); });
        CHECK(periodic_integral(f, 0.0, pi / 2) == doctest::Approx(1.0).epsilon(1e-12));
        SpaceTimeGrid sg{Grid1D::make(8, 1.0), g};
        auto u = Field2D::zeros(sg);
        for (int it = 0; it < 8; ++it) u.set_slice(it, f);
        auto tr = trace_at(u, 0.3, 1);
        CHECK(tr[2].real() == doctest::Approx(-std::sin(0.3)).epsilon(1e-12));
    }
}

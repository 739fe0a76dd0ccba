#include "kawahara/errors.hpp"
#include "kawahara/ibvp.hpp"

#include <doctest.h>

#include <cmath>

using namespace kawahara;

TEST_SUITE("ibvp")
{
    TEST_CASE("zero extension")
    {
        auto g = Grid1D::make(256, 64.0, -48.0);
        auto inside = Field1D::sample(g, [](double x) { return std::exp(-(x - 5) * (x - 5)) * (x > 1 ? 1.0 : 0.0); });
        auto e = extend_initial(inside, 0.0);
        for (int i = 0; i < g.n; ++i) CHECK(e.field.values[i] == inside.values[i]);

        auto touching = Field1D::sample(g, [](double x) { return std::exp(-x * x); });
        auto t = extend_initial(touching, 0.3);
        CHECK(std::isfinite(t.hs_norm));
        CHECK(t.field.values[g.index_of(-1.0)] == 0.0);
        CHECK_THROWS_AS(extend_initial(touching, 0.6), DomainError);
    }

    TEST_CASE("zero data gives the zero solution")
    {
        auto g = Grid1D::make(256, 64.0, -48.0);
        IBVPData d{Field1D::zeros(g), [](double) { return 0.0; }, [](double) { return 0.0; }, NonlinearityKind::cubic};
        SolverOptions opt;
        opt.nt = 64;
        auto [u, rep] = picard_solve(d, opt);
        CHECK(rep.iterations <= 2);
        for (auto v : u.values) CHECK(std::abs(v) == 0.0);
    }

    TEST_CASE("solver rejects indices outside the window")
    {
        auto g = Grid1D::make(64, 64.0, -48.0);
        IBVPData d{Field1D::zeros(g), [](double) { return 0.0; }, [](double) { return 0.0; }, NonlinearityKind::cubic};
        SolverOptions opt;
        opt.idx.b = 0.6;
        CHECK_THROWS_AS(picard_solve(d, opt), ConfigurationError);
    }

    TEST_CASE("signal interpolation")
    {
        std::vector<double> v;
        for (int i = 0; i < 20; ++i) v.push_back(std::pow(0.1 * i, 3));
        auto s = interpolate_signal(v, 0.1);
        CHECK(s(0.55) == doctest::Approx(std::pow(0.55, 3)).epsilon(1e-10));
        CHECK(s(-1.0) == 0.0);
    }
}

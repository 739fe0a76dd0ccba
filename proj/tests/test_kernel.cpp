#include "kawahara/errors.hpp"
#include "kawahara/kernel.hpp"

#include <doctest.h>

#include <cmath>

using namespace kawahara;

TEST_SUITE("kernel")
{
    TEST_CASE("values at the origin")
    {
        double b0 = std::cos(pi / 10) / (5 * std::sin(pi / 5) * std::tgamma(0.8));
        double b1 = -std::cos(3 * pi / 10) / (5 * std::sin(2 * pi / 5) * std::tgamma(0.6));
        double b3 = std::cos(pi / 10) / (5 * std::sin(pi / 5) * std::tgamma(0.2));
        CHECK(eval_B(0, 0.0).value == doctest::Approx(b0).epsilon(1e-10));
        CHECK(eval_B(1, 0.0).value == doctest::Approx(b1).epsilon(1e-10));
        CHECK(closed_form_at_zero(0) == doctest::Approx(b0).epsilon(1e-14));
        CHECK(closed_form_at_zero(3) == doctest::Approx(b3).epsilon(1e-14));
        CHECK(closed_form_at_zero(0) / closed_form_at_zero(3) ==
              doctest::Approx(std::tgamma(0.2) / std::tgamma(0.8)).epsilon(1e-13));
        for (int n = 0; n <= 3; ++n) CHECK(value_at_zero(n) == doctest::Approx(closed_form_at_zero(n)).epsilon(1e-13));
        CHECK(forcing_constant_M() == doctest::Approx(1.0 / (b0 * std::tgamma(0.8))).epsilon(1e-13));
    }

    TEST_CASE("fast decay on the right, small imaginary residual")
    {
        // reference values from a 30-digit quadrature along the rotated rays
        CHECK(eval_B(0, 20.0).value == doctest::Approx(-1.17862333468147e-8).epsilon(1e-8));
        CHECK(eval_B(0, 6.0).value == doctest::Approx(-4.62708223068675e-3).epsilon(1e-9));
        CHECK(std::abs(eval_B(0, 50.0).value) <= 1e-10);
        for (double x : {-30.0, -3.0, 0.7, 4.0}) CHECK(std::abs(eval_B(0, x).imag_residual) <= 1e-8);
    }

    TEST_CASE("B solves 5 B'''' + x B = 0")
    {
        // differentiating the phase under the integral gives this ODE
        for (double x : {-40.0, -12.5, -2.0, 0.3, 1.5, 6.0}) {
            double lhs = 5 * eval_B(4, x).value, rhs = -x * eval_B(0, x).value;
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        }
    }

    TEST_CASE("far-left values follow the stationary-phase term")
    {
        double X = 400.0;
        double rel = std::abs(eval_B(0, -X).value - B_left_asymptotic(X)) / std::abs(B_left_asymptotic(X) + 1e-300);
        // one-term asymptotics: relative correction O(X^{-5/4})
        CHECK((rel < 0.05 || std::abs(eval_B(0, -X).value - B_left_asymptotic(X)) < 1e-3 * std::pow(X, -0.375)));
    }

    TEST_CASE("table interpolation and range errors")
    {
        auto t = KernelTable::build(0, -8.0, 10.0, 0.05);
        for (double x : {-7.31, -1.1, 0.0, 0.42, 3.3, 9.7}) CHECK(std::abs(t(x) - eval_B(0, x).value) < 1e-8);
        CHECK_THROWS_AS(t(-9.0), TableRangeError);
        CHECK_THROWS_AS(t(11.0), TableRangeError);
    }

    TEST_CASE("half-line integral is 2/5")
    {
        auto r = integral_B_halfline();
        CHECK(std::abs(r.value - 0.4) <= 1e-6);
        CHECK(mellin_closed_form(1.0, Side::plus) == doctest::Approx(0.4).epsilon(1e-12));
        auto t = KernelTable::build(0, 0.0, 40.0, 0.1);
        for (auto& v : t.mutable_values()) v = 0.0;
        CHECK(integral_B_halfline(t).value == doctest::Approx(0.0));
    }

    TEST_CASE("Mellin transforms")
    {
        auto m = mellin_B(0.2, Side::minus);
        CHECK(std::abs(m.difference) <= 1e-4 * std::max(1.0, std::abs(m.closed_form)));
        // removable pole of the raw formula at lambda = 6
        double at6 = mellin_closed_form(6.0, Side::plus);
        CHECK(std::isfinite(at6));
        CHECK(mellin_closed_form_raw(6.0, Side::plus) == doctest::Approx(at6).epsilon(1e-6));
        CHECK(mellin_closed_form(6.0 + 1e-4, Side::plus) == doctest::Approx(at6).epsilon(1e-3));
    }

    TEST_CASE("decay envelopes")
    {
        auto r = decay_envelope_check(0, Direction::right, {0.0, 1.0, 2.0});
        CHECK(r.envelope[0] == doctest::Approx(std::abs(eval_B(0, 0.0).value)));
        std::vector<double> xs;
        for (double x = 10; x <= 1000; x *= 1.5) xs.push_back(x);
        auto l = decay_envelope_check(0, Direction::left, xs);
        CHECK(l.log_slope <= 0.05);
        CHECK(std::isfinite(l.constant));
    }
}

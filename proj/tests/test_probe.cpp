#include "kawahara/errors.hpp"
#include "kawahara/probe.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kawahara;

TEST_SUITE("probe")
{
    TEST_CASE("shells and blocks")
    {
        CHECK(shell_of(5.0) == 2);
        CHECK(interval_in_shell(3, 4.0, 16.0));
        CHECK_FALSE(interval_in_shell(3, 3.0, 16.0));
        CHECK(modulation_block_of(0.5) == 0);
        CHECK(interval_in_modulation_block(0, -2.0, 2.0));
        CHECK_THROWS_AS(DyadicBump::make(3, 0, GaussProfile{0.0, 0.1}, GaussProfile{3.0, 1.0}), DomainError);
    }

    TEST_CASE("functionals vanish on zero input")
    {
        std::mt19937_64 rng(1);
        auto f = DyadicBump::random(1, 1, rng), g = DyadicBump::random(1, 1, rng), h = DyadicBump::random(2, 1, rng);
        auto z = f;
        z.amp = 0.0;
        CHECK(J2_semi(z, g, h) == 0.0);
        CHECK(J2_direct(f, z, h) == 0.0);
        CHECK(J3_semi(f, g, z, h) == 0.0);
    }

    TEST_CASE("bound right-hand sides")
    {
        CHECK(block_bound_rhs(BlockVariant::L2c, {0, 3, 4}, {0, 1, 2}) == doctest::Approx(1.0));
        CHECK(block_bound_rhs(BlockVariant::L2a, {8, 7, 6}, {2, 4, 9}) == doctest::Approx(std::exp2(-4)));
        CHECK(block_bound_rhs(BlockVariant::L3a, {0, 0, 0, 0}, {0, 0, 0, 0}) == doctest::Approx(1.0));
        CHECK_THROWS_AS(block_bound_rhs(BlockVariant::L2a, {10, 3, 3}, {1, 1, 1}), DomainError);
        CHECK_THROWS_AS(block_bound_rhs(BlockVariant::L2b, {10, 9, 8}, {1, 1, 1}), DomainError);
        CHECK_THROWS_AS(block_bound_rhs(BlockVariant::L3b1, {12, 11, 9, 0}, {1, 1, 1, 1}), DomainError);
        CHECK_THROWS_AS(block_bound_rhs(BlockVariant::L2c, {1, 2}, {1, 2}), DomainError);
        CHECK_THROWS_AS(parse_block_variant("L9"), ConfigurationError);
        CHECK(to_string(parse_block_variant("L3b2")) == "L3b2");
    }

    TEST_CASE("support rule")
    {
        auto bad = support_property_check({{10, 3}, {3, 3}, {3, 3}}, 1, 4);
        CHECK_FALSE(bad.compliant);
        CHECK(bad.max_normalized < 1e-12);
        CHECK_FALSE(bad.diagnostic.empty());
    }

    TEST_CASE("block probe contract")
    {
        CHECK_THROWS_AS(probe_block_estimate(BlockVariant::L2a, 2, 4, 0, 1), DomainError);
        auto a = probe_block_estimate(BlockVariant::L2c, 2, 4, 3, 7);
        auto b = probe_block_estimate(BlockVariant::L2c, 2, 4, 3, 7);
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].ratio == b.samples[i].ratio);
        CHECK(a.max_ratio > 0.0);
        CHECK(std::isfinite(a.slope));
    }

    TEST_CASE("slope fit")
    {
        CHECK(fit_slope({1, 2, 3}, {2, 4, 6}) == doctest::Approx(2.0));
        CHECK_THROWS_AS(fit_slope({1}, {1}), DomainError);
    }
}

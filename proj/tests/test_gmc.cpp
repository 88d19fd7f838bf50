#include <doctest.h>

#include <cmath>

#include "rmhd/gmc.hpp"
#include "test_helpers.hpp"

using namespace rmhd;
using rmhd_test::load_fixture;

TEST_CASE("commuting gamma fields on constructed double waves") {
    for (const char* name : {"aa", "ff_counter", "fe1_counter", "ee_aligned"}) {
        const auto sol = build_solution(load_fixture(name).at("solution"));
        GmcWindow w;
        w.s_lo = -0.5;
        w.s_hi = 0.5;
        w.r_lo = -0.5;
        w.r_hi = 0.5;
        INFO("fixture ", name);
        CHECK(gmc_commutator_residual(*sol, w) <= 1e-6);
    }
}

TEST_CASE("span condition holds for the aligned families") {
    GmcWindow w;
    w.s_lo = -0.5;
    w.s_hi = 0.5;
    w.r_lo = -0.5;
    w.r_hi = 0.5;
    for (const char* name : {"aa", "fe1_counter", "ff_counter"}) {
        const auto sol = build_solution(load_fixture(name).at("solution"));
        INFO("fixture ", name);
        CHECK(gmc_span_residual(*sol, w) <= 1e-6);
    }
}

TEST_CASE("planar fast pair lies outside the span condition") {
    // the wave-speed gradient of one planar fast wave points along the time
    // axis alone, which span{lambda^1, lambda^2} cannot reach
    const auto sol = build_solution(load_fixture("ff_planar").at("solution"));
    GmcWindow w;
    w.s_lo = -0.5;
    w.s_hi = 0.5;
    w.r_lo = -0.5;
    w.r_hi = 0.5;
    CHECK(gmc_span_residual(*sol, w) > 1e-2);
    CHECK(gmc_commutator_residual(*sol, w) <= 1e-6);
}

TEST_CASE("rank-1 degenerate double wave commutes trivially") {
    const auto sol = build_solution(load_fixture("ae1").at("solution"));
    GmcWindow w;
    CHECK(gmc_commutator_residual(*sol, w) <= 1e-8);
}

TEST_CASE("synthetic non-commuting fields are caught") {
    GmcWindow w;
    GammaFn g1 = [](double s, double r) {
        std::array<double, 8> g{};
        g[0] = std::sin(s * r);
        g[2] = 1.0;
        return g;
    };
    GammaFn g2 = [](double s, double r) {
        std::array<double, 8> g{};
        g[1] = std::cos(s + 2.0 * r);
        g[3] = s;
        return g;
    };
    CHECK(gmc_commutator_residual(g1, g2, w) > 1e-2);

    LambdaFn l1 = [](double, double r) { return Vec4{std::sin(r), {1.0, 0.3 * r, 0.0}}; };
    LambdaFn l2 = [](double s, double) { return Vec4{0.2, {0.0, 1.0, 0.1 * s}}; };
    CHECK(gmc_span_residual(l1, l2, w) > 1e-2);
}

TEST_CASE("constant wave vectors give zero span residual") {
    LambdaFn l1 = [](double, double) { return Vec4{0.3, {1.0, 0.0, 0.0}}; };
    LambdaFn l2 = [](double, double) { return Vec4{-0.1, {0.0, 1.0, 0.0}}; };
    CHECK(gmc_span_residual(l1, l2, GmcWindow{}) == 0.0);
}

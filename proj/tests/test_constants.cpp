#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heis/constants.hpp"
#include "oracles.hpp"

using namespace heis;
using std::numbers::pi;

static double cm_equation(int m, double c) {
    return std::pow(c, 4.0 / 3.0) * pi * m * std::sqrt(c * c + 16.0) *
           std::pow(1.0 + c / k_case_const, 2.0 / 3.0) - 16.0 / 3.0;
}

TEST_CASE("face count equation") {
    CmSolution s1 = solve_cm(1);
    CHECK(s1.c_m == doctest::Approx(0.52).epsilon(0.01));
    CHECK(std::abs(s1.residual) <= 1e-12);
    CHECK(s1.unique_bracket);
    CHECK_THROWS_AS(solve_cm(0), std::domain_error);

    for (int m = 1; m <= 100; ++m) {
        CmSolution s = solve_cm(m);
        CHECK(std::abs(s.residual) <= 1e-12);
        CHECK(std::abs(cm_equation(m, s.c_m)) <= 1e-12);
        CHECK(cm_upper_bound_check(s));
    }

    // monotone left side: finite differences stay positive
    for (double c : {0.01, 0.1, 0.5, 1.0, 3.0}) {
        CHECK(cm_equation(3, c * 1.001) > cm_equation(3, c));
    }
    // c_m decreases with the face count
    double prev = solve_cm(1).c_m;
    for (int m = 2; m <= 100; ++m) {
        double cur = solve_cm(m).c_m;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("polytope hardy constant") {
    HardyConstantReport r1 = hardy_constant_polytope(1);
    CHECK(r1.constant == doctest::Approx(1.45e-4).epsilon(0.05));
    CHECK(r1.quotient_bound == r1.constant);
    CHECK(r1.constant > 0.0);
    CHECK(r1.constant < 0.2);

    double prev = r1.constant;
    for (int m = 2; m <= 100; ++m) {
        double cur = hardy_constant_polytope(m).constant;
        CHECK(cur < prev);
        CHECK(cur > 0.0);
        prev = cur;
    }
}

TEST_CASE("assumption hardy constant") {
    HardyConstantReport r = hardy_constant_assumption(k_case_const);
    CHECK(r.constant == doctest::Approx(std::pow(2.0, -4.0 / 3.0)).epsilon(1e-14));
    CHECK(r.quotient_bound == doctest::Approx(r.constant / 4.0).epsilon(1e-15));
    CHECK(hardy_constant_assumption(1e9).constant == doctest::Approx(1.0).epsilon(1e-6));
    double prev = 0.0;
    for (double a : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
        double cur = hardy_constant_assumption(a).constant;
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK_THROWS_AS(hardy_constant_assumption(0.0), std::domain_error);
}

TEST_CASE("face counting") {
    CHECK(count_nonorthogonal_faces(Polytope::cube(1.0)) == 2);
    CHECK(count_nonorthogonal_faces(test::test_simplex()) == 4);
    Polytope prism = Polytope::prism(6, 0, 0, 1.0, 0.0, 1.0);
    CHECK(count_nonorthogonal_faces(prism) == 2);
}

TEST_CASE("geometric condition sampling") {
    // the cube fails for huge a: points near the vertical axis violate it
    CHECK_FALSE(check_assumption(Polytope::cube(1.0), 1e6, 20000));
    // off-axis box passes for small a
    Polytope off = Polytope::box({2, 2, 0}, {3, 3, 1});
    CHECK(check_assumption(off, 0.5, 20000));
    CHECK_THROWS_AS(check_assumption(off, -1.0), std::domain_error);
}

TEST_CASE("epsilon domain construction") {
    auto [dom1, a1] = construct_epsilon_domain(1.0, 64);
    double a_min = k_case_const / (std::pow(1.5, 1.5) - 1.0);
    CHECK(a_min == doctest::Approx(140.45).epsilon(1e-3));
    CHECK(a1 == doctest::Approx(2.0 * a_min).epsilon(1e-12));
    CHECK(check_assumption(dom1, a1, 50000));
    // quotient bound beats the (2+eps)^-2 target
    CHECK(hardy_constant_assumption(a1).quotient_bound >= 1.0 / 9.0);

    auto [dom2, a2] = construct_epsilon_domain(0.5, 64);
    CHECK(check_assumption(dom2, a2, 50000));
    CHECK(hardy_constant_assumption(a2).quotient_bound >= 1.0 / (2.5 * 2.5));

    // generous target: any modest a works
    auto [dom3, a3] = construct_epsilon_domain(100.0, 16);
    CHECK(a3 > 0.0);
    CHECK(check_assumption(dom3, a3, 20000));
}

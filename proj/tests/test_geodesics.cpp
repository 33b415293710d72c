#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heis/geodesics.hpp"
#include "oracles.hpp"

using namespace heis;
using std::numbers::pi;

static GeodesicParams random_arc(test::DetRng& rng) {
    GeodesicParams g;
    double mag = rng.uniform(-3.0, 1.0);  // |k| from 1e-3 to 10
    g.k = std::pow(10.0, mag) * (rng.unit() < 0.5 ? -1.0 : 1.0);
    g.theta = rng.uniform(0.0, 2.0 * pi);
    g.t = rng.uniform(1e-3, 2.0 * pi / std::abs(g.k));
    return g;
}

TEST_CASE("geodesic endpoints") {
    // k = 0 straight line
    Point p = geodesic_point({0.0, 0.7, 1.3});
    CHECK(p.x1 == doctest::Approx(1.3 * std::sin(0.7)).epsilon(1e-15));
    CHECK(p.x2 == doctest::Approx(1.3 * std::cos(0.7)).epsilon(1e-15));
    CHECK(p.x3 == 0.0);

    Point full = geodesic_point({1.0, 0.0, 2.0 * pi});
    CHECK(std::abs(full.x1) <= 1e-14);
    CHECK(std::abs(full.x2) <= 1e-14);
    CHECK(full.x3 == doctest::Approx(pi).epsilon(1e-14));

    Point half = geodesic_point({1.0, 0.0, pi});
    CHECK(half.x1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(half.x2) <= 1e-14);
    CHECK(half.x3 == doctest::Approx(pi / 2.0).epsilon(1e-14));

    // tiny-curvature series branch agrees with the direct formula
    double k = 2e-5, t = 1.7, th = 0.3;
    Point series = geodesic_point({k, th, t});
    Point direct{(std::cos(th) - std::cos(k * t + th)) / k,
                 (std::sin(k * t + th) - std::sin(th)) / k,
                 (k * t - std::sin(k * t)) / (2.0 * k * k)};
    CHECK(series.x1 == doctest::Approx(direct.x1).epsilon(1e-9));
    CHECK(series.x2 == doctest::Approx(direct.x2).epsilon(1e-9));
    CHECK(series.x3 == doctest::Approx(direct.x3).epsilon(1e-6));
}

TEST_CASE("distance branch values") {
    CHECK(cc_distance_origin({1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cc_distance_origin({0, 0, 1}) == doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-12));
    // equality case of the gauge sandwich on the vertical axis
    double d = cc_distance_origin({0, 0, 1});
    CHECK(kaplan_gauge4({0, 0, 1}) / std::pow(d, 4) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-12));
    CHECK(cc_distance_origin({2, 0, pi / 2}) == doctest::Approx(pi).epsilon(1e-12));
    CHECK_THROWS_AS(cc_distance_origin({std::nan(""), 0, 0}), std::invalid_argument);
}

TEST_CASE("round trip over random arcs") {
    test::DetRng rng(21);
    for (int i = 0; i < 10000; ++i) {
        GeodesicParams g = random_arc(rng);
        double t = cc_distance_origin(geodesic_point(g));
        CHECK(std::abs(t - g.t) <= 1e-8 * g.t);
    }
}

TEST_CASE("distance symmetry and left-invariance") {
    test::DetRng rng(22);
    for (int i = 0; i < 2000; ++i) {
        Point x = test::random_point(rng), y = test::random_point(rng), v = test::random_point(rng);
        double dxy = cc_distance(x, y);
        double dyx = cc_distance(y, x);
        CHECK(std::abs(dxy - dyx) <= 1e-9 * (1.0 + dxy));
        double dv = cc_distance(group_mul(v, x), group_mul(v, y));
        CHECK(std::abs(dv - dxy) <= 1e-8 * (1.0 + dxy));
        CHECK(cc_distance(x, x) == 0.0);
    }
    CHECK(cc_distance({0, 0, 0}, {0, 0, 1}) == doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-12));
}

TEST_CASE("gauge distance sandwich") {
    test::DetRng rng(23);
    double lo = 1.0 / (pi * pi) - 1e-9, hi = 1.0 + 1e-9;
    for (int i = 0; i < 10000; ++i) {
        Point x = test::random_point(rng), y = test::random_point(rng);
        double g4 = kaplan_gauge4(group_diff(y, x));
        double d = cc_distance(x, y);
        double ratio = g4 / (d * d * d * d);
        CHECK(ratio >= lo);
        CHECK(ratio <= hi);
    }
}

TEST_CASE("ratio function g") {
    CHECK(ratio_g(2.0 * pi) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-14));
    CHECK(ratio_g(0.0) == 1.0);
    CHECK(ratio_g(pi) == doctest::Approx(4.0 * (4.0 + pi * pi) / std::pow(pi, 4)).epsilon(1e-14));
    CHECK_THROWS_AS(ratio_g(-0.1), std::domain_error);
    CHECK_THROWS_AS(ratio_g(7.0), std::domain_error);

    // non-increasing on a fine grid
    double prev = ratio_g(0.0);
    for (int i = 1; i <= 10000; ++i) {
        double cur = ratio_g(2.0 * pi * i / 10000);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("ratio inverse solvers agree") {
    test::DetRng rng(24);
    for (int i = 0; i < 2000; ++i) {
        double rho = rng.log_uniform(-6.0, 6.0);
        double a = detail::solve_geo_ratio(rho);
        double b = detail::solve_geo_ratio_bisect(rho);
        CHECK(std::abs(a - b) <= 2e-12 * (1.0 + a));
    }
}

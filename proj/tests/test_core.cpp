#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heis/core.hpp"
#include "oracles.hpp"

using namespace heis;

TEST_CASE("group multiplication") {
    Point p = group_mul({1, 0, 0}, {0, 1, 0});
    CHECK(p.x1 == 1.0);
    CHECK(p.x2 == 1.0);
    CHECK(p.x3 == -0.5);

    test::DetRng rng(11);
    for (int i = 0; i < 100; ++i) {
        Point x = test::random_point(rng);
        Point e = group_mul(x, Point{0, 0, 0});
        CHECK(e.x1 == x.x1);
        CHECK(e.x3 == x.x3);
        Point z = group_mul(x, group_inv(x));
        CHECK(std::abs(z.x1) == 0.0);
        CHECK(std::abs(z.x3) <= 1e-15);
    }
}

TEST_CASE("group inverse") {
    Point p = group_inv({1, 2, 3});
    CHECK(p.x1 == -1.0);
    CHECK(p.x2 == -2.0);
    CHECK(p.x3 == -3.0);
    Point z = group_inv({0, 0, 0});
    CHECK(z.x1 == 0.0);
}

TEST_CASE("associativity") {
    test::DetRng rng(12);
    for (int i = 0; i < 1000; ++i) {
        Point x = test::random_point(rng), y = test::random_point(rng), z = test::random_point(rng);
        Point a = group_mul(group_mul(x, y), z);
        Point b = group_mul(x, group_mul(y, z));
        CHECK(std::abs(a.x1 - b.x1) <= 1e-12);
        CHECK(std::abs(a.x2 - b.x2) <= 1e-12);
        CHECK(std::abs(a.x3 - b.x3) <= 1e-12);
    }
}

TEST_CASE("kaplan gauge values") {
    CHECK(kaplan_gauge({1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kaplan_gauge({0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(kaplan_gauge({1, 1, 0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("gauge left-invariance of group differences") {
    test::DetRng rng(13);
    for (int i = 0; i < 1000; ++i) {
        Point v = test::random_point(rng), x = test::random_point(rng), y = test::random_point(rng);
        double a = kaplan_gauge(group_diff(group_mul(v, y), group_mul(v, x)));
        double b = kaplan_gauge(group_diff(y, x));
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + b));
    }
}

TEST_CASE("gauge dilation homogeneity") {
    test::DetRng rng(14);
    for (int i = 0; i < 1000; ++i) {
        Point x = test::random_point(rng);
        double lam = rng.uniform(0.1, 10.0);
        Point xs{lam * x.x1, lam * x.x2, lam * lam * x.x3};
        CHECK(kaplan_gauge(xs) == doctest::Approx(lam * kaplan_gauge(x)).epsilon(1e-12));
    }
}

TEST_CASE("tangent plane") {
    Plane p0 = tangent_plane({0, 0, 0});
    CHECK(p0.n1 == 0.0);
    CHECK(p0.n2 == 0.0);
    CHECK(p0.n3 == 1.0);
    CHECK(p0.c == 0.0);

    Plane p2 = tangent_plane({2, 0, 0});
    CHECK(p2.n1 == 0.0);
    CHECK(p2.n2 == 1.0);
    CHECK(p2.n3 == 1.0);
    CHECK(p2.c == 0.0);

    test::DetRng rng(15);
    for (int i = 0; i < 200; ++i) {
        Point x = test::random_point(rng);
        Plane h = tangent_plane(x);
        CHECK(h.n3 == 1.0);
        CHECK(std::abs(h.eval(x)) <= 1e-14);  // x lies on H(x)
        // random plane point satisfies x1 y2 - x2 y1 = 2 (x3 - y3)
        double y1 = rng.uniform(-2, 2), y2 = rng.uniform(-2, 2);
        double y3 = h.c - h.n1 * y1 - h.n2 * y2;
        CHECK(std::abs(x.x1 * y2 - x.x2 * y1 - 2.0 * (x.x3 - y3)) <= 1e-12);
    }
}

TEST_CASE("horizontal frame spans the tangent plane") {
    auto [v1, v2] = horizontal_frame({0, 0, 0});
    CHECK(v1.x1 == 1.0);
    CHECK(v1.x3 == 0.0);
    CHECK(v2.x2 == 1.0);

    auto f = horizontal_frame({0, 2, 0});
    CHECK(f.first.x3 == 1.0);

    test::DetRng rng(16);
    for (int i = 0; i < 200; ++i) {
        Point x = test::random_point(rng);
        auto [a, b] = horizontal_frame(x);
        Vec3 n = tangent_plane(x).normal();
        CHECK(std::abs(dot(a, n)) <= 1e-14);
        CHECK(std::abs(dot(b, n)) <= 1e-14);
    }
}

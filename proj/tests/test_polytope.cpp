#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heis/geodesics.hpp"
#include "heis/polytope.hpp"
#include "oracles.hpp"

using namespace heis;
using std::numbers::pi;

namespace {

Polytope random_polytope(test::DetRng& rng) {
    // random bounded shapes: boxes, simplices, or prisms, randomly tilted
    int kind = rng.pick(3);
    if (kind == 0) {
        Vec3 lo{rng.uniform(-2, -0.5), rng.uniform(-2, -0.5), rng.uniform(-2, -0.5)};
        Vec3 hi{rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2)};
        return Polytope::box(lo, hi);
    }
    if (kind == 1) {
        while (true) {
            std::array<Point, 4> v;
            for (auto& p : v) p = test::random_point(rng, -1.5, 1.5);
            Vec3 e1 = v[1].vec() - v[0].vec(), e2 = v[2].vec() - v[0].vec(),
                 e3 = v[3].vec() - v[0].vec();
            if (std::abs(dot(cross(e1, e2), e3)) < 2.0) continue;  // avoid slivers
            try {
                return Polytope::simplex(v);
            } catch (const std::invalid_argument&) {
            }
        }
    }
    return Polytope::prism(5 + rng.pick(5), rng.uniform(-1, 1), rng.uniform(-1, 1),
                           rng.uniform(0.5, 1.5), rng.uniform(-1.5, -0.2), rng.uniform(0.2, 1.5));
}

Point random_interior(const Polytope& P, test::DetRng& rng, double margin_frac = 0.02) {
    double margin = margin_frac * P.bbox().diag();
    for (int attempt = 1;; ++attempt) {
        Point x{rng.uniform(P.bbox().lo.x1, P.bbox().hi.x1),
                rng.uniform(P.bbox().lo.x2, P.bbox().hi.x2),
                rng.uniform(P.bbox().lo.x3, P.bbox().hi.x3)};
        if (attempt % 64 == 0) margin *= 0.5;  // thin shapes need smaller margins
        if (!P.contains(x)) continue;
        bool deep = true;
        for (const auto& h : P.halfspaces()) {
            if (h.plane.normalized().eval(x) > -margin) {
                deep = false;
                break;
            }
        }
        if (deep) return x;
    }
}

} // namespace

TEST_CASE("construction validates input") {
    CHECK_NOTHROW(Polytope::cube(1.0));
    // unbounded: slab with vertical sides only
    std::vector<Halfspace> slab{{{1, 0, 0, 1}}, {{-1, 0, 0, 1}}, {{0, 1, 0, 1}}, {{0, -1, 0, 1}}};
    CHECK_THROWS_AS(Polytope{slab}, std::invalid_argument);
    // empty interior
    std::vector<Halfspace> empty{
        {{1, 0, 0, -1}}, {{-1, 0, 0, -1}}, {{0, 1, 0, 1}}, {{0, -1, 0, 1}},
        {{0, 0, 1, 1}},  {{0, 0, -1, 1}}};
    CHECK_THROWS_AS(Polytope{empty}, std::invalid_argument);
    // a cube face count and vertex count
    Polytope c = Polytope::cube(1.0);
    CHECK(c.faces().size() == 6);
    CHECK(c.vertices().size() == 8);
    CHECK(c.bbox().lo.x1 == doctest::Approx(-1.0));
    CHECK(c.bbox().hi.x3 == doctest::Approx(1.0));
}

TEST_CASE("containment") {
    Polytope c = Polytope::cube(1.0);
    CHECK(c.contains({0, 0, 0}));
    CHECK_FALSE(c.contains({1, 0, 0}));  // boundary is outside the open set
    CHECK_FALSE(c.contains({2, 0, 0}));
}

TEST_CASE("ray exit") {
    Polytope c = Polytope::cube(1.0);
    CHECK(c.ray_exit({0, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.ray_exit({0, 0, 0}, {1, 1, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.ray_exit({0.5, 0, 0}, {1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(c.ray_exit({2, 0, 0}, {1, 0, 0}), std::domain_error);

    // brute-force ray stepping oracle on random shapes
    test::DetRng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        Polytope P = random_polytope(rng);
        Point x = random_interior(P, rng);
        Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (norm(v) < 0.1) continue;
        double s = P.ray_exit(x, v);
        double step = s / 4096.0;
        int inside_steps = 0;
        while (P.contains(x + (inside_steps + 1) * step * v) && inside_steps < 100000)
            ++inside_steps;
        CHECK(std::abs((inside_steps + 1) * step - s) <= 2.0 * step);
    }
}

TEST_CASE("frame exit distances") {
    Polytope c = Polytope::cube(1.0);
    CHECK(c.d1({0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.d2({0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    // ray along (1,0,1/4) leaves |x1|<1 before |x3|<1
    CHECK(c.d1({0, 0.5, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    // wide slab: the horizontal ray stays at x3 = 0
    Polytope slab = Polytope::box({-10, -10, -1}, {10, 10, 1});
    CHECK(slab.d1({0, 0, 0}) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("slice polygon") {
    Polytope c = Polytope::cube(1.0);
    SlicePolygon s0 = c.slice_polygon({0, 0, 0});
    CHECK(s0.vertices.size() == 4);
    for (const auto& v : s0.vertices) {
        CHECK(std::abs(v.x3) <= 1e-12);
        CHECK(std::abs(std::abs(v.x1) - 1.0) <= 1e-12);
        CHECK(std::abs(std::abs(v.x2) - 1.0) <= 1e-12);
    }
    SlicePolygon s1 = c.slice_polygon({0, 0, 0.5});
    CHECK(s1.vertices.size() == 4);
    for (const auto& v : s1.vertices) CHECK(v.x3 == doctest::Approx(0.5).epsilon(1e-12));

    // vertices lie on H(x) and the projection of x is strictly inside
    test::DetRng rng(42);
    for (int rep = 0; rep < 25; ++rep) {
        Polytope P = random_polytope(rng);
        Point x = random_interior(P, rng);
        SlicePolygon s = P.slice_polygon(x);
        REQUIRE(s.vertices.size() >= 3);
        std::vector<geo2d::P2> poly;
        Plane h = tangent_plane(x);
        for (const auto& v : s.vertices) {
            CHECK(std::abs(h.eval(v)) <= 1e-9 * P.scale());
            poly.push_back({v.x1, v.x2});
        }
        CHECK(geo2d::point_in_convex(poly, {x.x1, x.x2}, 0.0));
        CHECK(geo2d::dist_to_boundary(poly, {x.x1, x.x2}) > 0.0);
    }
}

TEST_CASE("omega values and the planar identity") {
    Polytope wide = Polytope::box({-2, -2, -1}, {2, 2, 1});
    CHECK(wide.omega({0, 0, 0}) == doctest::Approx(2.0).epsilon(1e-12));
    Polytope c = Polytope::cube(1.0);
    CHECK(c.omega({0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));

    // omega equals the gauge infimum over the slice boundary
    test::DetRng rng(43);
    for (int rep = 0; rep < 10; ++rep) {
        Polytope P = random_polytope(rng);
        Point x = random_interior(P, rng);
        double om = P.omega(x);
        SlicePolygon s = P.slice_polygon(x);
        double best = 1e300;
        size_t n = s.vertices.size();
        for (size_t i = 0; i < n; ++i) {
            const Point& a = s.vertices[i];
            const Point& b = s.vertices[(i + 1) % n];
            for (int t = 0; t <= 1000; ++t) {
                double lam = t / 1000.0;
                Point y{a.x1 + lam * (b.x1 - a.x1), a.x2 + lam * (b.x2 - a.x2),
                        a.x3 + lam * (b.x3 - a.x3)};
                best = std::min(best, kaplan_gauge(group_diff(y, x)));
            }
        }
        CHECK(om == doctest::Approx(best).epsilon(1e-4));
    }
}

TEST_CASE("delta_k on boxes and against boundary sampling") {
    Polytope slab = Polytope::box({-10, -10, 0}, {10, 10, 2});
    // near the bottom face the vertical offset dominates: gauge = 2 sqrt(|w|)
    CHECK(slab.delta_k({0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-9));

    Polytope c = Polytope::cube(1.0);
    CHECK(c.delta_k({0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-9));

    test::DetRng rng(44);
    for (int rep = 0; rep < 8; ++rep) {
        Polytope P = random_polytope(rng);
        Point x = random_interior(P, rng);
        double dk = P.delta_k(x);
        double best = test::min_over_boundary(
            P, [&](Point y) { return kaplan_gauge(group_diff(y, x)); });
        CHECK(dk == doctest::Approx(best).epsilon(1e-6));
        // sampled points can only lie above the infimum
        auto samples = test::sample_boundary(P, 20000, rng);
        for (int s = 0; s < 50; ++s) CHECK(dk <= kaplan_gauge(group_diff(samples[s], x)) * (1.0 + 1e-9));
    }
}

TEST_CASE("delta_c sandwich and oracle") {
    Polytope c = Polytope::cube(1.0);
    double dc = c.delta_c({0, 0, 0});
    CHECK(dc >= 1.0);
    CHECK(dc <= std::sqrt(pi));
    CHECK(dc == doctest::Approx(1.0).epsilon(1e-9));  // side faces dominate

    // distance from the axis to the bottom of a wide slab: sqrt(2 pi h)
    Polytope slab = Polytope::box({-20, -20, 0}, {20, 20, 40});
    CHECK(slab.delta_c({0, 0, 1}) == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-9));

    test::DetRng rng(45);
    for (int rep = 0; rep < 6; ++rep) {
        Polytope P = random_polytope(rng);
        Point x = random_interior(P, rng);
        double dc2 = P.delta_c(x);
        double dk = P.delta_k(x);
        CHECK(dc2 >= dk * (1.0 - 1e-9));
        CHECK(dc2 <= std::sqrt(pi) * dk * (1.0 + 1e-9));
        double best = test::min_over_boundary(P, [&](Point y) { return cc_distance(x, y); });
        CHECK(dc2 == doctest::Approx(best).epsilon(1e-5));
    }

    // approaching a face sends delta_c to zero
    CHECK(c.delta_c({1.0 - 1e-3, 0, 0}) <= 2e-3);
}

TEST_CASE("pointwise inequalities between the distances") {
    test::DetRng rng(46);
    for (int rep = 0; rep < 12; ++rep) {
        Polytope P = random_polytope(rng);
        for (int s = 0; s < 12; ++s) {
            Point x = random_interior(P, rng);
            double w = P.omega(x), dc = P.delta_c(x), dk = P.delta_k(x);
            double a = P.d1(x), b = P.d2(x);
            CHECK(w >= dc * (1.0 - 1e-9));
            CHECK(dc >= dk * (1.0 - 1e-9));
            CHECK(1.0 / (a * a) + 1.0 / (b * b) >= 1.0 / (w * w) * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("delta_c is 1-Lipschitz for the control distance") {
    test::DetRng rng(47);
    for (int rep = 0; rep < 8; ++rep) {
        Polytope P = random_polytope(rng);
        for (int s = 0; s < 10; ++s) {
            Point x = random_interior(P, rng), y = random_interior(P, rng);
            double lhs = std::abs(P.delta_c(x) - P.delta_c(y));
            CHECK(lhs <= cc_distance(x, y) * (1.0 + 1e-7) + 1e-9);
        }
    }
}

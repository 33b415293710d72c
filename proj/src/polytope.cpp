#include "heis/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "heis/geodesics.hpp"
#include "heis/plane_gauge.hpp"

namespace heis {

using std::numbers::pi;

namespace geo2d {

std::vector<P2> clip(const std::vector<P2>& poly, double a, double b, double rhs) {
    std::vector<P2> out;
    out.reserve(poly.size() + 1);
    auto side = [&](const P2& p) { return a * p[0] + b * p[1] - rhs; };
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const P2& p = poly[i];
        const P2& q = poly[(i + 1) % n];
        double sp = side(p), sq = side(q);
        if (sp <= 0.0) out.push_back(p);
        if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0)) {
            double t = sp / (sp - sq);
            out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

double polygon_area(const std::vector<P2>& poly) {
    double s = 0.0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const P2& p = poly[i];
        const P2& q = poly[(i + 1) % n];
        s += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * s;
}

bool point_in_convex(const std::vector<P2>& poly, P2 p, double tol) {
    size_t n = poly.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        const P2& a = poly[i];
        const P2& b = poly[(i + 1) % n];
        double cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        if (cr < -tol) return false;  // CCW polygon
    }
    return true;
}

static double point_segment_dist(P2 p, P2 a, P2 b) {
    double dx = b[0] - a[0], dy = b[1] - a[1];
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double ex = a[0] + t * dx - p[0], ey = a[1] + t * dy - p[1];
    return std::hypot(ex, ey);
}

double dist_to_boundary(const std::vector<P2>& poly, P2 p) {
    double best = std::numeric_limits<double>::infinity();
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i)
        best = std::min(best, point_segment_dist(p, poly[i], poly[(i + 1) % n]));
    return best;
}

} // namespace geo2d

namespace {

constexpr double kVerticalTol = 1e-12;

template <class F>
double golden_min(F f, double a, double b, double tol, double* arg = nullptr) {
    const double r = 0.6180339887498949;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    double xm = 0.5 * (a + b), fm = f(xm);
    if (arg) *arg = xm;
    return fm;
}

// Scan a possibly multimodal function on [a, b] and refine every discrete
// local minimum by golden section.
template <class F>
double scan_min(F f, double a, double b, int n, double tol) {
    std::vector<double> vals(n + 1);
    double h = (b - a) / n;
    for (int i = 0; i <= n; ++i) vals[i] = f(a + i * h);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        bool lmin = (i == 0 || vals[i] <= vals[i - 1]) && (i == n || vals[i] <= vals[i + 1]);
        if (!lmin) continue;
        double lo = a + (i > 0 ? (i - 1) : 0) * h;
        double hi = a + (i < n ? (i + 1) : n) * h;
        best = std::min(best, golden_min(f, lo, hi, tol));
    }
    return best;
}

double gauge4_diff(Point y, Point x) {
    return kaplan_gauge4(group_diff(y, x));
}

double min_gauge_on_segment(Point A, Point B, Point x) {
    auto f = [&](double t) { return gauge4_diff(Point{A.x1 + t * (B.x1 - A.x1),
                                                      A.x2 + t * (B.x2 - A.x2),
                                                      A.x3 + t * (B.x3 - A.x3)}, x); };
    return std::sqrt(std::sqrt(golden_min(f, 0.0, 1.0, 1e-12)));
}

double min_cc_on_segment(Point A, Point B, Point x) {
    auto f = [&](double t) { return cc_distance(x, Point{A.x1 + t * (B.x1 - A.x1),
                                                          A.x2 + t * (B.x2 - A.x2),
                                                          A.x3 + t * (B.x3 - A.x3)}); };
    return scan_min(f, 0.0, 1.0, 16, 1e-10);
}

} // namespace

Polytope::Polytope(std::vector<Halfspace> hs) : hs_(std::move(hs)) {
    if (hs_.size() < 4)
        throw std::invalid_argument("polytope: need at least 4 halfspaces");
    double cscale = 1.0;
    for (const auto& h : hs_) {
        double nn = norm(h.plane.normal());
        if (nn == 0.0) throw std::invalid_argument("polytope: zero normal");
        cscale = std::max(cscale, std::abs(h.plane.c) / nn);
    }
    const double W = 1e6 * cscale;
    const double vtol = 1e-7 * cscale;

    for (size_t i = 0; i < hs_.size(); ++i) {
        Face f;
        f.halfspace = (int)i;
        f.plane = hs_[i].plane;
        Plane unit = f.plane.normalized();
        f.unit_n = unit.normal();
        f.unit_c = unit.c;
        f.origin = Point::from(unit.c * f.unit_n);
        Vec3 eu = cross(f.unit_n, Vec3{0, 0, 1});
        if (norm(eu) < 1e-8) eu = cross(f.unit_n, Vec3{0, 1, 0});
        f.eu = (1.0 / norm(eu)) * eu;
        f.ev = cross(f.unit_n, f.eu);

        std::vector<geo2d::P2> poly{{-W, -W}, {W, -W}, {W, W}, {-W, W}};
        for (size_t j = 0; j < hs_.size() && !poly.empty(); ++j) {
            if (j == i) continue;
            Plane pj = hs_[j].plane.normalized();
            Vec3 nj = pj.normal();
            double a = dot(nj, f.eu), b = dot(nj, f.ev);
            double rhs = pj.c - dot(nj, f.origin.vec());
            if (std::hypot(a, b) < 1e-13) {
                if (rhs < -vtol) poly.clear();  // plane i lies outside halfspace j
                continue;
            }
            poly = geo2d::clip(poly, a, b, rhs);
        }
        // merge duplicate corners left by grazing clips
        std::vector<geo2d::P2> clean;
        for (const auto& p : poly) {
            if (clean.empty() || std::hypot(p[0] - clean.back()[0], p[1] - clean.back()[1]) > vtol)
                clean.push_back(p);
        }
        while (clean.size() > 1 &&
               std::hypot(clean.front()[0] - clean.back()[0], clean.front()[1] - clean.back()[1]) <= vtol)
            clean.pop_back();
        if (clean.size() < 3 || geo2d::polygon_area(clean) < vtol * vtol) continue;
        for (const auto& p : clean) {
            if (std::max(std::abs(p[0]), std::abs(p[1])) > 0.45 * W)
                throw std::invalid_argument("polytope: unbounded halfspace intersection");
        }
        f.poly2d = clean;
        f.poly.reserve(clean.size());
        for (const auto& p : clean) f.poly.push_back(f.lift(p[0], p[1]));
        faces_.push_back(std::move(f));
    }
    if (faces_.size() < 4)
        throw std::invalid_argument("polytope: degenerate intersection");

    for (const auto& f : faces_) {
        for (const auto& p : f.poly) {
            bool dup = false;
            for (const auto& q : vertices_)
                if (norm(p.vec() - q.vec()) <= 10 * vtol) { dup = true; break; }
            if (!dup) vertices_.push_back(p);
        }
    }
    if (vertices_.size() < 4)
        throw std::invalid_argument("polytope: degenerate intersection");

    Vec3 lo = vertices_[0].vec(), hi = lo;
    Vec3 centroid{};
    for (const auto& p : vertices_) {
        Vec3 v = p.vec();
        lo = {std::min(lo.x1, v.x1), std::min(lo.x2, v.x2), std::min(lo.x3, v.x3)};
        hi = {std::max(hi.x1, v.x1), std::max(hi.x2, v.x2), std::max(hi.x3, v.x3)};
        centroid = centroid + v;
    }
    bbox_ = {lo, hi};
    interior_ = Point::from((1.0 / (double)vertices_.size()) * centroid);
    scale_ = std::max(1.0, bbox_.diag());

    for (const auto& h : hs_) {
        Plane u = h.plane.normalized();
        if (u.eval(interior_) > -1e-12 * scale_)
            throw std::invalid_argument("polytope: empty interior");
    }
    // feasibility probes along the coordinate axes
    const Vec3 axes[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (const Vec3& d : axes) {
        bool cut = false;
        for (const auto& h : hs_)
            if (dot(h.plane.normalized().normal(), d) > 1e-12) { cut = true; break; }
        if (!cut) throw std::invalid_argument("polytope: unbounded along an axis");
    }
}

Polytope Polytope::box(Vec3 lo, Vec3 hi) {
    std::vector<Halfspace> hs{
        {{1, 0, 0, hi.x1}},  {{-1, 0, 0, -lo.x1}},
        {{0, 1, 0, hi.x2}},  {{0, -1, 0, -lo.x2}},
        {{0, 0, 1, hi.x3}},  {{0, 0, -1, -lo.x3}},
    };
    return Polytope(std::move(hs));
}

Polytope Polytope::cube(double half_width) {
    return box({-half_width, -half_width, -half_width}, {half_width, half_width, half_width});
}

Polytope Polytope::simplex(const std::array<Point, 4>& v) {
    std::vector<Halfspace> hs;
    for (int i = 0; i < 4; ++i) {
        Point a = v[(i + 1) % 4], b = v[(i + 2) % 4], c = v[(i + 3) % 4];
        Vec3 n = cross(b.vec() - a.vec(), c.vec() - a.vec());
        double off = dot(n, a.vec());
        if (dot(n, v[i].vec()) > off) {
            n = -1.0 * n;
            off = -off;
        }
        hs.push_back({{n.x1, n.x2, n.x3, off}});
    }
    return Polytope(std::move(hs));
}

Polytope Polytope::prism(int n_sides, double cx, double cy, double radius,
                         double z_lo, double z_hi) {
    if (n_sides < 3) throw std::invalid_argument("prism: need at least 3 sides");
    std::vector<Halfspace> hs;
    double apothem = radius * std::cos(pi / n_sides);
    for (int k = 0; k < n_sides; ++k) {
        double ang = 2.0 * pi * (k + 0.5) / n_sides;
        double nx = std::cos(ang), ny = std::sin(ang);
        hs.push_back({{nx, ny, 0.0, nx * cx + ny * cy + apothem}});
    }
    hs.push_back({{0, 0, 1, z_hi}});
    hs.push_back({{0, 0, -1, -z_lo}});
    return Polytope(std::move(hs));
}

bool Polytope::contains(Point x) const {
    for (const auto& h : hs_)
        if (!(h.plane.eval(x) < 0.0)) return false;
    return true;
}

void Polytope::require_inside(Point x) const {
    if (!contains(x)) throw std::domain_error("point not in interior");
}

double Polytope::ray_exit(Point x, Vec3 v) const {
    require_inside(x);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& h : hs_) {
        double den = dot(h.plane.normal(), v);
        if (den > 0.0) best = std::min(best, -h.plane.eval(x) / den);
    }
    if (!std::isfinite(best)) throw std::runtime_error("ray_exit: ray never leaves polytope");
    return best;
}

double Polytope::d1(Point x) const {
    Vec3 v = horizontal_frame(x).first;
    return std::min(ray_exit(x, v), ray_exit(x, -1.0 * v));
}

double Polytope::d2(Point x) const {
    Vec3 v = horizontal_frame(x).second;
    return std::min(ray_exit(x, v), ray_exit(x, -1.0 * v));
}

SlicePolygon Polytope::slice_polygon(Point x) const {
    require_inside(x);
    double W = bbox_.diag() + norm(x.vec() - bbox_.lo) + 1.0;
    std::vector<geo2d::P2> poly{{x.x1 - W, x.x2 - W}, {x.x1 + W, x.x2 - W},
                                {x.x1 + W, x.x2 + W}, {x.x1 - W, x.x2 + W}};
    for (const auto& h : hs_) {
        const Plane& p = h.plane;
        double a = p.n1 + 0.5 * p.n3 * x.x2;
        double b = p.n2 - 0.5 * p.n3 * x.x1;
        double rhs = p.c - p.n3 * x.x3;
        if (std::hypot(a, b) < 1e-13 * scale_) continue;  // parallel, feasible at x
        poly = geo2d::clip(poly, a, b, rhs);
    }
    SlicePolygon out;
    double vtol = 1e-9 * scale_;
    for (const auto& p : poly) {
        if (!out.vertices.empty()) {
            const Point& b = out.vertices.back();
            if (std::hypot(p[0] - b.x1, p[1] - b.x2) <= vtol) continue;
        }
        double y3 = x.x3 + 0.5 * (x.x2 * p[0] - x.x1 * p[1]);
        out.vertices.push_back({p[0], p[1], y3});
    }
    while (out.vertices.size() > 1) {
        const Point& a = out.vertices.front();
        const Point& b = out.vertices.back();
        if (std::hypot(a.x1 - b.x1, a.x2 - b.x2) > vtol) break;
        out.vertices.pop_back();
    }
    return out;
}

double Polytope::omega(Point x) const {
    SlicePolygon s = slice_polygon(x);
    std::vector<geo2d::P2> poly;
    poly.reserve(s.vertices.size());
    for (const auto& v : s.vertices) poly.push_back({v.x1, v.x2});
    return geo2d::dist_to_boundary(poly, {x.x1, x.x2});
}

namespace {

// Plane-level minimum of the gauge distance (ignoring the facet polygon).
// Cheap: closed form in both the vertical and the tilted case.
struct PlaneMin {
    double value;
    Point minimizer;
    bool vertical;
};

PlaneMin plane_min_gauge(const Face& f, Point x) {
    if (std::abs(f.unit_n.x3) <= kVerticalTol) {
        double nh = std::hypot(f.unit_n.x1, f.unit_n.x2);
        double d = (f.unit_c - (f.unit_n.x1 * x.x1 + f.unit_n.x2 * x.x2)) / nh;
        double y1 = x.x1 + d * f.unit_n.x1 / nh;
        double y2 = x.x2 + d * f.unit_n.x2 / nh;
        double y3 = x.x3 + 0.5 * (x.x2 * y1 - x.x1 * y2);
        return {std::abs(d), Point{y1, y2, y3}, true};
    }
    PlaneGaugeResult r = gauge_dist_to_plane_solve(f.plane, x);
    return {r.value, r.minimizer, false};
}

bool minimizer_on_face(const Face& f, Point y, double scale) {
    return geo2d::point_in_convex(f.poly2d, f.project(y), 1e-9 * scale);
}

} // namespace

double Polytope::face_min_gauge(const Face& f, Point x, double* plane_bound) const {
    PlaneMin pm = plane_min_gauge(f, x);
    if (plane_bound) *plane_bound = pm.value;
    if (minimizer_on_face(f, pm.minimizer, scale_)) return pm.value;
    double best = std::numeric_limits<double>::infinity();
    size_t n = f.poly.size();
    for (size_t i = 0; i < n; ++i)
        best = std::min(best, min_gauge_on_segment(f.poly[i], f.poly[(i + 1) % n], x));
    return best;
}

double Polytope::delta_k(Point x) const {
    require_inside(x);
    struct Cand {
        double bound;
        const Face* f;
    };
    std::vector<Cand> cands;
    cands.reserve(faces_.size());
    for (const auto& f : faces_) cands.push_back({plane_min_gauge(f, x).value, &f});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.bound < b.bound; });
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) {
        if (c.bound >= best) break;
        best = std::min(best, face_min_gauge(*c.f, x, nullptr));
    }
    return best;
}

double Polytope::face_min_cc(const Face& f, Point x, double upper) const {
    bool vertical = std::abs(f.unit_n.x3) <= kVerticalTol;
    double best = upper;
    bool interior_found = false;

    if (vertical) {
        PlaneMin pm = plane_min_gauge(f, x);  // T = 0 => cc distance equals planar distance
        if (minimizer_on_face(f, pm.minimizer, scale_)) return pm.value;
    } else {
        PlaneCaseParams pc = reduced_to_horizontal(f.plane, x);
        Point v = plane_shift(f.plane);
        Point vinv = group_inv(v);
        double u = std::hypot(pc.u1, pc.u2);
        double aw = std::abs(pc.w);
        if (u == 0.0) {
            // ring of minimizers of radius rstar around the axis
            double t = std::sqrt(2.0 * pi * aw);
            double rstar = 2.0 * t / pi;
            for (int k = 0; k < 64; ++k) {
                double a = 2.0 * pi * k / 64;
                Point q{rstar * std::cos(a), rstar * std::sin(a), 0.0};
                if (minimizer_on_face(f, group_mul(vinv, q), scale_)) return t;
            }
        } else {
            auto cc_line = [&](double s) {
                return cc_distance_origin(Point{s, 0.0, pc.w - 0.5 * s * u});
            };
            double sigma_t0 = 2.0 * pc.w / u;
            double cap = std::min(2.0 * std::sqrt(pi * aw), std::abs(sigma_t0)) * (1.0 + 1e-12);
            auto map_back = [&](double s) {
                return group_mul(vinv, Point{pc.u1 - s * pc.u2 / u, pc.u2 + s * pc.u1 / u, 0.0});
            };
            // scan the critical line; the landscape can have two dips near the axis
            const int n = 40;
            double h = 2.0 * cap / n;
            std::vector<double> vals(n + 1);
            for (int i = 0; i <= n; ++i) vals[i] = cc_line(-cap + i * h);
            double plane_best = std::numeric_limits<double>::infinity();
            double plane_arg = 0.0;
            for (int i = 0; i <= n; ++i) {
                bool lmin = (i == 0 || vals[i] <= vals[i - 1]) && (i == n || vals[i] <= vals[i + 1]);
                if (!lmin) continue;
                double lo = -cap + (i > 0 ? i - 1 : 0) * h;
                double hi = -cap + (i < n ? i + 1 : n) * h;
                double arg;
                double val = golden_min(cc_line, lo, hi, 1e-10 * (1.0 + cap), &arg);
                if (val < plane_best) {
                    plane_best = val;
                    plane_arg = arg;
                }
                if (minimizer_on_face(f, map_back(arg), scale_)) {
                    interior_found = true;
                    best = std::min(best, val);
                }
            }
            if (minimizer_on_face(f, map_back(plane_arg), scale_)) return plane_best;
        }
    }
    // constrained minimum on the facet boundary
    size_t n = f.poly.size();
    std::vector<std::pair<double, size_t>> order;
    order.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        double lb = min_gauge_on_segment(f.poly[i], f.poly[(i + 1) % n], x);
        order.push_back({lb, i});
    }
    std::sort(order.begin(), order.end());
    for (const auto& [lb, i] : order) {
        if (lb >= best) break;  // cc distance dominates the gauge distance
        best = std::min(best, min_cc_on_segment(f.poly[i], f.poly[(i + 1) % n], x));
    }
    (void)interior_found;
    return best;
}

double Polytope::delta_c(Point x) const {
    require_inside(x);
    double dk = delta_k(x);
    double upper = std::sqrt(pi) * dk * (1.0 + 1e-9);
    struct Cand {
        double bound;
        const Face* f;
    };
    std::vector<Cand> cands;
    cands.reserve(faces_.size());
    for (const auto& f : faces_) cands.push_back({plane_min_gauge(f, x).value, &f});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.bound < b.bound; });
    double best = upper;
    for (const auto& c : cands) {
        if (c.bound >= best) break;
        best = std::min(best, face_min_cc(*c.f, x, best));
    }
    return std::max(best, dk);  // clamp into the gauge sandwich
}

} // namespace heis

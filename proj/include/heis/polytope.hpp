// Bounded convex polytopes as halfspace intersections, with the boundary
// distance functions used by the Hardy quotients:
//   d1, d2    exit parameters along the horizontal frame directions,
//   omega     distance to the boundary within the tangent plane H(x)
//             (equals the planar Euclidean distance to the slice polygon),
//   delta_k   gauge distance to the boundary,
//   delta_c   Carnot-Caratheodory distance to the boundary.
#ifndef HEIS_POLYTOPE_HPP
#define HEIS_POLYTOPE_HPP

#include <array>
#include <vector>

#include "heis/core.hpp"

namespace heis {

struct Halfspace {
    Plane plane;  // <n, y> <= c
};

struct Aabb {
    Vec3 lo, hi;
    Vec3 extent() const { return hi - lo; }
    double diag() const { return norm(hi - lo); }
};

// One facet: the defining halfspace clipped against all the others.
struct Face {
    int halfspace = -1;
    Plane plane;                                 // as given
    Vec3 unit_n;                                 // outward unit normal
    double unit_c = 0;                           // offset for the unit normal
    Point origin;                                // a point on the plane
    Vec3 eu, ev;                                 // in-plane orthonormal basis
    std::vector<std::array<double, 2>> poly2d;   // CCW vertices in (eu, ev)
    std::vector<Point> poly;                     // the same vertices in space

    Point lift(double u, double v) const { return origin + u * eu + v * ev; }
    std::array<double, 2> project(Point p) const {
        Vec3 d = p.vec() - origin.vec();
        return {dot(d, eu), dot(d, ev)};
    }
};

struct SlicePolygon {
    std::vector<Point> vertices;  // cyclically ordered, lying in H(x)
};

class Polytope {
public:
    // Validates at construction: the intersection must be bounded with
    // nonempty interior, otherwise throws std::invalid_argument.
    explicit Polytope(std::vector<Halfspace> hs);

    static Polytope box(Vec3 lo, Vec3 hi);
    static Polytope cube(double half_width);
    static Polytope simplex(const std::array<Point, 4>& vertices);
    // Right prism over a regular n-gon inscribed in the circle of the given
    // radius centered at (cx, cy), between heights z_lo and z_hi.
    static Polytope prism(int n_sides, double cx, double cy, double radius,
                          double z_lo, double z_hi);

    const std::vector<Halfspace>& halfspaces() const { return hs_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    const Aabb& bbox() const { return bbox_; }
    Point interior_point() const { return interior_; }
    double scale() const { return scale_; }

    bool contains(Point x) const;

    // Smallest s > 0 with x + s v outside; requires an interior x.
    double ray_exit(Point x, Vec3 v) const;

    // Exit parameters |s| along the frame directions (1,0,x2/2), (0,1,-x1/2).
    double d1(Point x) const;
    double d2(Point x) const;

    SlicePolygon slice_polygon(Point x) const;
    double omega(Point x) const;

    double delta_k(Point x) const;
    double delta_c(Point x) const;

private:
    void require_inside(Point x) const;
    double face_min_gauge(const Face& f, Point x, double* best_so_far) const;
    double face_min_cc(const Face& f, Point x, double upper) const;

    std::vector<Halfspace> hs_;
    std::vector<Face> faces_;
    std::vector<Point> vertices_;
    Aabb bbox_{};
    Point interior_{};
    double scale_ = 1.0;
};

namespace geo2d {

using P2 = std::array<double, 2>;

// Clips a convex CCW polygon against a*u + b*v <= rhs (Sutherland-Hodgman).
std::vector<P2> clip(const std::vector<P2>& poly, double a, double b, double rhs);
double polygon_area(const std::vector<P2>& poly);
bool point_in_convex(const std::vector<P2>& poly, P2 p, double tol);
double dist_to_boundary(const std::vector<P2>& poly, P2 p);

} // namespace geo2d

} // namespace heis

#endif

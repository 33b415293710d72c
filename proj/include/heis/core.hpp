// Core operations on the first Heisenberg group: R^3 with the product
//   x * y = (x1+y1, x2+y2, x3+y3 - (x1 y2 - x2 y1)/2),
// the Kaplan gauge |x|^4 = (x1^2+x2^2)^2 + 16 x3^2, the tangent plane H(x)
// spanned by the horizontal frame, and small vector helpers.
#ifndef HEIS_CORE_HPP
#define HEIS_CORE_HPP

#include <cmath>
#include <utility>

namespace heis {

struct Vec3 {
    double x1 = 0, x2 = 0, x3 = 0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x1, s * a.x2, s * a.x3}; }
inline double dot(Vec3 a, Vec3 b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

// A group element. Coordinates must be finite.
struct Point {
    double x1 = 0, x2 = 0, x3 = 0;

    Vec3 vec() const { return {x1, x2, x3}; }
    static Point from(Vec3 v) { return {v.x1, v.x2, v.x3}; }
    bool finite() const { return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3); }
};

inline Point operator+(Point p, Vec3 v) { return {p.x1 + v.x1, p.x2 + v.x2, p.x3 + v.x3}; }

// Plane <n, y> = c with n = (n1, n2, n3) != 0.
struct Plane {
    double n1 = 0, n2 = 0, n3 = 0, c = 0;

    Vec3 normal() const { return {n1, n2, n3}; }
    double eval(Point y) const { return n1 * y.x1 + n2 * y.x2 + n3 * y.x3 - c; }
    // Same plane with a unit normal.
    Plane normalized() const {
        double s = 1.0 / norm(normal());
        return {n1 * s, n2 * s, n3 * s, c * s};
    }
};

inline Point group_mul(Point x, Point y) {
    return {x.x1 + y.x1, x.x2 + y.x2,
            x.x3 + y.x3 - 0.5 * (x.x1 * y.x2 - x.x2 * y.x1)};
}

inline Point group_inv(Point x) { return {-x.x1, -x.x2, -x.x3}; }

// y^-1 * x, the group difference entering every left-invariant distance.
inline Point group_diff(Point y, Point x) { return group_mul(group_inv(y), x); }

inline double kaplan_gauge4(Point x) {
    double r2 = x.x1 * x.x1 + x.x2 * x.x2;
    return r2 * r2 + 16.0 * x.x3 * x.x3;
}

inline double kaplan_gauge(Point x) { return std::sqrt(std::sqrt(kaplan_gauge4(x))); }

// Tangent plane H(x): all y with x1 y2 - x2 y1 = 2 (x3 - y3).  Normal
// (-x2/2, x1/2, 1); its third component is identically 1, so H(x) is a
// graph over the (x1, x2) plane.
inline Plane tangent_plane(Point x) {
    return {-0.5 * x.x2, 0.5 * x.x1, 1.0, x.x3};
}

// Left-invariant horizontal frame X1, X2 evaluated at x.
inline std::pair<Vec3, Vec3> horizontal_frame(Point x) {
    return {Vec3{1, 0, 0.5 * x.x2}, Vec3{0, 1, -0.5 * x.x1}};
}

} // namespace heis

#endif

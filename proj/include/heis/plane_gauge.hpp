// Gauge distance from a point to a hyperplane.
//
// For a non-vertical plane, left translation by v = (-2 n2, 2 n1, -c)/n3
// turns the problem into a horizontal-plane one at the shifted point
// (u1, u2, w); the minimizer there lies on the line orthogonal to (u1, u2)
// and is found from a depressed cubic via Cardano's formula.  Two vertical
// normalizations are carried: the primary gauge |.|^4 = (r^2)^2 + 16 x3^2
// and an alternate with coefficient 1/16, and the case lower bounds are
// certified against a grid-refinement oracle under both.
#ifndef HEIS_PLANE_GAUGE_HPP
#define HEIS_PLANE_GAUGE_HPP

#include "heis/core.hpp"

namespace heis {

// Depressed cubic z^3 + p z = q with p > 0, q != 0: one real root.
struct CubicCoeffs {
    double p = 0;
    double q = 0;
};

// The unique real root; residual stays below 1e-12 * max(1, |q|).
double cardano_root(CubicCoeffs c);

// Closed-form lower bound for |root|: (|q|^(1/3)/3) (1 + p sqrt(p)/(3 sqrt(3) |q|))^(-2/3).
double cardano_lower_bound(CubicCoeffs c);

// Coordinates of the left-translated problem: plane constraint becomes
// y3 = 0 and the point moves to (u1, u2, w).
struct PlaneCaseParams {
    double u1 = 0, u2 = 0;  // translated horizontal coordinates
    double w = 0;           // translated height; zero iff x lies in the plane
};

// Requires n3 != 0 (throws std::domain_error otherwise).
PlaneCaseParams reduced_to_horizontal(const Plane& pl, Point x);

// The translation vector v with q in the shifted plane iff q3 = 0.
Point plane_shift(const Plane& pl);

struct PlaneGaugeResult {
    double value = 0;      // primary gauge (16 x3^2 vertical term)
    double value_alt = 0;  // alternate normalization (x3^2/16 vertical term)
    Point minimizer;       // argmin on the plane for the primary gauge
};

// Closed-form minimum via the critical-point cubic.  Requires n3 != 0.
PlaneGaugeResult gauge_dist_to_plane_solve(const Plane& pl, Point x);
double gauge_dist_to_plane_critical(const Plane& pl, Point x);

// Independent oracle: adaptive grid refinement over the plane.  The
// vertical coefficient selects the normalization (16 is the gauge).
double gauge_dist_to_plane_bruteforce(const Plane& pl, Point x, double vertical_coeff = 16.0);

enum class BoundCase { height, radial };

struct PropBound {
    BoundCase kind;
    double bound;  // candidate lower bound for the squared plane distance
};

// Case-split lower bound at parameter a > 0: the height case applies when
// u1^2 + u2^2 <= a |w|, the radial case otherwise.  Requires w != 0.
PropBound prop_lower_bound(const PlaneCaseParams& params, double a);

} // namespace heis

#endif

// Geodesic arcs from the origin and the Carnot-Caratheodory distance.
//
// Arcs are parametrized by curvature k, launch angle theta and arclength t
// (t <= 2*pi/|k| for k != 0).  The distance to the origin inverts that
// parametrization: with r^2 = z1^2 + z2^2 the swept angle tau = |k| t solves
//     |z3| / r^2 = (tau - sin tau) / (4 (1 - cos tau)),
// which is strictly increasing on (0, 2*pi), and then t = tau r / (2 sin(tau/2)).
#ifndef HEIS_GEODESICS_HPP
#define HEIS_GEODESICS_HPP

#include "heis/core.hpp"

namespace heis {

struct GeodesicParams {
    double k = 0;      // curvature, 0 gives a horizontal straight line
    double theta = 0;  // launch angle in [0, 2*pi)
    double t = 0;      // arclength, in [0, 2*pi/|k|] when k != 0
};

// Endpoint of the arc.  Evaluates series expansions for small |k|*t, so the
// k -> 0 limit is exact.
Point geodesic_point(const GeodesicParams& g);

// d_C(z, 0).  Throws std::invalid_argument on non-finite input.
double cc_distance_origin(Point z);

// d_C(x, y) via left-invariance.
double cc_distance(Point x, Point y);

// g(tau) = (4/tau^4) ((1-cos tau)^2 + (tau - sin tau)^2) on [0, 2*pi];
// equals the fourth power of gauge/distance along arcs.  g(0) = 1 by its
// limit, g(2*pi) = 1/pi^2.  Throws std::domain_error outside the range.
double ratio_g(double tau);

namespace detail {

// (tau - sin tau) / (4 (1 - cos tau)), increasing from 0 to +inf on (0, 2*pi).
double geo_ratio(double tau);
double geo_ratio_deriv(double tau);

// Inverse of geo_ratio: table-seeded safeguarded Newton, bracket narrowed
// below 1e-14.
double solve_geo_ratio(double rho);

// Plain bisection reference for the same inverse, kept for testing.
double solve_geo_ratio_bisect(double rho);

// Stable small-argument helpers.
double sinc(double t);            // sin(t)/t
double verc(double t);            // (1 - cos t)/t
double sin_deficit(double t);     // (t - sin t)/t^3

} // namespace detail

} // namespace heis

#endif

// Closed-form Hardy constants and the face-count equation.
//
// For a bounded convex polytope with m faces not orthogonal to {x3 = 0},
// the quotient  inf \int |grad_H u|^2 / \int u^2 / delta_C^2  is bounded
// below by (1/5) (48 sqrt(6)/c_m + 1)^(-4/3), where c_m solves
//     c^(4/3) pi m sqrt(c^2 + 16) (1 + c/(48 sqrt(6)))^(2/3) = 16/3.
// Under the pointwise geometric condition
//     (x1 - 2 n2/n3)^2 + (x2 + 2 n1/n3)^2 >= a |w(x)|
// on every non-vertical face, the bound improves to (48 sqrt(6)/a + 1)^(-4/3) / 4.
#ifndef HEIS_CONSTANTS_HPP
#define HEIS_CONSTANTS_HPP

#include <utility>

#include "heis/polytope.hpp"

namespace heis {

inline constexpr double k_case_const = 117.57550765359254;  // 48 sqrt(6)

struct CmSolution {
    int m = 0;
    double c_m = 0;
    double residual = 0;      // defining equation residual at c_m
    bool unique_bracket = true;  // single sign change seen while bracketing
};

// Unique positive root of the face-count equation (left side is strictly
// increasing in c).  Requires m >= 1.
CmSolution solve_cm(int m);

// Verifies the closed-form upper bounds on c_m and the reciprocal bound
// 1/c_m <= 3 pi m^(8/9) 2^(-11/6) (1 + 1/(12 sqrt(6)))^(2/3).
bool cm_upper_bound_check(const CmSolution& sol);

struct HardyConstantReport {
    const char* theorem;     // constant family identifier
    double constant;         // multiplier of the distance-weighted L2 term
    double quotient_bound;   // constant / right-hand-side multiplier
};

HardyConstantReport hardy_constant_polytope(int m);
HardyConstantReport hardy_constant_assumption(double a);

// Faces whose unit normal has |n3| > 1e-12 (redundant halfspaces excluded).
int count_nonorthogonal_faces(const Polytope& P);

// Samples the geometric condition at every vertex and at quasi-random
// interior points for each non-vertical face.
bool check_assumption(const Polytope& P, double a, int n_samples = 100000);

// Prism over a regular n-gon inscribed in the unit disk centered at
// (sqrt(a) + 1, 0), height (0, 1), with a sized so that the domain's Hardy
// constant is at most (2 + eps)^2; a is doubled past the minimal value so
// the sampled condition holds with headroom.
std::pair<Polytope, double> construct_epsilon_domain(double eps, int n_sides = 64);

} // namespace heis

#endif

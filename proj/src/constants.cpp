#include "heis/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heis/plane_gauge.hpp"

namespace heis {

using std::numbers::pi;

namespace {

double cm_lhs(int m, double c) {
    return std::pow(c, 4.0 / 3.0) * pi * m * std::sqrt(c * c + 16.0) *
           std::pow(1.0 + c / k_case_const, 2.0 / 3.0);
}

} // namespace

CmSolution solve_cm(int m) {
    if (m < 1) throw std::domain_error("solve_cm: m must be >= 1");
    const double target = 16.0 / 3.0;
    auto f = [&](double c) { return cm_lhs(m, c) - target; };

    // monotonicity scan; more than one sign change would flag non-uniqueness
    bool unique = true;
    {
        double prev = f(1e-8);
        int changes = 0;
        for (int i = 1; i <= 200; ++i) {
            double c = 1e-8 * std::pow(1e10, i / 200.0);
            double cur = f(c);
            if ((prev < 0.0) != (cur < 0.0)) ++changes;
            prev = cur;
        }
        unique = changes <= 1;
    }

    double lo = 1e-12, hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    while (true) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at ulp width
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double c = 0.5 * (lo + hi);
    return {m, c, f(c), unique};
}

bool cm_upper_bound_check(const CmSolution& sol) {
    double m = sol.m;
    double ub1 = 4.0 * std::cbrt(2.0) / std::cbrt(m * pi);
    double ub2 = 4.0 / std::cbrt(m);
    double recip = 3.0 * pi * std::pow(m, 8.0 / 9.0) * std::pow(2.0, -11.0 / 6.0) *
                   std::pow(1.0 + 1.0 / (12.0 * std::sqrt(6.0)), 2.0 / 3.0);
    return sol.c_m <= ub1 && sol.c_m <= ub2 && 1.0 / sol.c_m <= recip;
}

HardyConstantReport hardy_constant_polytope(int m) {
    CmSolution sol = solve_cm(m);
    double c = 0.2 * std::pow(k_case_const / sol.c_m + 1.0, -4.0 / 3.0);
    return {"3.2", c, c};
}

HardyConstantReport hardy_constant_assumption(double a) {
    if (!(a > 0.0)) throw std::domain_error("hardy_constant_assumption: a must be positive");
    double c = std::pow(k_case_const / a + 1.0, -4.0 / 3.0);
    return {"6.2", c, c / 4.0};
}

int count_nonorthogonal_faces(const Polytope& P) {
    int m = 0;
    for (const auto& f : P.faces())
        if (std::abs(f.unit_n.x3) > 1e-12) ++m;
    return m;
}

bool check_assumption(const Polytope& P, double a, int n_samples) {
    if (!(a > 0.0)) throw std::domain_error("check_assumption: a must be positive");
    std::vector<const Face*> tilted;
    for (const auto& f : P.faces())
        if (std::abs(f.unit_n.x3) > 1e-12) tilted.push_back(&f);

    auto holds_at = [&](Point x) {
        for (const Face* f : tilted) {
            PlaneCaseParams pc = reduced_to_horizontal(f->plane, x);
            double lhs = pc.u1 * pc.u1 + pc.u2 * pc.u2;
            double rhs = a * std::abs(pc.w);
            if (lhs < rhs - 1e-9 * (1.0 + lhs + rhs)) return false;
        }
        return true;
    };

    for (const auto& v : P.vertices())
        if (!holds_at(v)) return false;

    // quasi-random interior samples (additive recurrence, plastic constant)
    const double g = 1.2207440846057596;
    const double a1 = 1.0 / g, a2 = 1.0 / (g * g), a3 = 1.0 / (g * g * g);
    Vec3 lo = P.bbox().lo, ext = P.bbox().extent();
    double s1 = 0.5, s2 = 0.5, s3 = 0.5;
    int accepted = 0;
    for (long n = 0; accepted < n_samples && n < 50L * n_samples; ++n) {
        s1 += a1; s1 -= std::floor(s1);
        s2 += a2; s2 -= std::floor(s2);
        s3 += a3; s3 -= std::floor(s3);
        Point x{lo.x1 + s1 * ext.x1, lo.x2 + s2 * ext.x2, lo.x3 + s3 * ext.x3};
        if (!P.contains(x)) continue;
        ++accepted;
        if (!holds_at(x)) return false;
    }
    return true;
}

std::pair<Polytope, double> construct_epsilon_domain(double eps, int n_sides) {
    if (!(eps > 0.0)) throw std::domain_error("construct_epsilon_domain: eps must be positive");
    if (n_sides < 8) throw std::domain_error("construct_epsilon_domain: need n_sides >= 8");
    double a_min = k_case_const / (std::pow(1.0 + 0.5 * eps, 1.5) - 1.0);
    double a = 2.0 * a_min;
    double cx = std::sqrt(a) + 1.0;
    return {Polytope::prism(n_sides, cx, 0.0, 1.0, 0.0, 1.0), a};
}

} // namespace heis

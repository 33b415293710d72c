#include "heis/geodesics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heis {

using std::numbers::pi;

namespace detail {

double sinc(double t) {
    double s = t * t;
    if (s < 0.01) return 1.0 - s / 6.0 * (1.0 - s / 20.0 * (1.0 - s / 42.0));
    return std::sin(t) / t;
}

double verc(double t) {
    double s = t * t;
    if (s < 0.01) return 0.5 * t * (1.0 - s / 12.0 * (1.0 - s / 30.0 * (1.0 - s / 56.0)));
    // 1 - cos t = 2 sin^2(t/2), no cancellation
    double h = std::sin(0.5 * t);
    return 2.0 * h * h / t;
}

double sin_deficit(double t) {
    double s = t * t;
    if (s < 0.01) return (1.0 / 6.0) * (1.0 - s / 20.0 * (1.0 - s / 42.0 * (1.0 - s / 72.0)));
    return (t - std::sin(t)) / (s * t);
}

double geo_ratio(double tau) {
    if (tau <= 0.0) return 0.0;
    if (tau < 0.02) {
        double s = tau * tau;
        return tau / 12.0 * (1.0 + s / 30.0 + s * s / 840.0);
    }
    double h = std::sin(0.5 * tau);
    return (tau - std::sin(tau)) / (8.0 * h * h);
}

double geo_ratio_deriv(double tau) {
    if (tau < 0.02) {
        double s = tau * tau;
        return 1.0 / 12.0 * (1.0 + s / 10.0);
    }
    double omc = 2.0 * std::sin(0.5 * tau) * std::sin(0.5 * tau);
    double n = omc * omc - (tau - std::sin(tau)) * std::sin(tau);
    return n / (4.0 * omc * omc);
}

namespace {

// rho samples of geo_ratio on a uniform tau grid; seeds the Newton solve.
struct RatioTable {
    static constexpr int N = 8192;
    double tau_lo = 1e-4;
    double tau_hi = 2.0 * pi - 1e-4;
    std::array<double, N + 1> rho{};

    RatioTable() {
        for (int i = 0; i <= N; ++i) rho[i] = geo_ratio(tau_at(i));
    }
    double tau_at(int i) const { return tau_lo + (tau_hi - tau_lo) * i / N; }
};

const RatioTable& ratio_table() {
    static const RatioTable t;
    return t;
}

// Safeguarded Newton on geo_ratio(tau) = rho inside [lo, hi].
double newton_in_bracket(double rho, double lo, double hi, double tau0) {
    double tau = tau0;
    for (int it = 0; it < 200; ++it) {
        if (hi - lo <= 1e-14) break;
        double f = geo_ratio(tau) - rho;
        if (f == 0.0) return tau;
        (f < 0.0 ? lo : hi) = tau;
        double step = f / geo_ratio_deriv(tau);
        double next = tau - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - tau) <= 1e-16 * tau) return next;
        tau = next;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double solve_geo_ratio(double rho) {
    if (rho <= 0.0) return 0.0;
    const RatioTable& tb = ratio_table();
    if (rho <= tb.rho[0]) {
        double tau0 = 12.0 * rho;
        tau0 = 12.0 * rho / (1.0 + tau0 * tau0 / 30.0);
        return newton_in_bracket(rho, 0.0, tb.tau_lo, tau0);
    }
    if (rho >= tb.rho[RatioTable::N]) {
        // asymptotic branch: rho = pi/eps^2 + pi/12 + O(eps), eps = 2*pi - tau
        double eps = std::sqrt(pi / (rho - pi / 12.0));
        return 2.0 * pi - eps;
    }
    int lo = 0, hi = RatioTable::N;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        (tb.rho[mid] <= rho ? lo : hi) = mid;
    }
    double a = tb.tau_at(lo), b = tb.tau_at(hi);
    double w = (rho - tb.rho[lo]) / (tb.rho[hi] - tb.rho[lo]);
    return newton_in_bracket(rho, a, b, a + w * (b - a));
}

double solve_geo_ratio_bisect(double rho) {
    if (rho <= 0.0) return 0.0;
    double lo = 0.0, hi = 2.0 * pi;
    while (hi - lo > 1e-14) {
        double mid = 0.5 * (lo + hi);
        (geo_ratio(mid) < rho ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

Point geodesic_point(const GeodesicParams& g) {
    if (!(g.t >= 0.0)) throw std::domain_error("geodesic_point: t must be >= 0");
    if (g.k != 0.0 && g.t > 2.0 * pi / std::abs(g.k) * (1.0 + 1e-12))
        throw std::domain_error("geodesic_point: t exceeds 2*pi/|k|");
    double tau = g.k * g.t;
    double sn = detail::sinc(tau);
    double vc = detail::verc(tau);
    double st = std::sin(g.theta), ct = std::cos(g.theta);
    return {g.t * (st * sn + ct * vc),
            g.t * (ct * sn - st * vc),
            0.5 * g.t * g.t * tau * detail::sin_deficit(tau)};
}

double cc_distance_origin(Point z) {
    if (!z.finite()) throw std::invalid_argument("cc_distance_origin: non-finite input");
    double r2 = z.x1 * z.x1 + z.x2 * z.x2;
    double a = std::abs(z.x3);
    if (a == 0.0) return std::sqrt(r2);
    if (r2 == 0.0) return 2.0 * std::sqrt(pi * a);
    double rho = a / r2;
    double r = std::sqrt(r2);
    if (rho >= 1e8) {
        // near-vertical points: tau -> 2*pi, direct trig loses the bracket
        double eps = std::sqrt(pi / (rho - pi / 12.0));
        return r * (2.0 * pi - eps) / (eps * (1.0 - eps * eps / 24.0));
    }
    double tau = detail::solve_geo_ratio(rho);
    return r / detail::sinc(0.5 * tau);
}

double cc_distance(Point x, Point y) {
    return cc_distance_origin(group_diff(y, x));
}

double ratio_g(double tau) {
    if (!(tau >= 0.0) || tau > 2.0 * pi + 1e-12)
        throw std::domain_error("ratio_g: tau outside [0, 2*pi]");
    if (tau < 1e-3) {
        double s = tau * tau;
        return 1.0 - s / 18.0 + s * s / 720.0;
    }
    double h = std::sin(0.5 * tau);
    double omc = 2.0 * h * h;
    double def = tau * tau * tau * detail::sin_deficit(tau);
    double t2 = tau * tau;
    return 4.0 * (omc * omc + def * def) / (t2 * t2);
}

} // namespace heis

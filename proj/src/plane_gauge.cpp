#include "heis/plane_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

double cardano_root(CubicCoeffs c) {
    if (!(c.p > 0.0)) throw std::domain_error("cardano_root: p must be positive");
    if (c.q == 0.0) throw std::domain_error("cardano_root: q must be nonzero");
    double q = std::abs(c.q);
    double disc = std::sqrt(0.25 * q * q + c.p * c.p * c.p / 27.0);
    // large-magnitude cube root first; the small one via s+ * s- = -p/3
    double splus = std::cbrt(0.5 * q + disc);
    double z = splus - c.p / (3.0 * splus);
    for (int it = 0; it < 3; ++it) {
        double f = (z * z * z + c.p * z) - q;
        z -= f / (3.0 * z * z + c.p);
    }
    return c.q > 0.0 ? z : -z;
}

double cardano_lower_bound(CubicCoeffs c) {
    if (!(c.p > 0.0)) throw std::domain_error("cardano_lower_bound: p must be positive");
    if (c.q == 0.0) throw std::domain_error("cardano_lower_bound: q must be nonzero");
    double q = std::abs(c.q);
    double t = 1.0 + c.p * std::sqrt(c.p) / (q * 3.0 * std::sqrt(3.0));
    return std::cbrt(q) / 3.0 * std::pow(t, -2.0 / 3.0);
}

Point plane_shift(const Plane& pl) {
    if (pl.n3 == 0.0) throw std::domain_error("plane_shift: vertical plane (n3 = 0)");
    return {-2.0 * pl.n2 / pl.n3, 2.0 * pl.n1 / pl.n3, -pl.c / pl.n3};
}

PlaneCaseParams reduced_to_horizontal(const Plane& pl, Point x) {
    Point v = plane_shift(pl);
    Point s = group_mul(v, x);
    return {s.x1, s.x2, s.x3};
}

namespace {

struct LineSolution {
    double sigma;  // position along the critical line
    double val4;   // objective value (fourth power)
};

// Minimize sigma^4 + vc * (w - sigma*u/2)^2 over the critical line.
LineSolution solve_line(double u, double w, double vc) {
    // d/dsigma = 0  =>  sigma^3 + (vc u^2 / 8) sigma = (vc u w / 4)
    double p = vc * u * u / 8.0;
    double q = vc * u * w / 4.0;
    double sigma = cardano_root({p, q});
    double T = w - 0.5 * sigma * u;
    double s2 = sigma * sigma;
    return {sigma, s2 * s2 + vc * T * T};
}

} // namespace

PlaneGaugeResult gauge_dist_to_plane_solve(const Plane& pl, Point x) {
    PlaneCaseParams pc = reduced_to_horizontal(pl, x);
    Point v = plane_shift(pl);
    double u = std::hypot(pc.u1, pc.u2);
    if (pc.w == 0.0) return {0.0, 0.0, x};

    if (u == 0.0) {
        Point y = group_mul(group_inv(v), Point{0, 0, 0});
        double aw = std::abs(pc.w);
        return {2.0 * std::sqrt(aw), std::sqrt(aw) / 2.0, y};
    }
    LineSolution main = solve_line(u, pc.w, 16.0);
    LineSolution alt = solve_line(u, pc.w, 1.0 / 16.0);
    // line direction orthogonal to (u1, u2)
    double z1 = -main.sigma * pc.u2 / u;
    double z2 = main.sigma * pc.u1 / u;
    Point q{pc.u1 + z1, pc.u2 + z2, 0.0};
    Point y = group_mul(group_inv(v), q);
    return {std::sqrt(std::sqrt(main.val4)), std::sqrt(std::sqrt(alt.val4)), y};
}

double gauge_dist_to_plane_critical(const Plane& pl, Point x) {
    return gauge_dist_to_plane_solve(pl, x).value;
}

double gauge_dist_to_plane_bruteforce(const Plane& pl, Point x, double vertical_coeff) {
    Vec3 n = pl.normal();
    double nn = norm(n);
    if (nn == 0.0) throw std::domain_error("gauge_dist_to_plane_bruteforce: zero normal");
    double side = pl.eval(x) / nn;
    Vec3 nh = (1.0 / nn) * n;
    if (std::abs(side) <= 1e-15 * (1.0 + norm(x.vec()))) return 0.0;

    auto objective4 = [&](Point y) {
        Point d = group_diff(y, x);
        double r2 = d.x1 * d.x1 + d.x2 * d.x2;
        return r2 * r2 + vertical_coeff * d.x3 * d.x3;
    };

    // Euclidean foot point and an in-plane orthonormal basis
    Point p0 = x + (-side) * nh;
    Vec3 eu = cross(nh, Vec3{0, 0, 1});
    if (norm(eu) < 1e-8) eu = cross(nh, Vec3{1, 0, 0});
    eu = (1.0 / norm(eu)) * eu;
    Vec3 ev = cross(nh, eu);

    double g0 = std::sqrt(std::sqrt(objective4(p0)));
    double eucl = std::abs(side);
    double xh = std::hypot(x.x1, x.x2);
    double width = (g0 + eucl) + (g0 * g0 / std::sqrt(vertical_coeff) + 0.5 * xh * g0 + eucl) + 1e-9;

    const int n_grid = 48;
    double cu = 0.0, cv = 0.0;  // window center in (eu, ev) coordinates
    double best = objective4(p0);
    for (int iter = 0; iter < 24; ++iter) {
        int bi = n_grid / 2, bj = n_grid / 2;
        double local_best = best;
        for (int i = 0; i <= n_grid; ++i) {
            for (int j = 0; j <= n_grid; ++j) {
                double uu = cu + width * (2.0 * i / n_grid - 1.0);
                double vv = cv + width * (2.0 * j / n_grid - 1.0);
                double f = objective4(p0 + uu * eu + vv * ev);
                if (f < local_best) {
                    local_best = f;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (local_best < best) {
            best = local_best;
            cu += width * (2.0 * bi / n_grid - 1.0);
            cv += width * (2.0 * bj / n_grid - 1.0);
        }
        if (bi == 0 || bi == n_grid || bj == 0 || bj == n_grid) {
            width *= 2.0;  // minimum escaped the window, chase it
        } else {
            width *= 6.0 / n_grid;
        }
        if (width <= 1e-6 * (1.0 + std::abs(cu) + std::abs(cv))) break;
    }
    // Nelder-Mead polish: the quartic valley is narrow and curved, which
    // defeats axis-aligned refinement
    auto fuv = [&](double uu, double vv) { return objective4(p0 + uu * eu + vv * ev); };
    double step = 4.0 * width / n_grid + 1e-12;
    double su[3] = {cu, cu + step, cu};
    double sv[3] = {cv, cv, cv + step};
    double sf[3] = {fuv(su[0], sv[0]), fuv(su[1], sv[1]), fuv(su[2], sv[2])};
    for (int iter = 0; iter < 600; ++iter) {
        int lo = 0, hi = 0;
        for (int i = 1; i < 3; ++i) {
            if (sf[i] < sf[lo]) lo = i;
            if (sf[i] > sf[hi]) hi = i;
        }
        if (sf[hi] - sf[lo] <= 1e-15 * (std::abs(sf[lo]) + 1e-300)) break;
        int mid = 3 - lo - hi;
        double mu = 0.5 * (su[lo] + su[mid]), mv = 0.5 * (sv[lo] + sv[mid]);
        double ru = 2.0 * mu - su[hi], rv = 2.0 * mv - sv[hi];
        double fr = fuv(ru, rv);
        if (fr < sf[lo]) {
            double xu = mu + 2.0 * (ru - mu), xv = mv + 2.0 * (rv - mv);
            double fx = fuv(xu, xv);
            if (fx < fr) {
                su[hi] = xu; sv[hi] = xv; sf[hi] = fx;
            } else {
                su[hi] = ru; sv[hi] = rv; sf[hi] = fr;
            }
        } else if (fr < sf[mid]) {
            su[hi] = ru; sv[hi] = rv; sf[hi] = fr;
        } else {
            double ku = 0.5 * (su[hi] + mu), kv = 0.5 * (sv[hi] + mv);
            double fk = fuv(ku, kv);
            if (fk < sf[hi]) {
                su[hi] = ku; sv[hi] = kv; sf[hi] = fk;
            } else {
                for (int i = 0; i < 3; ++i) {
                    if (i == lo) continue;
                    su[i] = 0.5 * (su[i] + su[lo]);
                    sv[i] = 0.5 * (sv[i] + sv[lo]);
                    sf[i] = fuv(su[i], sv[i]);
                }
            }
        }
    }
    best = std::min({best, sf[0], sf[1], sf[2]});
    return std::sqrt(std::sqrt(best));
}

PropBound prop_lower_bound(const PlaneCaseParams& params, double a) {
    if (!(a > 0.0)) throw std::domain_error("prop_lower_bound: a must be positive");
    if (params.w == 0.0) throw std::domain_error("prop_lower_bound: w must be nonzero");
    double u2 = params.u1 * params.u1 + params.u2 * params.u2;
    double aw = std::abs(params.w);
    double k = 48.0 * std::sqrt(6.0);
    if (u2 <= a * aw) {
        double b = aw / 108.0 * std::pow(1.0 + a / k, -2.0);
        return {BoundCase::height, b};
    }
    double b = 4.0 * params.w * params.w / u2 * std::pow(k / a + 1.0, -4.0 / 3.0);
    return {BoundCase::radial, b};
}

} // namespace heis

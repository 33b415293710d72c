#include "heis/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

namespace detail {

void GradientForm::apply(const std::vector<double>& u, std::vector<double>& y, par::Exec e) const {
    y.resize(nrows);
    par::for_each_index(nrows, [&](std::size_t r) {
        double s = 0.0;
        for (std::int64_t t = row_ptr[r]; t < row_ptr[r + 1]; ++t) s += val[t] * u[col[t]];
        y[r] = s;
    }, e);
}

void GradientForm::apply_transpose(const std::vector<double>& y, std::vector<double>& out,
                                   par::Exec e) const {
    std::size_t ncols = colT_ptr.size() - 1;
    out.resize(ncols);
    par::for_each_index(ncols, [&](std::size_t c) {
        double s = 0.0;
        for (std::int64_t t = colT_ptr[c]; t < colT_ptr[c + 1]; ++t) s += valT[t] * y[rowT[t]];
        out[c] = s;
    }, e);
}

GradientForm build_gradient_form(const Grid& g) {
    const auto& mask = g.mask();
    auto n = g.res();
    auto h = g.spacing();
    std::size_t ncells = g.ncells();

    auto at = [&](int i, int j, int k) -> std::size_t { return g.index(i, j, k); };
    auto in_mask = [&](int i, int j, int k) -> bool {
        if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) return false;
        return mask[at(i, j, k)] != 0;
    };

    GradientForm D;
    D.row_ptr.push_back(0);
    auto push_row = [&](std::initializer_list<std::pair<std::size_t, double>> entries) {
        int cnt = 0;
        for (const auto& [c, v] : entries) {
            if (v == 0.0) continue;
            D.col.push_back((int)c);
            D.val.push_back(v);
            ++cnt;
        }
        if (cnt == 0) {
            return;
        }
        D.row_ptr.push_back((std::int64_t)D.col.size());
        ++D.nrows;
    };

    for (int k = 0; k < n[2]; ++k) {
        for (int j = 0; j < n[1]; ++j) {
            for (int i = 0; i < n[0]; ++i) {
                bool m0 = in_mask(i, j, k);
                bool m1 = in_mask(i + 1, j, k);
                bool m2 = in_mask(i, j + 1, k);
                bool m3 = in_mask(i, j, k + 1);
                if (!(m0 || m1 || m2 || m3)) continue;
                Point c = g.center(i, j, k);
                std::size_t i0 = at(i, j, k);
                // X1 = d/dx1 + (x2/2) d/dx3, forward differences
                {
                    double a0 = (m0 ? -1.0 / h[0] : 0.0) + (m0 ? -0.5 * c.x2 / h[2] : 0.0);
                    push_row({{i0, a0},
                              {m1 ? at(i + 1, j, k) : 0, m1 ? 1.0 / h[0] : 0.0},
                              {m3 ? at(i, j, k + 1) : 0, m3 ? 0.5 * c.x2 / h[2] : 0.0}});
                }
                // X2 = d/dx2 - (x1/2) d/dx3
                {
                    double a0 = (m0 ? -1.0 / h[1] : 0.0) + (m0 ? 0.5 * c.x1 / h[2] : 0.0);
                    push_row({{i0, a0},
                              {m2 ? at(i, j + 1, k) : 0, m2 ? 1.0 / h[1] : 0.0},
                              {m3 ? at(i, j, k + 1) : 0, m3 ? -0.5 * c.x1 / h[2] : 0.0}});
                }
            }
        }
    }
    // rows one layer outside the grid: only the aligned forward term survives
    for (int k = 0; k < n[2]; ++k) {
        for (int j = 0; j < n[1]; ++j) {
            for (int i = 0; i < n[0]; ++i) {
                if (!mask[at(i, j, k)]) continue;
                Point c = g.center(i, j, k);
                if (i == 0) push_row({{at(i, j, k), 1.0 / h[0]}});
                if (j == 0) push_row({{at(i, j, k), 1.0 / h[1]}});
                if (k == 0) {
                    push_row({{at(i, j, k), 0.5 * c.x2 / h[2]}});
                    push_row({{at(i, j, k), -0.5 * c.x1 / h[2]}});
                }
            }
        }
    }

    // transpose
    D.colT_ptr.assign(ncells + 1, 0);
    for (int c : D.col) ++D.colT_ptr[c + 1];
    for (std::size_t c = 0; c < ncells; ++c) D.colT_ptr[c + 1] += D.colT_ptr[c];
    D.rowT.resize(D.col.size());
    D.valT.resize(D.col.size());
    std::vector<std::int64_t> cursor(D.colT_ptr.begin(), D.colT_ptr.end() - 1);
    for (std::size_t r = 0; r < D.nrows; ++r) {
        for (std::int64_t t = D.row_ptr[r]; t < D.row_ptr[r + 1]; ++t) {
            std::int64_t dst = cursor[D.col[t]]++;
            D.rowT[dst] = (int)r;
            D.valT[dst] = D.val[t];
        }
    }
    return D;
}

double energy(const Grid& g, const GradientForm& D, const GridFunction& u) {
    std::vector<double> y;
    D.apply(u, y, g.exec());
    return g.cell_volume() * par::dot(y, y, g.exec());
}

} // namespace detail

std::array<std::vector<double>, 2> sub_gradient(const Grid& g, const GridFunction& u) {
    if (u.size() != g.ncells()) throw std::invalid_argument("sub_gradient: size mismatch");
    auto n = g.res();
    auto h = g.spacing();
    const auto& mask = g.mask();
    std::array<std::vector<double>, 2> out;
    out[0].assign(g.ncells(), 0.0);
    out[1].assign(g.ncells(), 0.0);

    auto in_mask = [&](int i, int j, int k) -> bool {
        if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) return false;
        return mask[g.index(i, j, k)] != 0;
    };
    // centered difference, one-sided at the mask boundary
    auto diff = [&](int i, int j, int k, int axis) -> double {
        int di = axis == 0, dj = axis == 1, dk = axis == 2;
        bool up = in_mask(i + di, j + dj, k + dk);
        bool dn = in_mask(i - di, j - dj, k - dk);
        std::size_t idx = g.index(i, j, k);
        if (up && dn)
            return (u[g.index(i + di, j + dj, k + dk)] - u[g.index(i - di, j - dj, k - dk)]) /
                   (2.0 * h[axis]);
        if (up) return (u[g.index(i + di, j + dj, k + dk)] - u[idx]) / h[axis];
        if (dn) return (u[idx] - u[g.index(i - di, j - dj, k - dk)]) / h[axis];
        return 0.0;
    };

    par::for_each_index(g.ncells(), [&](std::size_t idx) {
        if (!mask[idx]) return;
        int i = (int)(idx % n[0]);
        int j = (int)((idx / n[0]) % n[1]);
        int k = (int)(idx / ((std::size_t)n[0] * n[1]));
        Point c = g.center(i, j, k);
        double d1 = diff(i, j, k, 0);
        double d2 = diff(i, j, k, 1);
        double d3 = diff(i, j, k, 2);
        out[0][idx] = d1 + 0.5 * c.x2 * d3;
        out[1][idx] = d2 - 0.5 * c.x1 * d3;
    }, g.exec());
    return out;
}

double quotient(const Grid& g, const GridFunction& u, const WeightField& w) {
    if (u.size() != g.ncells()) throw std::invalid_argument("quotient: size mismatch");
    const auto& mask = g.mask();
    GridFunction um(u);
    for (std::size_t i = 0; i < um.size(); ++i)
        if (!mask[i]) um[i] = 0.0;
    detail::GradientForm D = detail::build_gradient_form(g);
    double num = detail::energy(g, D, um);
    std::vector<double> wu(um.size());
    par::for_each_index(um.size(), [&](std::size_t i) { wu[i] = w.w[i] * um[i]; }, g.exec());
    double den = g.cell_volume() * par::dot(wu, um, g.exec());
    if (!(den > 0.0)) throw std::invalid_argument("quotient: u vanishes on the mask");
    return num / den;
}

GridFunction trial_sequence(const Grid& g, int n) {
    if (n < 1) throw std::domain_error("trial_sequence: n must be >= 1");
    const auto& d = g.delta_c_field();
    const auto& mask = g.mask();
    double expo = 0.5 + 1.0 / n;
    GridFunction u(g.ncells(), 0.0);
    par::for_each_index(g.ncells(), [&](std::size_t i) {
        if (mask[i]) u[i] = std::pow(d[i], expo);
    }, g.exec());
    return u;
}

namespace {

// Preconditioned CG for (D^T D) x = b on mask cells.
int cg_solve(const Grid& g, const detail::GradientForm& D, const std::vector<double>& diag,
             const std::vector<double>& b, std::vector<double>& x, double rtol, int maxit) {
    const auto& mask = g.active();
    par::Exec e = g.exec();
    std::size_t nc = g.ncells();
    std::vector<double> y, r(nc), z(nc), p(nc), ap(nc);

    auto apply_A = [&](const std::vector<double>& in, std::vector<double>& out) {
        D.apply(in, y, e);
        D.apply_transpose(y, out, e);
        par::for_each_index(nc, [&](std::size_t i) {
            if (!mask[i]) out[i] = 0.0;
        }, e);
    };

    apply_A(x, ap);
    par::for_each_index(nc, [&](std::size_t i) { r[i] = mask[i] ? b[i] - ap[i] : 0.0; }, e);
    double bnorm2 = par::dot(b, b, e);
    double tol2 = rtol * rtol * bnorm2;
    par::for_each_index(nc, [&](std::size_t i) { z[i] = mask[i] ? r[i] / diag[i] : 0.0; }, e);
    p = z;
    double rz = par::dot(r, z, e);
    int it = 0;
    for (; it < maxit; ++it) {
        double rr = par::dot(r, r, e);
        if (rr <= tol2) break;
        apply_A(p, ap);
        double pap = par::dot(p, ap, e);
        if (!(pap > 0.0)) break;
        double alpha = rz / pap;
        par::for_each_index(nc, [&](std::size_t i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }, e);
        par::for_each_index(nc, [&](std::size_t i) { z[i] = mask[i] ? r[i] / diag[i] : 0.0; }, e);
        double rz_new = par::dot(r, z, e);
        double beta = rz_new / rz;
        rz = rz_new;
        par::for_each_index(nc, [&](std::size_t i) { p[i] = z[i] + beta * p[i]; }, e);
    }
    return it;
}

} // namespace

MinimizeResult minimize_quotient(const Grid& g, const WeightField& w, int max_iters) {
    std::vector<std::uint8_t> mask = g.active();  // Dirichlet space: one-cell zero margin
    par::Exec e = g.exec();
    std::size_t nc = g.ncells();
    if (w.point_singular) {
        // exclude a one-cell margin around the singular point as well
        auto n = g.res();
        auto h = g.spacing();
        double r = 1.001 * std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
        par::for_each_index(nc, [&](std::size_t idx) {
            if (!mask[idx]) return;
            int i = (int)(idx % n[0]);
            int j = (int)((idx / n[0]) % n[1]);
            int k = (int)(idx / ((std::size_t)n[0] * n[1]));
            Point c = g.center(i, j, k);
            if (norm(c.vec() - w.origin.vec()) < r) mask[idx] = 0;
        }, e);
    }
    detail::GradientForm D = detail::build_gradient_form(g);
    // seed with the expected extremal profile: sqrt(distance) for boundary
    // weights, concentration at the singular point for point weights
    bool point_like = w.kind == WeightKind::point_cc || w.kind == WeightKind::kaplan_origin;
    double seed_pow = point_like ? 0.5 : -0.25;

    // Jacobi diagonal of D^T D
    std::vector<double> diag(nc, 1.0);
    for (std::size_t c = 0; c < nc; ++c) {
        if (!mask[c]) continue;
        double s = 0.0;
        for (std::int64_t t = D.colT_ptr[c]; t < D.colT_ptr[c + 1]; ++t)
            s += D.valT[t] * D.valT[t];
        diag[c] = s > 0.0 ? s : 1.0;
    }

    std::vector<double> u(nc, 0.0), v(nc, 0.0), bu(nc, 0.0), y;
    par::for_each_index(nc, [&](std::size_t i) {
        if (mask[i]) u[i] = std::pow(w.w[i], seed_pow);
    }, e);

    auto b_norm = [&](const std::vector<double>& x) {
        std::vector<double> wx(nc);
        par::for_each_index(nc, [&](std::size_t i) { wx[i] = w.w[i] * x[i]; }, e);
        return par::dot(wx, x, e);
    };
    double nb = std::sqrt(b_norm(u));
    par::for_each_index(nc, [&](std::size_t i) { u[i] /= nb; }, e);

    double lambda = 0.0;
    bool converged = false;
    int it = 0;
    for (; it < max_iters; ++it) {
        par::for_each_index(nc, [&](std::size_t i) { bu[i] = mask[i] ? w.w[i] * u[i] : 0.0; }, e);
        cg_solve(g, D, diag, bu, v, 1e-6, 4000);
        D.apply(v, y, e);
        double num = par::dot(y, y, e);
        double den = b_norm(v);
        double lam = num / den;
        double nv = std::sqrt(den);
        par::for_each_index(nc, [&](std::size_t i) { u[i] = mask[i] ? v[i] / nv : 0.0; }, e);
        if (it > 0 && std::abs(lam - lambda) <= 1e-8 * std::abs(lam)) {
            lambda = lam;
            ++it;
            converged = true;
            break;
        }
        lambda = lam;
    }
    return {lambda, u, converged, it};
}

} // namespace heis

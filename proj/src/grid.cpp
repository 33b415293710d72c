#include "heis/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "heis/constants.hpp"
#include "heis/geodesics.hpp"

namespace heis {

const char* weight_kind_name(WeightKind k) {
    switch (k) {
        case WeightKind::delta_c: return "delta_c";
        case WeightKind::delta_k: return "delta_k";
        case WeightKind::omega: return "omega";
        case WeightKind::d1d2: return "d1d2";
        case WeightKind::point_cc: return "point_cc";
        case WeightKind::kaplan_origin: return "kaplan_origin";
        case WeightKind::half_space_ly: return "half_space_ly";
    }
    return "?";
}

WeightKind weight_kind_from_name(const std::string& name) {
    for (WeightKind k : {WeightKind::delta_c, WeightKind::delta_k, WeightKind::omega,
                         WeightKind::d1d2, WeightKind::point_cc, WeightKind::kaplan_origin,
                         WeightKind::half_space_ly}) {
        if (name == weight_kind_name(k)) return k;
    }
    throw std::invalid_argument("unknown weight kind: " + name);
}

Grid::Grid(const Polytope& P, std::array<int, 3> res)
    : poly_(&P), box_(P.bbox()), n_(res), exec_(par::default_exec()) {
    for (int d = 0; d < 3; ++d) {
        if (n_[d] < 2) throw std::invalid_argument("grid: resolution must be >= 2");
    }
    Vec3 ext = box_.extent();
    h_ = {ext.x1 / n_[0], ext.x2 / n_[1], ext.x3 / n_[2]};
    mask_.assign(ncells(), 0);
    std::vector<std::uint8_t>& m = mask_;
    par::for_each_index(ncells(), [&](std::size_t idx) {
        int i = (int)(idx % n_[0]);
        int j = (int)((idx / n_[0]) % n_[1]);
        int k = (int)(idx / ((std::size_t)n_[0] * n_[1]));
        m[idx] = poly_->contains(center(i, j, k)) ? 1 : 0;
    }, exec_);
    for (auto b : mask_) mask_count_ += b;
    if (mask_count_ == 0) throw std::invalid_argument("grid: empty interior mask");
    active_.assign(ncells(), 0);
    auto in_mask = [&](int i, int j, int k) {
        if (i < 0 || j < 0 || k < 0 || i >= n_[0] || j >= n_[1] || k >= n_[2]) return false;
        return mask_[index(i, j, k)] != 0;
    };
    par::for_each_index(ncells(), [&](std::size_t idx) {
        if (!mask_[idx]) return;
        int i = (int)(idx % n_[0]);
        int j = (int)((idx / n_[0]) % n_[1]);
        int k = (int)(idx / ((std::size_t)n_[0] * n_[1]));
        bool interior = in_mask(i - 1, j, k) && in_mask(i + 1, j, k) && in_mask(i, j - 1, k) &&
                        in_mask(i, j + 1, k) && in_mask(i, j, k - 1) && in_mask(i, j, k + 1);
        active_[idx] = interior ? 1 : 0;
    }, exec_);
    for (auto b : active_) active_count_ += b;
}

const std::vector<double>& Grid::cached(int slot, double (*eval)(const Polytope&, Point)) const {
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        if (!cache_[slot].empty()) return cache_[slot];
    }
    std::vector<double> field(ncells(), 0.0);
    par::for_each_index(ncells(), [&](std::size_t idx) {
        if (!mask_[idx]) return;
        int i = (int)(idx % n_[0]);
        int j = (int)((idx / n_[0]) % n_[1]);
        int k = (int)(idx / ((std::size_t)n_[0] * n_[1]));
        field[idx] = eval(*poly_, center(i, j, k));
    }, exec_);
    std::lock_guard<std::mutex> lk(cache_mu_);
    if (cache_[slot].empty()) cache_[slot] = std::move(field);
    return cache_[slot];
}

const std::vector<double>& Grid::delta_c_field() const {
    return cached(0, [](const Polytope& P, Point x) { return P.delta_c(x); });
}
const std::vector<double>& Grid::delta_k_field() const {
    return cached(1, [](const Polytope& P, Point x) { return P.delta_k(x); });
}
const std::vector<double>& Grid::omega_field() const {
    return cached(2, [](const Polytope& P, Point x) { return P.omega(x); });
}
const std::vector<double>& Grid::d1_field() const {
    return cached(3, [](const Polytope& P, Point x) { return P.d1(x); });
}
const std::vector<double>& Grid::d2_field() const {
    return cached(4, [](const Polytope& P, Point x) { return P.d2(x); });
}

WeightField weight_field(const Grid& g, WeightKind kind, Point origin) {
    WeightField out;
    out.kind = kind;
    out.w.assign(g.ncells(), 0.0);
    const auto& mask = g.mask();
    auto res = g.res();

    auto fill = [&](auto&& f) {
        par::for_each_index(g.ncells(), [&](std::size_t idx) {
            if (!mask[idx]) return;
            int i = (int)(idx % res[0]);
            int j = (int)((idx / res[0]) % res[1]);
            int k = (int)(idx / ((std::size_t)res[0] * res[1]));
            out.w[idx] = f(idx, g.center(i, j, k));
        }, g.exec());
    };

    switch (kind) {
        case WeightKind::delta_c: {
            const auto& d = g.delta_c_field();
            fill([&](std::size_t idx, Point) { return 1.0 / (d[idx] * d[idx]); });
            out.quotient_bound =
                hardy_constant_polytope(count_nonorthogonal_faces(g.polytope())).quotient_bound;
            break;
        }
        case WeightKind::delta_k: {
            const auto& d = g.delta_k_field();
            fill([&](std::size_t idx, Point) { return 1.0 / (d[idx] * d[idx]); });
            out.quotient_bound =
                hardy_constant_polytope(count_nonorthogonal_faces(g.polytope())).quotient_bound;
            break;
        }
        case WeightKind::omega: {
            const auto& d = g.omega_field();
            fill([&](std::size_t idx, Point) { return 1.0 / (d[idx] * d[idx]); });
            out.quotient_bound = 0.25;
            break;
        }
        case WeightKind::d1d2: {
            const auto& a = g.d1_field();
            const auto& b = g.d2_field();
            fill([&](std::size_t idx, Point) {
                return 1.0 / (a[idx] * a[idx]) + 1.0 / (b[idx] * b[idx]);
            });
            out.quotient_bound = 0.25;
            break;
        }
        case WeightKind::point_cc: {
            fill([&](std::size_t, Point x) {
                double d = cc_distance(x, origin);
                return 1.0 / (d * d);
            });
            out.quotient_bound = 1.0;
            out.point_singular = true;
            out.origin = origin;
            break;
        }
        case WeightKind::kaplan_origin: {
            fill([&](std::size_t, Point x) {
                Point z = group_diff(origin, x);
                double r2 = z.x1 * z.x1 + z.x2 * z.x2;
                return r2 / kaplan_gauge4(z);
            });
            out.quotient_bound = 1.0;
            out.point_singular = true;
            out.origin = origin;
            break;
        }
        case WeightKind::half_space_ly: {
            fill([&](std::size_t, Point x) {
                return (x.x1 * x.x1 + x.x2 * x.x2) / (4.0 * x.x3 * x.x3);
            });
            out.quotient_bound = 0.25;
            break;
        }
    }
    for (std::size_t idx = 0; idx < g.ncells(); ++idx) {
        if (mask[idx] && !(out.w[idx] > 0.0 && std::isfinite(out.w[idx])))
            throw std::domain_error("weight_field: singular weight on a mask cell");
    }
    return out;
}

} // namespace heis

// Regular-lattice discretization of functions on a polytope.
//
// Cells whose centers fall strictly inside the polytope form the mask;
// grid functions live on mask cells and are treated as zero everywhere
// else, which enforces the Dirichlet condition.  Distance fields over the
// mask are cached per grid since delta_C dominates the assembly cost; the
// per-cell kernels run serially or under OpenMP (see parallel.hpp).
#ifndef HEIS_GRID_HPP
#define HEIS_GRID_HPP

#include <array>
#include <cstdint>
#include <mutex>
#include <vector>

#include "heis/parallel.hpp"
#include "heis/polytope.hpp"

namespace heis {

using GridFunction = std::vector<double>;  // one value per grid cell

enum class WeightKind {
    delta_c,        // 1 / delta_C^2
    delta_k,        // 1 / delta_K^2
    omega,          // 1 / omega^2
    d1d2,           // 1/d1^2 + 1/d2^2
    point_cc,       // 1 / d_C(x, origin)^2
    kaplan_origin,  // (x1^2 + x2^2) / |x|^4 around origin
    half_space_ly,  // (x1^2 + x2^2) / (4 x3^2)
};

const char* weight_kind_name(WeightKind k);
WeightKind weight_kind_from_name(const std::string& name);

struct WeightField {
    WeightKind kind;
    std::vector<double> w;        // per-cell weight, positive on the mask
    double quotient_bound = 0;    // proven lower bound for the Rayleigh quotient
    bool point_singular = false;  // weight singular at an interior point
    Point origin;                 // the singular point for point weights
};

class Grid {
public:
    Grid(const Polytope& P, std::array<int, 3> res);

    const Polytope& polytope() const { return *poly_; }
    const Aabb& box() const { return box_; }
    std::array<int, 3> res() const { return n_; }
    std::array<double, 3> spacing() const { return h_; }
    double cell_volume() const { return h_[0] * h_[1] * h_[2]; }

    std::size_t ncells() const { return (std::size_t)n_[0] * n_[1] * n_[2]; }
    std::size_t index(int i, int j, int k) const {
        return ((std::size_t)k * n_[1] + j) * n_[0] + i;
    }
    Point center(int i, int j, int k) const {
        return {box_.lo.x1 + (i + 0.5) * h_[0],
                box_.lo.x2 + (j + 0.5) * h_[1],
                box_.lo.x3 + (k + 0.5) * h_[2]};
    }
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    std::size_t mask_count() const { return mask_count_; }
    // mask minus its one-cell boundary layer: the Dirichlet space for
    // minimization (grid functions are zero on the margin and outside)
    const std::vector<std::uint8_t>& active() const { return active_; }
    std::size_t active_count() const { return active_count_; }

    // Cached distance fields (valid on mask cells only).
    const std::vector<double>& delta_c_field() const;
    const std::vector<double>& delta_k_field() const;
    const std::vector<double>& omega_field() const;
    const std::vector<double>& d1_field() const;
    const std::vector<double>& d2_field() const;

    par::Exec exec() const { return exec_; }
    void set_exec(par::Exec e) { exec_ = e; }

private:
    const std::vector<double>& cached(int slot, double (*eval)(const Polytope&, Point)) const;

    const Polytope* poly_;
    Aabb box_;
    std::array<int, 3> n_;
    std::array<double, 3> h_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::uint8_t> active_;
    std::size_t mask_count_ = 0;
    std::size_t active_count_ = 0;
    par::Exec exec_;

    mutable std::mutex cache_mu_;
    mutable std::array<std::vector<double>, 5> cache_;
};

// Per-cell weight evaluation; origin only matters for the point weights.
// Throws if a singular weight lands on a mask cell center.
WeightField weight_field(const Grid& g, WeightKind kind, Point origin = {});

} // namespace heis

#endif

// Discrete horizontal gradient, Rayleigh quotients and their minimization.
//
// The quadratic form uses forward differences with zero extension outside
// the mask (a staggered-type discretization; centered differences alone
// would decouple odd and even cells).  The standalone sub_gradient operator
// uses centered differences with one-sided fallback at the mask boundary
// and serves the diagnostic checks, e.g. |grad_H delta_C| = 1.
#ifndef HEIS_QUOTIENT_HPP
#define HEIS_QUOTIENT_HPP

#include "heis/grid.hpp"

namespace heis {

// X1 u and X2 u per cell (valid on mask cells).
std::array<std::vector<double>, 2> sub_gradient(const Grid& g, const GridFunction& u);

// (sum |grad_H u|^2 vol) / (sum w u^2 vol).  Throws if u vanishes on the mask.
double quotient(const Grid& g, const GridFunction& u, const WeightField& w);

// delta_C^(1/2 + 1/n) on mask cells, zero outside.
GridFunction trial_sequence(const Grid& g, int n);

struct MinimizeResult {
    double value = 0;
    GridFunction minimizer;
    bool converged = false;
    int iterations = 0;
};

// Smallest generalized eigenvalue of (grad form, weight form) by inverse
// power iteration with conjugate-gradient inner solves.  Iterates are
// monotone non-increasing; stops at relative change 1e-8 or max_iters.
MinimizeResult minimize_quotient(const Grid& g, const WeightField& w, int max_iters = 500);

namespace detail {

// Sparse rows of the discrete horizontal gradient: two rows per cell over
// every cell whose forward stencil reaches into the mask (including cells
// one layer outside), plus the transpose in compressed form.
struct GradientForm {
    std::size_t nrows = 0;
    std::vector<std::int64_t> row_ptr;
    std::vector<int> col;
    std::vector<double> val;
    std::vector<std::int64_t> colT_ptr;
    std::vector<int> rowT;
    std::vector<double> valT;

    void apply(const std::vector<double>& u, std::vector<double>& y, par::Exec e) const;
    void apply_transpose(const std::vector<double>& y, std::vector<double>& out, par::Exec e) const;
};

GradientForm build_gradient_form(const Grid& g);
double energy(const Grid& g, const GradientForm& D, const GridFunction& u);

} // namespace detail

} // namespace heis

#endif

#include "heis/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heis::par {

int max_threads() {
    static int cached = [] {
#ifdef _OPENMP
        int n = omp_get_max_threads();
#else
        int n = 1;
#endif
        if (const char* env = std::getenv("HEISENHARDY_THREADS")) {
            int cap = std::atoi(env);
            if (cap > 0) n = std::min(n, cap);
        }
        return n;
    }();
    return cached;
}

Exec default_exec() {
#ifdef _OPENMP
    return max_threads() > 1 ? Exec::openmp : Exec::serial;
#else
    return Exec::serial;
#endif
}

namespace detail {

void parallel_blocks(std::size_t nblocks, void* ctx, void (*body)(void*, std::size_t)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(max_threads())
    for (long long b = 0; b < (long long)nblocks; ++b) body(ctx, (std::size_t)b);
#else
    for (std::size_t b = 0; b < nblocks; ++b) body(ctx, b);
#endif
}

} // namespace detail

static double blocked_reduce(const std::vector<double>& a, const std::vector<double>* b, Exec exec) {
    std::size_t n = a.size();
    std::size_t nblocks = (n + detail::kBlock - 1) / detail::kBlock;
    std::vector<double> partial(nblocks, 0.0);
    struct Ctx {
        const double* a;
        const double* b;
        double* out;
        std::size_t n;
    } ctx{a.data(), b ? b->data() : nullptr, partial.data(), n};
    auto body = [](void* p, std::size_t blk) {
        auto* c = static_cast<Ctx*>(p);
        std::size_t lo = blk * detail::kBlock;
        std::size_t hi = std::min(lo + detail::kBlock, c->n);
        double s = 0.0;
        if (c->b) {
            for (std::size_t i = lo; i < hi; ++i) s += c->a[i] * c->b[i];
        } else {
            for (std::size_t i = lo; i < hi; ++i) s += c->a[i];
        }
        c->out[blk] = s;
    };
    if (exec == Exec::serial) {
        for (std::size_t blk = 0; blk < nblocks; ++blk) body(&ctx, blk);
    } else {
        detail::parallel_blocks(nblocks, &ctx, body);
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

double dot(const std::vector<double>& a, const std::vector<double>& b, Exec exec) {
    return blocked_reduce(a, &b, exec);
}

double sum(const std::vector<double>& a, Exec exec) {
    return blocked_reduce(a, nullptr, exec);
}

} // namespace heis::par

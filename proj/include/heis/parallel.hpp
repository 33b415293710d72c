// Execution helpers: every hot kernel in this library runs either serially or
// under OpenMP through for_each_index(), so tests can compare the two paths.
// Reductions use a fixed block decomposition, which makes results independent
// of the thread count.
#ifndef HEIS_PARALLEL_HPP
#define HEIS_PARALLEL_HPP

#include <cstddef>
#include <vector>

namespace heis::par {

enum class Exec { serial, openmp };

// Default execution policy: openmp when compiled in, capped by the
// HEISENHARDY_THREADS environment variable (read once).
Exec default_exec();
int max_threads();

// Applies fn(i) for i in [0, n). The openmp path parallelizes over i;
// fn must only write to locations owned by index i.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn, Exec exec);

// Blocked dot product and sum-reduction. The block partition is fixed
// (independent of thread count), so serial and openmp agree bitwise.
double dot(const std::vector<double>& a, const std::vector<double>& b, Exec exec);
double sum(const std::vector<double>& a, Exec exec);

namespace detail {
constexpr std::size_t kBlock = 2048;
void parallel_blocks(std::size_t nblocks, void* ctx, void (*body)(void*, std::size_t));
}

template <class Fn>
void for_each_index(std::size_t n, Fn&& fn, Exec exec) {
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    struct Ctx {
        Fn* fn;
        std::size_t n;
    } ctx{&fn, n};
    std::size_t nblocks = (n + detail::kBlock - 1) / detail::kBlock;
    detail::parallel_blocks(nblocks, &ctx, [](void* p, std::size_t b) {
        auto* c = static_cast<Ctx*>(p);
        std::size_t lo = b * detail::kBlock;
        std::size_t hi = lo + detail::kBlock < c->n ? lo + detail::kBlock : c->n;
        for (std::size_t i = lo; i < hi; ++i) (*c->fn)(i);
    });
}

} // namespace heis::par

#endif

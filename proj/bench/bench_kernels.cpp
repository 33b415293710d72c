// Timings for the data-parallel kernels, serial vs OpenMP.
// Usage: bench_kernels [grid]   (default 32)

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "heis/grid.hpp"
#include "heis/parallel.hpp"
#include "heis/polytope.hpp"
#include "heis/quotient.hpp"

using namespace heis;
using Clock = std::chrono::steady_clock;

namespace {

double time_of(void (*fn)(void*), void* ctx, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        fn(ctx);
        double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        if (dt < best) best = dt;
    }
    return best;
}

struct BenchCtx {
    const Polytope* poly;
    int n;
    par::Exec exec;
    double sink = 0;
};

void bench_delta_c(void* p) {
    auto* c = static_cast<BenchCtx*>(p);
    Grid g(*c->poly, {c->n, c->n, c->n});
    g.set_exec(c->exec);
    c->sink += g.delta_c_field()[g.ncells() / 2];
}

void bench_weights(void* p) {
    auto* c = static_cast<BenchCtx*>(p);
    Grid g(*c->poly, {c->n, c->n, c->n});
    g.set_exec(c->exec);
    c->sink += weight_field(g, WeightKind::d1d2).w[g.ncells() / 2];
}

void bench_matvec(void* p) {
    auto* c = static_cast<BenchCtx*>(p);
    Grid g(*c->poly, {c->n, c->n, c->n});
    g.set_exec(c->exec);
    detail::GradientForm D = detail::build_gradient_form(g);
    std::vector<double> u(g.ncells(), 1.0), y, z;
    for (int i = 0; i < 50; ++i) {
        D.apply(u, y, c->exec);
        D.apply_transpose(y, z, c->exec);
    }
    c->sink += z[g.ncells() / 2];
}

void bench_dot(void* p) {
    auto* c = static_cast<BenchCtx*>(p);
    std::vector<double> a((std::size_t)c->n * c->n * c->n, 1.5);
    double s = 0;
    for (int i = 0; i < 200; ++i) s += par::dot(a, a, c->exec);
    c->sink += s;
}

} // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 32;
    Polytope cube = Polytope::cube(1.0);
    struct Row {
        const char* name;
        void (*fn)(void*);
    } rows[] = {{"delta_c field", bench_delta_c},
                {"d1d2 weights", bench_weights},
                {"gradient matvec x50", bench_matvec},
                {"blocked dot x200", bench_dot}};

    std::printf("kernel                    serial      openmp     speedup   (grid %d^3, %d threads)\n",
                n, par::max_threads());
    for (const auto& r : rows) {
        BenchCtx cs{&cube, n, par::Exec::serial};
        BenchCtx cp{&cube, n, par::Exec::openmp};
        double ts = time_of(r.fn, &cs);
        double tp = time_of(r.fn, &cp);
        std::printf("%-24s %8.3fs %10.3fs %9.2fx\n", r.name, ts, tp, ts / tp);
    }
    return 0;
}

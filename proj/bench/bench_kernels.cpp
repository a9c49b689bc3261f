// Timing comparison of the OpenMP kernels against their serial reference
// implementations. Build with the project and run manually:
//
//   ./build/bench/bench_kernels [--quick]
//
// Exact kernels must agree bit-for-bit between both paths; the eigensolvers
// must agree to 1e-9. The harness verifies that while it times.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "distlab/energy.hpp"
#include "distlab/jacobi.hpp"
#include "distlab/rng.hpp"
#include "distlab/spectral.hpp"

using namespace distlab;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
    std::printf("%-34s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name, serial_s,
                parallel_s, serial_s / parallel_s, equal ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    std::printf("threads: %d\n", omp_get_max_threads());

    {
        auto f = FieldSpec::parse("101");
        PointSet e = PointSet::random(f, 2, quick ? 800 : 3000, 1);
        double t0 = now_s();
        auto a = serial::distance_multiplicities(e, e);
        double t1 = now_s();
        auto b = distance_multiplicities(e, e);
        double t2 = now_s();
        report("pair-distance counts", t1 - t0, t2 - t1, a == b);
    }
    {
        auto f = FieldSpec::parse(quick ? "499" : "1009");
        MultiplicityVector u(f), v(f);
        Rng rng(7);
        for (std::uint64_t i = 0; i < f->q(); ++i) {
            u[i] = rng.below(1u << 20);
            v[i] = rng.below(1u << 20);
        }
        double t0 = now_s();
        auto a = serial::additive_convolution(u, v);
        double t1 = now_s();
        auto b = additive_convolution(u, v);
        double t2 = now_s();
        report("additive convolution", t1 - t0, t2 - t1, a == b);
    }
    {
        auto f = FieldSpec::parse("13");
        double t0 = now_s();
        SumProductGraph g = SumProductGraph::build(f, 2);
        double t1 = now_s();
        VertexMultiset b(g), c(g);
        Rng rng(9);
        for (std::uint64_t vtx = 0; vtx < g.n(); ++vtx) {
            if (rng.below(2)) b.add(vtx, 1);
            if (rng.below(2)) c.add(vtx, 1);
        }
        double t2 = now_s();
        Int es = serial::edges_between_multisets(g, b, c);
        double t3 = now_s();
        Int ep = edges_between_multisets(g, b, c);
        double t4 = now_s();
        std::printf("%-34s build  %8.3fs\n", "sum-product graph n=2197", t1 - t0);
        report("multiset edge count n=2197", t3 - t2, t4 - t3, es == ep);
    }
    {
        const std::size_t n = quick ? 343 : 729;
        auto f = FieldSpec::parse("3");
        SumProductGraph g = SumProductGraph::build(f, quick ? 4 : 5);
        std::vector<double> a(g.n() * g.n());
        for (std::uint64_t u = 0; u < g.n(); ++u)
            for (std::uint64_t v = 0; v < g.n(); ++v) a[u * g.n() + v] = g.adjacent(u, v);
        const double tol = 1e-10 * static_cast<double>(g.degree());
        double t0 = now_s();
        auto s = jacobi_eigenvalues_serial(a, g.n(), tol, 50);
        double t1 = now_s();
        auto p = jacobi_eigenvalues(a, g.n(), tol, 50);
        double t2 = now_s();
        bool match = true;
        for (std::size_t i = 0; i < n; ++i)
            match = match && std::abs(s.eigenvalues[i] - p.eigenvalues[i]) < 1e-7;
        char label[64];
        std::snprintf(label, sizeof label, "jacobi spectrum n=%llu",
                      static_cast<unsigned long long>(g.n()));
        report(label, t1 - t0, t2 - t1, match);
        std::printf("%-34s serial %d sweeps, tournament %d sweeps\n", "", s.sweeps, p.sweeps);
    }
    return 0;
}

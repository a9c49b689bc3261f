#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "distlab/errors.hpp"
#include "distlab/jacobi.hpp"
#include "distlab/rng.hpp"

using namespace distlab;

namespace {

std::vector<double> random_symmetric(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = rng.unit() * 2.0 - 1.0;
            a[i * n + j] = a[j * n + i] = v;
        }
    return a;
}

double trace(const std::vector<double>& a, std::size_t n) {
    double t = 0;
    for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
    return t;
}

double frob_sq(const std::vector<double>& a) {
    double t = 0;
    for (double v : a) t += v * v;
    return t;
}

}  // namespace

TEST_CASE("diagonal matrix is already converged") {
    std::vector<double> a = {3, 0, 0, 0, -1, 0, 0, 0, 7};
    auto r = jacobi_eigenvalues(a, 3, 1e-12, 50);
    CHECK(r.sweeps == 0);
    CHECK(r.eigenvalues == std::vector<double>{7, 3, -1});
}

TEST_CASE("complete graph spectrum") {
    // K_n adjacency has eigenvalues n-1 (once) and -1 (n-1 times).
    for (std::size_t n : {2, 5, 9, 16}) {
        std::vector<double> a(n * n, 1.0);
        for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 0.0;
        for (auto r : {jacobi_eigenvalues(a, n, 1e-11, 50),
                       jacobi_eigenvalues_serial(a, n, 1e-11, 50)}) {
            CHECK(r.eigenvalues[0] == doctest::Approx(double(n) - 1).epsilon(1e-9));
            for (std::size_t i = 1; i < n; ++i)
                CHECK(r.eigenvalues[i] == doctest::Approx(-1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("cycle graph spectrum") {
    // C_n adjacency eigenvalues are 2 cos(2 pi j / n).
    const std::size_t n = 12;
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + (i + 1) % n] = 1.0;
        a[((i + 1) % n) * n + i] = 1.0;
    }
    std::vector<double> expected;
    for (std::size_t j = 0; j < n; ++j) expected.push_back(2.0 * std::cos(2.0 * M_PI * j / n));
    std::sort(expected.begin(), expected.end(), std::greater<double>());

    auto r = jacobi_eigenvalues(a, n, 1e-11, 50);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(r.eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-8));
}

TEST_CASE("tournament and cyclic orderings agree on random matrices") {
    for (std::size_t n : {1, 2, 7, 24, 61}) {
        auto a = random_symmetric(n, 1000 + n);
        auto fast = jacobi_eigenvalues(a, n, 1e-12, 50);
        auto slow = jacobi_eigenvalues_serial(a, n, 1e-12, 50);
        REQUIRE(fast.eigenvalues.size() == n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(fast.eigenvalues[i] == doctest::Approx(slow.eigenvalues[i]).epsilon(1e-9));
    }
}

TEST_CASE("trace and frobenius norm are preserved") {
    for (std::size_t n : {5, 17, 40}) {
        auto a = random_symmetric(n, 7 * n);
        const double tr = trace(a, n);
        const double fr = frob_sq(a);
        auto r = jacobi_eigenvalues(a, n, 1e-12, 50);
        const double sum = std::accumulate(r.eigenvalues.begin(), r.eigenvalues.end(), 0.0);
        double sq = 0;
        for (double v : r.eigenvalues) sq += v * v;
        CHECK(sum == doctest::Approx(tr).epsilon(1e-9));
        CHECK(sq == doctest::Approx(fr).epsilon(1e-9));
    }
}

TEST_CASE("sweep cap raises") {
    auto a = random_symmetric(20, 3);
    CHECK_THROWS_AS(jacobi_eigenvalues(a, 20, 1e-13, 1), ConvergenceFailure);
    CHECK_THROWS_AS(jacobi_eigenvalues_serial(a, 20, 1e-13, 1), ConvergenceFailure);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distlab/energy.hpp"
#include "distlab/rng.hpp"

using namespace distlab;

namespace {

// Literal 2k-tuple count of the energy definition, independent of both the
// convolution pipeline and the pair-enumeration oracle. Only viable for the
// smallest instances.
Int energy_by_tuples(const PointSet& E, int k) {
    const FieldSpec& f = E.field();
    std::vector<std::uint64_t> pair_dist;
    for (const auto& x : E.points())
        for (const auto& y : E.points()) pair_dist.push_back(distance(x, y).index());
    Int count = 0;
    const std::size_t half = static_cast<std::size_t>(k);
    std::vector<std::size_t> idx(2 * half, 0);
    while (true) {
        std::uint64_t left = 0, right = 0;
        for (std::size_t i = 0; i < half; ++i) left = f.add_index(left, pair_dist[idx[i]]);
        for (std::size_t i = half; i < 2 * half; ++i)
            right = f.add_index(right, pair_dist[idx[i]]);
        if (left == right) ++count;
        std::size_t j = idx.size();
        while (j > 0 && ++idx[j - 1] == pair_dist.size()) idx[--j] = 0;
        if (j == 0) break;
    }
    return count;
}

PointSet line_f3() {
    auto f3 = FieldSpec::make(3, 1);
    return PointSet::full_grid(f3, 1);
}

}  // namespace

TEST_CASE("hand-checked values on the F_3 line") {
    PointSet e = line_f3();
    MultiplicityVector nu = distance_multiplicities(e, e);
    CHECK(nu[0] == 3);
    CHECK(nu[1] == 6);
    CHECK(nu[2] == 0);
    CHECK(nu.total() == 9);

    // nu * nu, by hand and against the parallel kernel.
    MultiplicityVector n2 = additive_convolution(nu, nu);
    CHECK(n2[0] == 9);
    CHECK(n2[1] == 36);
    CHECK(n2[2] == 36);

    CHECK(energy(e, e, 1) == 45);
    CHECK(energy(e, e, 2) == 2673);

    // The same numbers straight from the definition.
    CHECK(energy_by_tuples(e, 1) == 45);
    CHECK(energy_by_tuples(e, 2) == 2673);
    CHECK(energy_bruteforce(e, e, 1) == 45);
    CHECK(energy_bruteforce(e, e, 2) == 2673);
}

TEST_CASE("distance set and sumsets on the F_3 line") {
    PointSet e = line_f3();
    auto delta = distance_set(e, e);
    REQUIRE(delta.size() == 2);
    CHECK(delta[0].index() == 0);
    CHECK(delta[1].index() == 1);

    CHECK(k_sumset(e, 1).size() == 2);
    CHECK(k_sumset(e, 2).size() == 3);  // {0,1} + {0,1} = F_3
    CHECK(k_sumset(e, 3).size() == 3);
}

TEST_CASE("singleton set") {
    auto f7 = FieldSpec::make(7, 1);
    PointSet s(f7, 2, {Point{{f7->from_integer(2), f7->from_integer(5)}}}, "single");
    MultiplicityVector nu = distance_multiplicities(s, s);
    CHECK(nu[0] == 1);
    CHECK(nu.total() == 1);
    for (int k = 1; k <= 3; ++k) {
        CHECK(energy(s, s, k) == 1);
        CHECK(energy_bruteforce(s, s, k) == 1);
        CHECK(k_sumset(s, k).size() == 1);
        CHECK(cauchy_schwarz_bound(s, k) == 1);
    }
}

TEST_CASE("cauchy-schwarz bound values") {
    PointSet e = line_f3();
    CHECK(cauchy_schwarz_bound(e, 1) == Rat(81, 45));
    CHECK(cauchy_schwarz_bound(e, 2) == Rat(6561, 2673));
    CHECK(Rat(Int(k_sumset(e, 1).size())) >= cauchy_schwarz_bound(e, 1));
    CHECK(Rat(Int(k_sumset(e, 2).size())) >= cauchy_schwarz_bound(e, 2));
}

TEST_CASE("convolution identity and totals") {
    auto f = FieldSpec::parse("3^2");
    Rng rng(99);
    MultiplicityVector u(f), v(f), delta0(f);
    for (std::uint64_t i = 0; i < f->q(); ++i) {
        u[i] = rng.below(50);
        v[i] = rng.below(50);
    }
    delta0[0] = 1;

    CHECK(additive_convolution(delta0, v) == v);
    CHECK(additive_convolution(u, v).total() == u.total() * v.total());
}

TEST_CASE("convolution is commutative and associative") {
    for (const char* spec : {"7", "3^2"}) {
        auto f = FieldSpec::parse(spec);
        Rng rng(1234);
        MultiplicityVector u(f), v(f), w(f);
        for (std::uint64_t i = 0; i < f->q(); ++i) {
            u[i] = rng.below(1000);
            v[i] = rng.below(1000);
            w[i] = rng.below(1000);
        }
        CHECK(additive_convolution(u, v) == additive_convolution(v, u));
        CHECK(additive_convolution(additive_convolution(u, v), w) ==
              additive_convolution(u, additive_convolution(v, w)));
    }
}

TEST_CASE("parallel kernels match the serial references") {
    auto f = FieldSpec::parse("11");
    PointSet e = PointSet::random(f, 2, 30, 17);
    PointSet g = PointSet::random(f, 2, 21, 18);
    CHECK(distance_multiplicities(e, g) == serial::distance_multiplicities(e, g));

    auto f9 = FieldSpec::parse("3^2");
    PointSet e9 = PointSet::random(f9, 2, 13, 5);
    CHECK(distance_multiplicities(e9, e9) == serial::distance_multiplicities(e9, e9));

    MultiplicityVector nu = distance_multiplicities(e, e);
    CHECK(additive_convolution(nu, nu) == serial::additive_convolution(nu, nu));

    // Force the arbitrary-precision convolution path with huge entries.
    MultiplicityVector big(f);
    Rng rng(4);
    for (std::uint64_t i = 0; i < f->q(); ++i)
        big[i] = int_pow(Int(10), 25) + Int(rng.below(1000));
    CHECK(additive_convolution(big, big) == serial::additive_convolution(big, big));
}

TEST_CASE("oracle equivalence on a small grid") {
    for (const char* spec : {"3", "5", "3^2"}) {
        auto f = FieldSpec::parse(spec);
        for (std::size_t d : {1, 2}) {
            for (std::uint64_t n : {1ULL, 3ULL, 5ULL}) {
                if (n > PointSet::ambient_size(*f, d)) continue;
                PointSet e = PointSet::random(f, d, n, 7 * n + d);
                PointSet g = PointSet::random(f, d, std::min<std::uint64_t>(n + 1, PointSet::ambient_size(*f, d)), 13 * n + d);
                for (int k : {1, 2}) {
                    CHECK(energy(e, e, k) == energy_bruteforce(e, e, k));
                    CHECK(energy(e, g, k) == energy_bruteforce(e, g, k));
                }
            }
        }
    }
}

TEST_CASE("energy guards") {
    auto f = FieldSpec::parse("101");
    PointSet e = PointSet::random(f, 2, 200, 1);
    CHECK_THROWS_AS(energy(e, e, 0), InvalidK);
    CHECK_THROWS_AS(energy_bruteforce(e, e, 2), TooLargeForOracle);

    auto f3 = FieldSpec::parse("3");
    PointSet e3 = PointSet::random(f3, 1, 2, 1);
    CHECK_THROWS_AS(energy(e, e3, 1), FieldMismatch);
}

TEST_CASE("sumset support equals convolution support") {
    auto f = FieldSpec::parse("7");
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        PointSet e = PointSet::random(f, 2, 4 + seed, seed);
        MultiplicityVector nu = distance_multiplicities(e, e);
        MultiplicityVector fold = nu;
        for (int k = 1; k <= 3; ++k) {
            auto sumset = k_sumset(e, k);
            std::vector<std::uint64_t> sup;
            for (const auto& el : sumset) sup.push_back(el.index());
            CHECK(sup == fold.support());
            if (k < 3) fold = additive_convolution(fold, nu);
        }
    }
}

TEST_CASE("monotone support growth") {
    auto f = FieldSpec::parse("11");
    PointSet e = PointSet::random(f, 2, 5, 9);
    auto prev = k_sumset(e, 1);
    for (int k = 2; k <= 4; ++k) {
        auto cur = k_sumset(e, k);
        // 0 is always a distance, so supports are nested.
        for (const auto& el : prev)
            CHECK(std::find(cur.begin(), cur.end(), el) != cur.end());
        prev = cur;
    }
}

TEST_CASE("energy lower bound |E|^4k / q") {
    auto f = FieldSpec::parse("7");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        PointSet e = PointSet::random(f, 2, 6 + seed, seed);
        for (int k : {1, 2}) {
            Int ek = energy(e, e, k);
            CHECK(Int(f->q()) * ek >= int_pow(Int(e.size()), 4 * static_cast<unsigned>(k)));
        }
    }
}

TEST_CASE("isometry invariance is exact") {
    auto f = FieldSpec::parse("7");
    PointSet e = PointSet::random(f, 3, 15, 31);
    Point t{{f->from_integer(2), f->from_integer(6), f->from_integer(1)}};
    PointSet img = e.isometry_image({2, 0, 1}, {-1, 1, -1}, t);

    CHECK(distance_multiplicities(img, img) == distance_multiplicities(e, e));
    for (int k : {1, 2}) {
        CHECK(energy(img, img, k) == energy(e, e, k));
        auto a = k_sumset(e, k), b = k_sumset(img, k);
        CHECK(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("multiplicity vector json round-trip") {
    auto f = FieldSpec::parse("3^2");
    PointSet e = PointSet::random(f, 2, 7, 21);
    MultiplicityVector nu = distance_multiplicities(e, e);
    auto j = nu.to_json();
    CHECK(j["field"] == "3^2");
    MultiplicityVector back = MultiplicityVector::from_json(j);
    CHECK(back == nu);
}

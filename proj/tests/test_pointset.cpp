#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <map>

#include "distlab/pointset.hpp"
#include "distlab/rng.hpp"

using namespace distlab;

namespace {

Point make_point(const FieldPtr& f, std::vector<std::int64_t> coords) {
    Point p;
    for (auto c : coords) p.coords.push_back(f->from_integer(c));
    return p;
}

}  // namespace

TEST_CASE("distance evaluates the quadratic form") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK(distance(make_point(f3, {0, 0}), make_point(f3, {0, 0})).is_zero());
    CHECK(distance(make_point(f3, {0, 0}), make_point(f3, {1, 1})) == f3->from_integer(2));

    auto f5 = FieldSpec::make(5, 1);
    // Distinct points at distance zero: 1 + 4 = 5 = 0 mod 5.
    CHECK(distance(make_point(f5, {0, 0}), make_point(f5, {1, 2})).is_zero());

    CHECK_THROWS_AS(distance(make_point(f3, {0, 0}), make_point(f3, {0, 0, 0})),
                    DimensionMismatch);
}

TEST_CASE("distance is symmetric") {
    auto f = FieldSpec::parse("3^2");
    Rng rng(7);
    PointSet e = PointSet::random(f, 3, 20, 11);
    for (int t = 0; t < 200; ++t) {
        const auto& x = e.points()[rng.below(e.size())];
        const auto& y = e.points()[rng.below(e.size())];
        CHECK(distance(x, y) == distance(y, x));
    }
}

TEST_CASE("random sets: exact size, determinism, full range") {
    auto f = FieldSpec::make(5, 1);
    PointSet a = PointSet::random(f, 2, 7, 42);
    PointSet b = PointSet::random(f, 2, 7, 42);
    CHECK(a.size() == 7);
    CHECK(a.points() == b.points());
    PointSet c = PointSet::random(f, 2, 7, 43);
    CHECK(a.points() != c.points());

    PointSet full = PointSet::random(f, 2, 25, 1);
    CHECK(full.size() == 25);  // n = q^d forces the whole grid

    PointSet single = PointSet::random(f, 2, 1, 9);
    CHECK(single.size() == 1);

    CHECK_THROWS_AS(PointSet::random(f, 2, 26, 1), TooLarge);
}

TEST_CASE("spheres by exhaustive scan") {
    auto f3 = FieldSpec::make(3, 1);
    PointSet s0 = PointSet::sphere(f3, 2, f3->from_integer(0));
    CHECK(s0.size() == 1);  // only the origin: -1 is a non-square mod 3

    auto f5 = FieldSpec::make(5, 1);
    PointSet z5 = PointSet::sphere(f5, 2, f5->from_integer(0));
    CHECK(z5.size() == 9);  // -1 = 2^2 mod 5: two lines through the origin

    // Defining property and partition of the grid.
    for (const char* spec : {"3", "5", "3^2"}) {
        auto f = FieldSpec::parse(spec);
        std::uint64_t total = 0;
        for (std::uint64_t r = 0; r < f->q(); ++r) {
            PointSet s = PointSet::sphere(f, 2, f->from_index(r));
            total += s.size();
            Point origin = make_point(f, {0, 0});
            for (const auto& x : s.points())
                CHECK(distance(x, origin) == f->from_index(r));
        }
        CHECK(total == f->q() * f->q());
    }
}

TEST_CASE("product sets") {
    auto f7 = FieldSpec::make(7, 1);
    CHECK(PointSet::product(f7, {f7->from_integer(0)}, 3).size() == 1);
    CHECK(PointSet::product(f7, {f7->from_integer(1), f7->from_integer(3)}, 2).size() == 4);
    CHECK(PointSet::full_grid(f7, 2).size() == 49);
}

TEST_CASE("isometries preserve the distance multiset") {
    auto f7 = FieldSpec::make(7, 1);
    PointSet e = PointSet::random(f7, 2, 12, 5);

    PointSet same = e.isometry_image({0, 1}, {1, 1}, make_point(f7, {0, 0}));
    CHECK(same.points() == e.points());

    PointSet img = e.isometry_image({1, 0}, {1, -1}, make_point(f7, {3, 5}));
    CHECK(img.size() == e.size());

    std::map<std::uint64_t, int> before, after;
    for (const auto& x : e.points())
        for (const auto& y : e.points()) before[distance(x, y).index()]++;
    for (const auto& x : img.points())
        for (const auto& y : img.points()) after[distance(x, y).index()]++;
    CHECK(before == after);

    CHECK_THROWS_AS(e.isometry_image({0, 0}, {1, 1}, make_point(f7, {0, 0})),
                    DimensionMismatch);
    CHECK_THROWS_AS(e.isometry_image({0, 1}, {1, 2}, make_point(f7, {0, 0})),
                    DimensionMismatch);
}

TEST_CASE("translation invariance of pair distances") {
    auto f = FieldSpec::parse("3^2");
    PointSet e = PointSet::random(f, 2, 9, 77);
    PointSet img = e.isometry_image({0, 1}, {1, 1}, make_point(f, {5, 8}));
    std::map<std::uint64_t, int> before, after;
    for (const auto& x : e.points())
        for (const auto& y : e.points()) before[distance(x, y).index()]++;
    for (const auto& x : img.points())
        for (const auto& y : img.points()) after[distance(x, y).index()]++;
    CHECK(before == after);
}

TEST_CASE("points are stored sorted and deduplicated") {
    auto f5 = FieldSpec::make(5, 1);
    std::vector<Point> pts = {make_point(f5, {3, 1}), make_point(f5, {0, 2}),
                              make_point(f5, {3, 1})};
    PointSet e(f5, 2, pts, "manual");
    CHECK(e.size() == 2);
    CHECK(lex_less(e.points()[0], e.points()[1]));
}

TEST_CASE("csv round-trip is lossless") {
    const std::string path = "test_pointset_roundtrip.csv";

    auto f5 = FieldSpec::make(5, 1);
    PointSet e = PointSet::random(f5, 2, 9, 3);
    e.save_csv(path);
    PointSet back = PointSet::load_csv(path);
    CHECK(back.field().q() == 5);
    CHECK(back.dim() == 2);
    CHECK(back.points() == e.points());

    auto f9 = FieldSpec::make(3, 2);
    PointSet e9 = PointSet::random(f9, 3, 11, 4);
    e9.save_csv(path);
    PointSet back9 = PointSet::load_csv(path);
    CHECK(back9.field().same_as(*f9));
    CHECK(back9.points() == e9.points());

    // Non-default modulus travels in the header.
    auto f25 = FieldSpec::make(5, 2, std::vector<std::uint32_t>{3, 0, 1});
    REQUIRE_FALSE(f25->has_default_modulus());
    PointSet e25 = PointSet::random(f25, 2, 6, 8);
    e25.save_csv(path);
    PointSet back25 = PointSet::load_csv(path);
    CHECK(back25.field().same_as(*f25));
    CHECK(back25.points() == e25.points());

    std::remove(path.c_str());
}

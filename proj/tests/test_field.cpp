#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "distlab/field.hpp"
#include "distlab/rng.hpp"

using namespace distlab;

TEST_CASE("construction validates inputs") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK(f3->q() == 3);
    CHECK(f3->residue_mod4() == 3);

    auto f9 = FieldSpec::make(3, 2, std::vector<std::uint32_t>{1, 0, 1});  // t^2 + 1
    CHECK(f9->q() == 9);
    CHECK(f9->residue_mod4() == 1);

    CHECK_THROWS_AS(FieldSpec::make(2, 3), EvenCharacteristic);
    CHECK_THROWS_AS(FieldSpec::make(9, 1), NonPrime);
    CHECK_THROWS_AS(FieldSpec::make(15, 1), NonPrime);
    // t^2 + 2 = (t-1)(t+1) over Z_3
    CHECK_THROWS_AS(FieldSpec::make(3, 2, std::vector<std::uint32_t>{2, 0, 1}), ReducibleModulus);
    CHECK_THROWS_AS(FieldSpec::make(3, 2, std::vector<std::uint32_t>{1, 0, 2}), ReducibleModulus);
    CHECK_THROWS_AS(FieldSpec::make(3, 5), TooLarge);
}

TEST_CASE("default modulus is deterministic and irreducible") {
    auto a = FieldSpec::make(3, 2);
    auto b = FieldSpec::make(3, 2);
    CHECK(a->modulus() == b->modulus());
    CHECK(a->modulus() == std::vector<std::uint32_t>{1, 0, 1});  // t^2 + 1 is lex-first over Z_3
    CHECK(a->has_default_modulus());
    CHECK(is_irreducible_mod_p(3, a->modulus()));

    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL})
        for (std::size_t m : {2ULL, 3ULL, 4ULL})
            CHECK(is_irreducible_mod_p(p, FieldSpec::make(p, m)->modulus()));
}

TEST_CASE("parse accepts q and p^m") {
    CHECK(FieldSpec::parse("7")->q() == 7);
    CHECK(FieldSpec::parse("7")->residue_mod4() == 3);
    CHECK(FieldSpec::parse("3^2")->q() == 9);
    CHECK_THROWS_AS(FieldSpec::parse("4"), EvenCharacteristic);
    CHECK_THROWS_AS(FieldSpec::parse("9"), NonPrime);
    CHECK_THROWS_AS(FieldSpec::parse("x"), ConfigError);
}

TEST_CASE("arithmetic follows the hand values") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK((f3->from_integer(2) + f3->from_integer(2)) == f3->from_integer(1));
    CHECK((f3->from_integer(2) * f3->from_integer(2)) == f3->from_integer(1));

    auto f9 = FieldSpec::make(3, 2);  // t^2 + 1, so t*t = -1 = 2
    const FieldElement t = f9->from_coeffs({0, 1});
    CHECK((t + t) == f9->from_coeffs({0, 2}));
    CHECK((t * t) == f9->from_integer(2));

    CHECK_THROWS_AS(f3->from_integer(1) + f9->from_integer(1), FieldMismatch);
}

TEST_CASE("enumeration order and index round-trip") {
    auto f3 = FieldSpec::make(3, 1);
    auto e3 = f3->elements();
    REQUIRE(e3.size() == 3);
    CHECK(e3[0] == f3->from_integer(0));
    CHECK(e3[1] == f3->from_integer(1));
    CHECK(e3[2] == f3->from_integer(2));

    auto f9 = FieldSpec::make(3, 2);
    auto e9 = f9->elements();
    REQUIRE(e9.size() == 9);
    CHECK(e9[0] == f9->from_integer(0));
    CHECK(e9[1] == f9->from_integer(1));
    CHECK(e9[2] == f9->from_integer(2));
    CHECK(e9[3] == f9->from_coeffs({0, 1}));
    for (std::uint64_t i = 0; i < 9; ++i) CHECK(e9[i].index() == i);
}

TEST_CASE("squares") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK(f3->is_square(f3->from_integer(0)));
    CHECK(f3->is_square(f3->from_integer(1)));
    CHECK_FALSE(f3->is_square(f3->from_integer(2)));

    auto f7 = FieldSpec::make(7, 1);
    CHECK(f7->is_square(f7->from_integer(2)));  // 3^2 = 2

    // is_square(a*a) everywhere; exactly (q-1)/2 nonzero squares.
    for (const char* spec : {"3", "5", "7", "3^2", "5^2", "3^3"}) {
        auto f = FieldSpec::parse(spec);
        std::set<std::uint64_t> squares;
        for (const auto& a : f->elements()) {
            CHECK(f->is_square(f->mul(a, a)));
            if (!a.is_zero()) squares.insert(f->mul(a, a).index());
        }
        CHECK(squares.size() == (f->q() - 1) / 2);
        std::uint64_t square_count = 0;
        for (const auto& a : f->elements())
            if (!a.is_zero() && f->is_square(a)) ++square_count;
        CHECK(square_count == (f->q() - 1) / 2);
    }
}

TEST_CASE("field axioms, exhaustive for small q") {
    for (const char* spec : {"3", "5", "7", "3^2"}) {
        auto f = FieldSpec::parse(spec);
        auto all = f->elements();
        for (const auto& a : all) {
            CHECK(f->add(a, f->neg(a)).is_zero());
            CHECK(f->mul(a, f->one()) == a);
            bool has_inverse = a.is_zero();
            for (const auto& b : all) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                if (!a.is_zero() && f->mul(a, b) == f->one()) has_inverse = true;
                for (const auto& c : all) {
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
            CHECK(has_inverse);
        }
    }
}

TEST_CASE("field axioms, random triples for larger q") {
    for (const char* spec : {"5^2", "3^3", "7^2", "3^4"}) {
        auto f = FieldSpec::parse(spec);
        Rng rng(20250801);
        for (int trial = 0; trial < 10000; ++trial) {
            auto a = f->from_index(rng.below(f->q()));
            auto b = f->from_index(rng.below(f->q()));
            auto c = f->from_index(rng.below(f->q()));
            CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
            CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
            CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            CHECK(f->mul(a, b) == f->mul(b, a));
        }
        // Every nonzero element has an inverse (exhaustive search).
        for (const auto& a : f->elements()) {
            if (a.is_zero()) continue;
            bool found = false;
            for (const auto& b : f->elements())
                if (f->mul(a, b) == f->one()) {
                    found = true;
                    break;
                }
            CHECK(found);
        }
    }
}

TEST_CASE("index-level group operations agree with element arithmetic") {
    for (const char* spec : {"7", "3^2", "5^2"}) {
        auto f = FieldSpec::parse(spec);
        for (std::uint64_t i = 0; i < f->q(); ++i) {
            for (std::uint64_t j = 0; j < f->q(); ++j) {
                CHECK(f->add_index(i, j) == f->add(f->from_index(i), f->from_index(j)).index());
                CHECK(f->sub_index(i, j) == f->sub(f->from_index(i), f->from_index(j)).index());
            }
            CHECK(f->neg_index(i) == f->neg(f->from_index(i)).index());
        }
    }
}

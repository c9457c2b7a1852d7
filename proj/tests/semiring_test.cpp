#include "tqe/semiring.hpp"

#include <doctest.h>

#include <limits>
#include <random>

using namespace tqe;

namespace {

KValue bag(std::int64_t n) { return {SemiringKind::Bag, n}; }
KValue boolean(bool b) { return {SemiringKind::Set, b ? 1 : 0}; }

} // namespace

TEST_CASE("bag operation table") {
    SemiringSpec sp(SemiringKind::Bag);
    CHECK(sp.add(bag(2), bag(3)) == bag(5));
    CHECK(sp.add(bag(0), bag(7)) == bag(7));
    CHECK(sp.mul(bag(1), bag(4)) == bag(4));
    CHECK(sp.mul(bag(0), bag(9)) == bag(0));
    CHECK(sp.monus(bag(5), bag(3)) == bag(2));
    CHECK(sp.monus(bag(3), bag(5)) == bag(0));
    CHECK(sp.naturalLeq(bag(2), bag(3)));
    CHECK_FALSE(sp.naturalLeq(bag(3), bag(2)));
}

TEST_CASE("set operation table") {
    SemiringSpec sp(SemiringKind::Set);
    CHECK(sp.add(boolean(true), boolean(false)) == boolean(true));
    CHECK(sp.mul(boolean(true), boolean(true)) == boolean(true));
    CHECK(sp.mul(boolean(true), boolean(false)) == boolean(false));
    CHECK(sp.monus(boolean(true), boolean(true)) == boolean(false));
    CHECK(sp.monus(boolean(true), boolean(false)) == boolean(true));
    CHECK(sp.naturalLeq(boolean(false), boolean(true)));
    CHECK_FALSE(sp.naturalLeq(boolean(true), boolean(false)));
}

TEST_CASE("tag mismatch is a contract error") {
    SemiringSpec sp(SemiringKind::Bag);
    CHECK_THROWS_AS(sp.add(bag(1), boolean(true)), ContractError);
    CHECK_THROWS_AS(sp.mul(boolean(true), bag(1)), ContractError);
}

TEST_CASE("bag arithmetic overflow is detected") {
    SemiringSpec sp(SemiringKind::Bag);
    std::int64_t big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS(sp.add(bag(big), bag(1)), OverflowError);
    CHECK_THROWS_AS(sp.mul(bag(big), bag(2)), OverflowError);
}

TEST_CASE("semiring laws hold on random triples") {
    for (SemiringKind kind : {SemiringKind::Set, SemiringKind::Bag}) {
        SemiringSpec sp(kind);
        std::mt19937_64 rng(7);
        auto rand = [&] {
            std::int64_t v = (std::int64_t)(rng() % 1000);
            return kind == SemiringKind::Set ? KValue{kind, v % 2}
                                             : KValue{kind, v};
        };
        for (int i = 0; i < 10000; ++i) {
            KValue a = rand(), b = rand(), c = rand();
            CHECK(sp.add(a, b) == sp.add(b, a));
            CHECK(sp.mul(a, b) == sp.mul(b, a));
            CHECK(sp.add(sp.add(a, b), c) == sp.add(a, sp.add(b, c)));
            CHECK(sp.mul(sp.mul(a, b), c) == sp.mul(a, sp.mul(b, c)));
            CHECK(sp.mul(a, sp.add(b, c)) == sp.add(sp.mul(a, b), sp.mul(a, c)));
            CHECK(sp.add(a, sp.zero()) == a);
            CHECK(sp.mul(a, sp.one()) == a);
            CHECK(sp.mul(a, sp.zero()) == sp.zero());
        }
    }
}

TEST_CASE("monus is the least completion") {
    // k <= k' + (k - k'), and nothing smaller completes.
    SemiringSpec bags(SemiringKind::Bag);
    for (std::int64_t a = 0; a < 100; ++a) {
        for (std::int64_t b = 0; b < 100; ++b) {
            KValue m = bags.monus(bag(a), bag(b));
            CHECK(bags.naturalLeq(bag(a), bags.add(bag(b), m)));
            if (m.raw > 0)
                CHECK_FALSE(
                    bags.naturalLeq(bag(a), bags.add(bag(b), bag(m.raw - 1))));
        }
    }
    SemiringSpec sets(SemiringKind::Set);
    for (bool a : {false, true}) {
        for (bool b : {false, true}) {
            KValue m = sets.monus(boolean(a), boolean(b));
            CHECK(sets.naturalLeq(boolean(a), sets.add(boolean(b), m)));
            if (m.asBool())
                CHECK_FALSE(sets.naturalLeq(boolean(a),
                                            sets.add(boolean(b), boolean(false))));
        }
    }
}

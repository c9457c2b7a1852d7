#include "tqe/period.hpp"

#include <doctest.h>

#include <random>

using namespace tqe;

namespace {

KValue bag(std::int64_t n) { return {SemiringKind::Bag, n}; }

TemporalElement randomElement(std::mt19937_64& rng, SemiringKind kind,
                              const TimeDomain& dom) {
    TemporalElement e(kind, dom);
    int n = (int)(rng() % 4);
    for (int i = 0; i < n; ++i) {
        Tick b = dom.tmin + (Tick)(rng() % (std::uint64_t)dom.length());
        Tick len = 1 + (Tick)(rng() % (std::uint64_t)(dom.tmax - b));
        std::int64_t v = kind == SemiringKind::Set ? 1 : 1 + (std::int64_t)(rng() % 3);
        e.add(Interval(b, b + len), KValue{kind, v});
    }
    return e.coalesced();
}

} // namespace

TEST_CASE("period addition golden") {
    // Ann's SP history plus Sam's: the projection onto skill.
    TimeDomain dom(0, 24);
    TemporalElement ann(SemiringKind::Bag, dom);
    ann.add(Interval(3, 10), bag(1));
    ann.add(Interval(18, 20), bag(1));
    TemporalElement sam(SemiringKind::Bag, dom);
    sam.add(Interval(8, 16), bag(1));

    TemporalElement want(SemiringKind::Bag, dom);
    want.add(Interval(3, 8), bag(1));
    want.add(Interval(8, 10), bag(2));
    want.add(Interval(10, 16), bag(1));
    want.add(Interval(18, 20), bag(1));
    CHECK(pAdd(ann, sam) == want);
}

TEST_CASE("period monus golden") {
    TimeDomain dom(0, 24);
    TemporalElement a(SemiringKind::Bag, dom);
    a.add(Interval(3, 6), bag(1));
    a.add(Interval(6, 12), bag(2));
    a.add(Interval(12, 14), bag(1));
    TemporalElement b(SemiringKind::Bag, dom);
    b.add(Interval(3, 8), bag(1));
    b.add(Interval(8, 10), bag(2));
    b.add(Interval(10, 16), bag(1));
    b.add(Interval(18, 20), bag(1));

    TemporalElement want(SemiringKind::Bag, dom);
    want.add(Interval(6, 8), bag(1));
    want.add(Interval(10, 12), bag(1));
    CHECK(pMonus(a, b) == want);
}

TEST_CASE("zero and one behave as semiring constants") {
    std::mt19937_64 rng(3);
    for (SemiringKind kind : {SemiringKind::Set, SemiringKind::Bag}) {
        TimeDomain dom(0, 12);
        TemporalElement zero = pZero(kind, dom);
        TemporalElement one = pOne(kind, dom);
        for (int i = 0; i < 200; ++i) {
            TemporalElement a = randomElement(rng, kind, dom);
            CHECK(pAdd(a, zero) == a);
            CHECK(pMul(a, one) == a);
            CHECK(pMul(a, zero) == zero);
        }
    }
}

TEST_CASE("period semiring laws on random triples") {
    std::mt19937_64 rng(5);
    for (SemiringKind kind : {SemiringKind::Set, SemiringKind::Bag}) {
        for (int i = 0; i < 500; ++i) {
            TimeDomain dom(0, 1 + (Tick)(rng() % 16));
            TemporalElement a = randomElement(rng, kind, dom);
            TemporalElement b = randomElement(rng, kind, dom);
            TemporalElement c = randomElement(rng, kind, dom);
            CHECK(pAdd(a, b) == pAdd(b, a));
            CHECK(pMul(a, b) == pMul(b, a));
            CHECK(pAdd(pAdd(a, b), c) == pAdd(a, pAdd(b, c)));
            CHECK(pMul(pMul(a, b), c) == pMul(a, pMul(b, c)));
            CHECK(pMul(a, pAdd(b, c)) == pAdd(pMul(a, b), pMul(a, c)));
        }
    }
}

TEST_CASE("coalesce pushes through the pointwise operations") {
    std::mt19937_64 rng(9);
    for (SemiringKind kind : {SemiringKind::Set, SemiringKind::Bag}) {
        for (int i = 0; i < 300; ++i) {
            TimeDomain dom(0, 1 + (Tick)(rng() % 16));
            // Deliberately non-normalized operands.
            TemporalElement a(kind, dom), b(kind, dom);
            for (TemporalElement* e : {&a, &b}) {
                int n = (int)(rng() % 4);
                for (int j = 0; j < n; ++j) {
                    Tick lo = (Tick)(rng() % (std::uint64_t)dom.length());
                    Tick len = 1 + (Tick)(rng() % (std::uint64_t)(dom.tmax - lo));
                    e->add(Interval(lo, lo + len),
                           KValue{kind, kind == SemiringKind::Set
                                            ? 1
                                            : 1 + (std::int64_t)(rng() % 3)});
                }
            }
            CHECK(pAddPointwise(a, b).coalesced() ==
                  pAdd(a.coalesced(), b.coalesced()));
            CHECK(pMulPointwise(a, b).coalesced() ==
                  pMul(a.coalesced(), b.coalesced()));
        }
    }
}

TEST_CASE("timeslice is a homomorphism") {
    std::mt19937_64 rng(13);
    for (SemiringKind kind : {SemiringKind::Set, SemiringKind::Bag}) {
        SemiringSpec sp(kind);
        for (int i = 0; i < 300; ++i) {
            TimeDomain dom(0, 1 + (Tick)(rng() % 16));
            TemporalElement a = randomElement(rng, kind, dom);
            TemporalElement b = randomElement(rng, kind, dom);
            TemporalElement sum = pAdd(a, b);
            TemporalElement prod = pMul(a, b);
            TemporalElement diff = pMonus(a, b);
            for (Tick t = dom.tmin; t < dom.tmax; ++t) {
                CHECK(sum.timeslice(t) ==
                      sp.add(a.timeslice(t), b.timeslice(t)));
                CHECK(prod.timeslice(t) ==
                      sp.mul(a.timeslice(t), b.timeslice(t)));
                CHECK(diff.timeslice(t) ==
                      sp.monus(a.timeslice(t), b.timeslice(t)));
            }
            CHECK(pOne(kind, dom).timeslice(dom.tmin) == sp.one());
            CHECK(pZero(kind, dom).timeslice(dom.tmin) == sp.zero());
        }
    }
}

TEST_CASE("operations over mismatched elements are rejected") {
    TemporalElement a(SemiringKind::Bag, TimeDomain(0, 5));
    TemporalElement b(SemiringKind::Bag, TimeDomain(0, 6));
    TemporalElement c(SemiringKind::Set, TimeDomain(0, 5));
    CHECK_THROWS_AS(pAdd(a, b), ContractError);
    CHECK_THROWS_AS(pMul(a, c), ContractError);
}

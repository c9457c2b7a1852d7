#include "tqe/telement.hpp"

#include <doctest.h>

#include <random>

using namespace tqe;

namespace {

KValue bag(std::int64_t n) { return {SemiringKind::Bag, n}; }
KValue boolean(bool b) { return {SemiringKind::Set, b ? 1 : 0}; }

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
    return e;
}

} // namespace

TEST_CASE("domain and interval invariants") {
    CHECK_THROWS_AS(TimeDomain(5, 5), ContractError);
    CHECK_THROWS_AS(Interval(7, 3), ContractError);
    TemporalElement e(SemiringKind::Bag, TimeDomain(0, 10));
    CHECK_THROWS_AS(e.add(Interval(5, 12), bag(1)), RangeError);
    CHECK_THROWS_AS(e.timeslice(10), RangeError);
}

TEST_CASE("timeslice sums overlapping intervals") {
    TemporalElement e(SemiringKind::Bag, TimeDomain(0, 10));
    e.add(Interval(0, 5), bag(2));
    e.add(Interval(4, 5), bag(1));
    CHECK(e.timeslice(4) == bag(3));
    CHECK(e.timeslice(3) == bag(2));
    CHECK(e.timeslice(5) == bag(0));
}

TEST_CASE("adding cancels to zero removes the slot") {
    TemporalElement e(SemiringKind::Bag, TimeDomain(0, 10));
    e.add(Interval(2, 4), bag(2));
    e.add(Interval(2, 4), bag(0));
    CHECK(e.support().size() == 1);
}

TEST_CASE("bag coalesce splits overlap into constant slices") {
    // Two intervals [3,10) and [3,13), each with multiplicity one.
    TimeDomain dom(0, 20);
    TemporalElement e(SemiringKind::Bag, dom);
    e.add(Interval(3, 10), bag(1));
    e.add(Interval(3, 13), bag(1));

    TemporalElement want(SemiringKind::Bag, dom);
    want.add(Interval(3, 10), bag(2));
    want.add(Interval(10, 13), bag(1));
    CHECK(e.coalesced() == want);

    std::vector<Tick> cps{0, 3, 10, 13};
    CHECK(e.changepoints() == cps);
}

TEST_CASE("set coalesce merges into one maximal interval") {
    TimeDomain dom(0, 20);
    TemporalElement e(SemiringKind::Set, dom);
    e.add(Interval(3, 10), boolean(true));
    e.add(Interval(3, 13), boolean(true));

    TemporalElement want(SemiringKind::Set, dom);
    want.add(Interval(3, 13), boolean(true));
    CHECK(e.coalesced() == want);
}

TEST_CASE("coalesce properties on random elements") {
    std::mt19937_64 rng(11);
    for (SemiringKind kind : {SemiringKind::Set, SemiringKind::Bag}) {
        for (int i = 0; i < 500; ++i) {
            TimeDomain dom(0, 1 + (Tick)(rng() % 16));
            TemporalElement e = randomElement(rng, kind, dom);
            TemporalElement c = e.coalesced();
            // idempotent, slice-preserving, and a fixed point
            CHECK(c.coalesced() == c);
            CHECK(c.isNormalized());
            for (Tick t = dom.tmin; t < dom.tmax; ++t)
                CHECK(c.timeslice(t) == e.timeslice(t));
            CHECK(TemporalElement::snapshotEq(e, c));
        }
    }
}

TEST_CASE("coalesce is a unique normal form per equivalence class") {
    TimeDomain dom(0, 10);
    TemporalElement a(SemiringKind::Bag, dom);
    a.add(Interval(0, 4), bag(1));
    a.add(Interval(4, 8), bag(1));
    TemporalElement b(SemiringKind::Bag, dom);
    b.add(Interval(0, 8), bag(1));
    CHECK(a.coalesced() == b.coalesced());
    CHECK(TemporalElement::snapshotEq(a, b));
}

TEST_CASE("elements differing in one slice are not snapshot-equal") {
    TimeDomain dom(0, 24);
    TemporalElement t1(SemiringKind::Bag, dom);
    t1.add(Interval(3, 9), bag(3));
    t1.add(Interval(18, 20), bag(2));
    TemporalElement t3(SemiringKind::Bag, dom);
    t3.add(Interval(3, 5), bag(3));
    t3.add(Interval(5, 9), bag(3));
    t3.add(Interval(18, 19), bag(2));
    // agree everywhere except t=19
    for (Tick t = 0; t < 19; ++t)
        CHECK(t1.timeslice(t) == t3.timeslice(t));
    CHECK(t1.timeslice(19) == bag(2));
    CHECK(t3.timeslice(19) == bag(0));
    CHECK_FALSE(TemporalElement::snapshotEq(t1, t3));
}

TEST_CASE("snapshotEq rejects mismatched elements") {
    TemporalElement a(SemiringKind::Bag, TimeDomain(0, 5));
    TemporalElement b(SemiringKind::Set, TimeDomain(0, 5));
    CHECK_THROWS_AS(TemporalElement::snapshotEq(a, b), ContractError);
}

#include "fixtures.hpp"

#include <doctest.h>

using namespace tqe;
using namespace tqe::fixtures;

namespace {

std::map<std::string, Schema> dutySchemas() {
    return {{"works", Schema{{"name", "skill"}}},
            {"assign", Schema{{"mach", "skill"}}}};
}

} // namespace

TEST_CASE("validation rejects ill-formed queries") {
    auto schemas = dutySchemas();
    CHECK_THROWS_AS(validate(Query::rel("nope"), schemas, SemiringKind::Bag),
                    ContractError);
    CHECK_THROWS_AS(
        validate(Query::project({ProjItem::attr("salary")}, Query::rel("works")),
                 schemas, SemiringKind::Bag),
        ContractError);
    // works has arity 2, its skill projection has arity 1
    CHECK_THROWS_AS(
        validate(Query::setUnion(Query::rel("works"),
                                 Query::project({ProjItem::attr("skill")},
                                                Query::rel("works"))),
                 schemas, SemiringKind::Bag),
        ContractError);
    CHECK_THROWS_AS(validate(qOnDuty(), schemas, SemiringKind::Set),
                    ContractError);
    Schema out = validate(
        Query::project({ProjItem::attr("skill")}, Query::rel("works")), schemas,
        SemiringKind::Bag);
    CHECK(out == Schema{{"skill"}});
}

TEST_CASE("projection sums collapsing annotations") {
    PeriodKRelation got = evalLogical(
        Query::project({ProjItem::attr("skill")}, Query::rel("works")),
        dutyCatalog());
    TimeDomain dom = dutyDomain();
    TemporalElement sp(SemiringKind::Bag, dom);
    sp.add(Interval(3, 8), bag(1));
    sp.add(Interval(8, 10), bag(2));
    sp.add(Interval(10, 16), bag(1));
    sp.add(Interval(18, 20), bag(1));
    TemporalElement ns(SemiringKind::Bag, dom);
    ns.add(Interval(8, 16), bag(1));
    CHECK(got.data().size() == 2);
    CHECK(got.at({Value("SP")}) == sp);
    CHECK(got.at({Value("NS")}) == ns);
}

TEST_CASE("snapshot difference keeps partially covered skills") {
    PeriodKRelation got = evalLogical(qSkillReq(), dutyCatalog());
    TimeDomain dom = dutyDomain();
    TemporalElement sp(SemiringKind::Bag, dom);
    sp.add(Interval(6, 8), bag(1));
    sp.add(Interval(10, 12), bag(1));
    TemporalElement ns(SemiringKind::Bag, dom);
    ns.add(Interval(3, 8), bag(1));
    CHECK(got.data().size() == 2);
    CHECK(got.at({Value("SP")}) == sp);
    CHECK(got.at({Value("NS")}) == ns);
}

TEST_CASE("snapshot aggregation emits zero-count gap rows") {
    PeriodKRelation got = evalLogical(qOnDuty(), dutyCatalog());
    TimeDomain dom = dutyDomain();
    auto indicator = [&](std::initializer_list<Interval> ivs) {
        TemporalElement e(SemiringKind::Bag, dom);
        for (const Interval& iv : ivs)
            e.add(iv, bag(1));
        return e;
    };
    CHECK(got.data().size() == 3);
    CHECK(got.at({Value(std::int64_t(0))}) ==
          indicator({Interval(0, 3), Interval(16, 18), Interval(20, 24)}));
    CHECK(got.at({Value(std::int64_t(1))}) ==
          indicator({Interval(3, 8), Interval(10, 16), Interval(18, 20)}));
    CHECK(got.at({Value(std::int64_t(2))}) == indicator({Interval(8, 10)}));
}

TEST_CASE("join multiplies annotations of overlapping partners") {
    // machines whose required skill someone currently has
    QueryPtr q = Query::project(
        {ProjItem::attr("mach")},
        Query::join(Predicate::cmpAttr(CmpOp::Eq, "skill", "skill2"),
                    Query::rel("assign"),
                    Query::project({ProjItem::rename("skill", "skill2")},
                                   Query::rel("works"))));
    PeriodKRelation got = evalLogical(q, dutyCatalog());
    // M1 requires SP: Ann [3,10)+[18,20) capped at 12, Sam [8,12)
    TimeDomain dom = dutyDomain();
    TemporalElement m1(SemiringKind::Bag, dom);
    m1.add(Interval(3, 8), bag(1));
    m1.add(Interval(8, 10), bag(2));
    m1.add(Interval(10, 12), bag(1));
    CHECK(got.at({Value("M1")}) == m1);
    TemporalElement m3(SemiringKind::Bag, dom);
    m3.add(Interval(8, 16), bag(1));
    CHECK(got.at({Value("M3")}) == m3);
}

TEST_CASE("aggregation over an empty database") {
    TimeDomain dom(0, 6);
    Catalog db{{"r", PeriodKRelation(Schema{{"a"}}, SemiringKind::Bag, dom)}};
    PeriodKRelation got =
        evalLogical(Query::agg({}, AggFunc::CountStar, "", Query::rel("r")), db);
    TemporalElement whole(SemiringKind::Bag, dom);
    whole.add(Interval(0, 6), bag(1));
    CHECK(got.data().size() == 1);
    CHECK(got.at({Value(std::int64_t(0))}) == whole);

    // sum without group-by over empty input is a Null row
    PeriodKRelation sums =
        evalLogical(Query::agg({}, AggFunc::Sum, "a", Query::rel("r")), db);
    CHECK(sums.data().size() == 1);
    CHECK(sums.at({Value::null()}) == whole);

    // group-by over an empty group emits nothing
    PeriodKRelation grouped =
        evalLogical(Query::agg({"a"}, AggFunc::CountStar, "", Query::rel("r")), db);
    CHECK(grouped.empty());
}

TEST_CASE("grouped average is exact") {
    TimeDomain dom(1, 7);
    Catalog db{{"active", periodEncInv(activeConsum(dom))}};
    PeriodKRelation got = evalLogical(
        Query::agg({"mach"}, AggFunc::Avg, "consum", Query::rel("active")), db);
    TemporalElement e15(SemiringKind::Bag, dom);
    e15.add(Interval(1, 3), bag(1));
    TemporalElement e70_3(SemiringKind::Bag, dom);
    e70_3.add(Interval(3, 5), bag(1));
    TemporalElement e40(SemiringKind::Bag, dom);
    e40.add(Interval(5, 6), bag(1));
    CHECK(got.data().size() == 3);
    CHECK(got.at({Value("M1"), Value(std::int64_t(15))}) == e15);
    CHECK(got.at({Value("M1"), Value(Rational(70, 3))}) == e70_3);
    CHECK(got.at({Value("M1"), Value(std::int64_t(40))}) == e40);
    CHECK(Rational(70, 3).toString(4) == "23.3333");
}

TEST_CASE("comparisons with Null are false") {
    TimeDomain dom(0, 4);
    PeriodKRelation r(Schema{{"a"}}, SemiringKind::Bag, dom);
    r.add({Value::null()}, Interval(0, 4), bag(1));
    r.add({Value(std::int64_t(1))}, Interval(0, 4), bag(1));
    Catalog db{{"r", r.normalized()}};
    for (CmpOp op : {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Ge}) {
        PeriodKRelation got = evalLogical(
            Query::select(Predicate::cmpLit(op, "a", Value(std::int64_t(1))),
                          Query::rel("r")),
            db);
        CHECK(got.at({Value::null()}).empty());
    }
}

TEST_CASE("set-semiring difference is set difference") {
    TimeDomain dom(0, 8);
    PeriodKRelation l(Schema{{"a"}}, SemiringKind::Set, dom);
    l.add({Value("x")}, Interval(0, 6), boolean(true));
    PeriodKRelation r(Schema{{"a"}}, SemiringKind::Set, dom);
    r.add({Value("x")}, Interval(2, 4), boolean(true));
    Catalog db{{"l", l.normalized()}, {"r", r.normalized()}};
    PeriodKRelation got =
        evalLogical(Query::diff(Query::rel("l"), Query::rel("r")), db);
    TemporalElement want(SemiringKind::Set, dom);
    want.add(Interval(0, 2), boolean(true));
    want.add(Interval(4, 6), boolean(true));
    CHECK(got.at({Value("x")}) == want);
}

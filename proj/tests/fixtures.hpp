#ifndef TQE_TESTS_FIXTURES_HPP
#define TQE_TESTS_FIXTURES_HPP

#include "tqe/physical.hpp"

#include <string>
#include <vector>

namespace tqe::fixtures {

inline Tuple tup(std::initializer_list<Value> vs) { return Tuple(vs); }

inline KValue bag(std::int64_t n) { return KValue{SemiringKind::Bag, n}; }
inline KValue boolean(bool b) { return KValue{SemiringKind::Set, b ? 1 : 0}; }

// The on-duty staffing scenario: who works when, and which machine
// assignments require which skill. Domain [0, 24).
inline TimeDomain dutyDomain() { return TimeDomain(0, 24); }

inline PeriodKRelation works() {
    PeriodKRelation r(Schema{{"name", "skill"}}, SemiringKind::Bag, dutyDomain());
    r.add({Value("Ann"), Value("SP")}, Interval(3, 10), bag(1));
    r.add({Value("Joe"), Value("NS")}, Interval(8, 16), bag(1));
    r.add({Value("Sam"), Value("SP")}, Interval(8, 16), bag(1));
    r.add({Value("Ann"), Value("SP")}, Interval(18, 20), bag(1));
    return r.normalized();
}

inline PeriodKRelation assign() {
    PeriodKRelation r(Schema{{"mach", "skill"}}, SemiringKind::Bag, dutyDomain());
    r.add({Value("M1"), Value("SP")}, Interval(3, 12), bag(1));
    r.add({Value("M2"), Value("SP")}, Interval(6, 14), bag(1));
    r.add({Value("M3"), Value("NS")}, Interval(3, 16), bag(1));
    return r.normalized();
}

inline Catalog dutyCatalog() {
    return Catalog{{"works", works()}, {"assign", assign()}};
}

// count of on-duty SP workers over time
inline QueryPtr qOnDuty() {
    return Query::agg({}, AggFunc::CountStar, "",
                      Query::select(Predicate::cmpLit(CmpOp::Eq, "skill",
                                                      Value("SP")),
                                    Query::rel("works")));
}

// skills required by some assignment but covered by no worker
inline QueryPtr qSkillReq() {
    return Query::diff(
        Query::project({ProjItem::attr("skill")}, Query::rel("assign")),
        Query::project({ProjItem::attr("skill")}, Query::rel("works")));
}

// Machine activity tables used by the sweep-algorithm tests.
inline SqlPeriodRelation activeCoalesce(const TimeDomain& dom) {
    SqlPeriodRelation r(Schema{{"mach"}}, dom);
    r.add(Row{{Value("M1")}, 1, 5}, 1);
    r.add(Row{{Value("M1")}, 1, 10}, 1);
    r.add(Row{{Value("M1")}, 5, 7}, 1);
    r.add(Row{{Value("M2")}, 2, 6}, 1);
    r.add(Row{{Value("M2")}, 3, 6}, 1);
    return r;
}

inline SqlPeriodRelation activeSplit(const TimeDomain& dom) {
    SqlPeriodRelation r(Schema{{"mach"}}, dom);
    r.add(Row{{Value("M1")}, 1, 7}, 1);
    r.add(Row{{Value("M1")}, 4, 9}, 1);
    r.add(Row{{Value("M2")}, 2, 8}, 1);
    return r;
}

inline SqlPeriodRelation activeConsum(const TimeDomain& dom) {
    SqlPeriodRelation r(Schema{{"mach", "consum"}}, dom);
    r.add(Row{{Value("M1"), Value(std::int64_t(10))}, 1, 5}, 1);
    r.add(Row{{Value("M1"), Value(std::int64_t(20))}, 1, 5}, 1);
    r.add(Row{{Value("M1"), Value(std::int64_t(40))}, 3, 6}, 1);
    r.add(Row{{Value("M1"), Value(std::int64_t(40))}, 5, 6}, 1);
    return r;
}

inline SqlPeriodRelation diffLeft(const TimeDomain& dom) {
    SqlPeriodRelation r(Schema{{"mach", "consum"}}, dom);
    r.add(Row{{Value("M1"), Value(std::int64_t(20))}, 1, 5}, 1);
    r.add(Row{{Value("M1"), Value(std::int64_t(40))}, 1, 7}, 1);
    r.add(Row{{Value("M1"), Value(std::int64_t(40))}, 1, 9}, 1);
    return r;
}

inline SqlPeriodRelation diffRight(const TimeDomain& dom) {
    SqlPeriodRelation r(Schema{{"mach", "consum"}}, dom);
    r.add(Row{{Value("M1"), Value(std::int64_t(20))}, 2, 6}, 1);
    r.add(Row{{Value("M1"), Value(std::int64_t(40))}, 3, 9}, 1);
    return r;
}

inline std::map<std::string, SqlPeriodRelation> dutySql() {
    std::map<std::string, SqlPeriodRelation> db;
    db.emplace("works", periodEnc(works()));
    db.emplace("assign", periodEnc(assign()));
    return db;
}

} // namespace tqe::fixtures

#endif

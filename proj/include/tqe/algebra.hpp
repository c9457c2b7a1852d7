#ifndef TQE_ALGEBRA_HPP
#define TQE_ALGEBRA_HPP

#include "tqe/relation.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace tqe {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Predicate;
using PredPtr = std::shared_ptr<const Predicate>;

/// Boolean tree over comparisons between an attribute and an
/// attribute or literal. Any comparison involving Null is false.
struct Predicate {
    enum class Kind { Cmp, And, Or };

    Kind kind;
    CmpOp op{};
    std::string lhs;
    bool rhsIsAttr = false;
    std::string rhsAttr;
    Value rhsLit;
    std::vector<PredPtr> kids;

    static PredPtr cmpAttr(CmpOp op, std::string lhs, std::string rhs);
    static PredPtr cmpLit(CmpOp op, std::string lhs, Value lit);
    static PredPtr conj(std::vector<PredPtr> kids);
    static PredPtr disj(std::vector<PredPtr> kids);
};

bool evalPredicate(const Predicate& p, const Schema& schema, const Tuple& t);

/// One projection output column: a source attribute (possibly renamed)
/// or a constant.
struct ProjItem {
    enum class Kind { Attr, Const };

    Kind kind;
    std::string src;
    Value lit;
    std::string out;

    static ProjItem attr(std::string name);
    static ProjItem rename(std::string src, std::string out);
    static ProjItem constant(Value lit, std::string out);
};

enum class AggFunc { CountStar, Count, Sum, Avg, Min, Max };

/// Output attribute name for an aggregate column.
std::string aggAttrName(AggFunc f);

struct Query;
using QueryPtr = std::shared_ptr<const Query>;

/// Relational-algebra expression: RA+ plus difference and aggregation.
struct Query {
    enum class Kind { Rel, Select, Project, Join, Union, Diff, Agg };

    Kind kind;
    std::string relName;
    PredPtr pred;
    std::vector<ProjItem> items;
    std::vector<std::string> groupBy;
    AggFunc func{};
    std::string argAttr; // empty for count(*)
    QueryPtr left;       // sole child of unary nodes
    QueryPtr right;

    static QueryPtr rel(std::string name);
    static QueryPtr select(PredPtr pred, QueryPtr child);
    static QueryPtr project(std::vector<ProjItem> items, QueryPtr child);
    static QueryPtr join(PredPtr pred, QueryPtr l, QueryPtr r);
    static QueryPtr setUnion(QueryPtr l, QueryPtr r);
    static QueryPtr diff(QueryPtr l, QueryPtr r);
    static QueryPtr agg(std::vector<std::string> groupBy, AggFunc f,
                        std::string argAttr, QueryPtr child);
};

/// Named period relations a query runs against.
using Catalog = std::map<std::string, PeriodKRelation>;

/// Resolves schemas bottom-up and rejects ill-formed queries:
/// unknown relations/attributes, union incompatibility, and
/// aggregation under the set semiring. Returns the output schema.
Schema validate(const QueryPtr& q, const std::map<std::string, Schema>& schemas,
                SemiringKind kind);

/// Logical-model evaluation: period-semiring operations per tuple.
/// The result is normalized. Validates first.
PeriodKRelation evalLogical(const QueryPtr& q, const Catalog& db);

/// Aggregation over the logical model: for every tick the output
/// snapshot is the SQL aggregate of the child's snapshot. Evaluated
/// over changepoint-aligned intervals rather than per tick.
PeriodKRelation evalAggLogical(const std::vector<std::string>& groupBy,
                               AggFunc f, const std::string& argAttr,
                               const PeriodKRelation& child);

/// SQL aggregation of one (bag) snapshot: one output row per group
/// with multiplicity 1. Without group-by, an empty input yields the
/// conventional row (count 0, other functions Null).
KRelation aggregateSnapshot(const KRelation& slice,
                            const std::vector<std::string>& groupBy,
                            AggFunc f, const std::string& argAttr);

} // namespace tqe

#endif

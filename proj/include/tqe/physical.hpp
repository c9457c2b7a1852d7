#ifndef TQE_PHYSICAL_HPP
#define TQE_PHYSICAL_HPP

#include "tqe/algebra.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace tqe {

// Implementation level: queries run over SqlPeriodRelations. Each
// logical operator is rewritten into a period-column-aware variant
// whose output is per-tick equivalent to the logical result; an
// explicit coalesce operator restores the normal form.

/// Coalesce operator C: per value-equivalent tuple group, sweep the
/// interval endpoints and re-emit maximal constant-count intervals
/// with multiplicity = open-interval count.
SqlPeriodRelation coalesceOpC(const SqlPeriodRelation& r);

/// Split operator N_g: subdivides every r1 row at the endpoints of
/// all rows (from r1 and r2) that agree with it on `g` and overlap
/// it. Same-group output intervals are pairwise equal or disjoint.
SqlPeriodRelation splitOp(const SqlPeriodRelation& r1,
                          const SqlPeriodRelation& r2,
                          const std::vector<std::string>& g);

/// Plain (non-temporal) bag difference on identical rows, truncated
/// at zero. The unoptimized difference path is
/// bagDiff(splitOp(l,r,sch), splitOp(r,l,sch)).
SqlPeriodRelation bagDiff(const SqlPeriodRelation& a,
                          const SqlPeriodRelation& b);

/// Split + bag difference fused into one counting sweep: per
/// value-equivalent tuple, r counts negatively and segments with a
/// positive running multiplicity are emitted that many times.
SqlPeriodRelation splitDiffCount(const SqlPeriodRelation& l,
                                 const SqlPeriodRelation& r);

/// Split + aggregation. sum/count/avg use an add/retract endpoint
/// sweep over per-(group,begin,end) pre-aggregates; min/max fall back
/// to splitOp plus per-segment aggregation. Without group-by the
/// (null, tMin, tMax) padding row makes gap segments emit the SQL
/// empty-input row (count 0, other functions Null).
SqlPeriodRelation splitAggSweep(const std::vector<std::string>& groupBy,
                                AggFunc f, const std::string& argAttr,
                                const SqlPeriodRelation& child,
                                const TimeDomain& dom);

struct PhysPlan;
using PhysPtr = std::shared_ptr<const PhysPlan>;

/// Operator tree over SqlPeriodRelations.
struct PhysPlan {
    enum class Kind {
        Scan,     // named input relation
        SelectP,  // predicate over data columns
        ProjectP, // projection; period columns carried along
        JoinP,    // theta join restricted to overlapping periods
        UnionP,   // bag union
        DiffP,    // fused split + bag difference
        AggP,     // fused split + aggregation
        CoalesceP
    };

    Kind kind;
    std::string relName;
    PredPtr pred;
    std::vector<ProjItem> items;
    std::vector<std::string> groupBy;
    AggFunc func{};
    std::string argAttr;
    PhysPtr left;
    PhysPtr right;
};

/// Rewrites a validated query into a physical plan. Without pull-up,
/// every operator output is wrapped in a coalesce; with pull-up only
/// one root coalesce remains. count(*) is reduced to count over a
/// projected constant column.
PhysPtr rewrite(const QueryPtr& q, bool pullUp);

/// Evaluates a physical plan; all input relations must share one
/// time domain.
SqlPeriodRelation evalPhysical(const PhysPtr& plan,
                               const std::map<std::string, SqlPeriodRelation>& db);

} // namespace tqe

#endif

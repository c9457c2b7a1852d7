#ifndef TQE_ORACLE_HPP
#define TQE_ORACLE_HPP

#include "tqe/algebra.hpp"
#include "tqe/physical.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tqe {

/// Ground truth by brute force: evaluate every snapshot with the plain
/// (non-temporal) K-relational semantics and re-encode the results.

/// Non-temporal evaluation of one snapshot database.
KRelation snapshotEval(const QueryPtr& q,
                       const std::map<std::string, KRelation>& db);

/// Snapshot-expansion oracle: snapshotEval at every tick, then Enc_K.
PeriodKRelation oracleEval(const QueryPtr& q, const Catalog& db);

struct OracleBounds {
    Tick maxTicks = 16;       // |T|
    int maxTuples = 4;        // per relation
    int maxRelations = 3;
    std::int64_t maxMult = 3;
    int maxDepth = 3;
    bool bagOnly = false;     // Set-semiring seeds skip the physical level
};

struct OracleReport {
    std::uint64_t seed = 0;
    bool ok = true;
    std::string detail;                 // which evaluators disagreed
    std::optional<Tick> mismatchTick;   // first differing snapshot
    std::string expected;               // oracle snapshot at that tick
    std::string actual;
};

struct DifferentialResult {
    int seedsRun = 0;
    std::vector<OracleReport> failures;
};

/// Deterministic per-seed random instance, shared by tests and the CLI.
struct RandomInstance {
    Catalog db;
    QueryPtr query;
};
RandomInstance makeRandomInstance(std::uint64_t seed, const OracleBounds& b);

/// Runs `seedCount` random instances through the oracle, the logical
/// evaluator, and (bag seeds) the physical evaluator with and without
/// coalesce pull-up. `logicalEval` is replaceable so mutation tests can
/// verify the harness actually detects broken evaluators.
DifferentialResult differentialCheck(
    int seedCount, const OracleBounds& bounds = {},
    const std::function<PeriodKRelation(const QueryPtr&, const Catalog&)>&
        logicalEval = {});

/// Human-readable snapshot, used in mismatch reports.
std::string describeKRelation(const KRelation& r);

} // namespace tqe

#endif

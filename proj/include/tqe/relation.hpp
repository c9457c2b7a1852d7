#ifndef TQE_RELATION_HPP
#define TQE_RELATION_HPP

#include "tqe/period.hpp"
#include "tqe/value.hpp"

#include <map>
#include <string>

namespace tqe {

/// Non-temporal K-relation: finite mapping tuple -> nonzero annotation.
class KRelation {
public:
    KRelation(Schema schema, SemiringKind kind)
        : schema_(std::move(schema)), kind_(kind) {}

    const Schema& schema() const { return schema_; }
    SemiringKind kind() const { return kind_; }
    SemiringSpec spec() const { return SemiringSpec(kind_); }
    const std::map<Tuple, KValue>& data() const { return data_; }
    bool empty() const { return data_.empty(); }

    /// Semiring-adds `value` into the tuple's slot; zero slots are absent.
    void add(const Tuple& tuple, const KValue& value);

    /// Annotation of a tuple (zero when absent).
    KValue at(const Tuple& tuple) const;

    bool operator==(const KRelation&) const = default;

private:
    Schema schema_;
    SemiringKind kind_;
    std::map<Tuple, KValue> data_;
};

/// One relation of a snapshot database: a K-relation per tick.
/// Ticks without an entry hold the empty relation.
class SnapshotKRelation {
public:
    SnapshotKRelation(Schema schema, SemiringKind kind, TimeDomain dom)
        : schema_(std::move(schema)), kind_(kind), dom_(dom) {}

    const Schema& schema() const { return schema_; }
    SemiringKind kind() const { return kind_; }
    const TimeDomain& domain() const { return dom_; }

    /// Semiring-adds into the snapshot at tick t; t must be in the domain.
    void add(Tick t, const Tuple& tuple, const KValue& value);

    /// Snapshot at tick t (empty relation when nothing was recorded).
    KRelation at(Tick t) const;

    bool operator==(const SnapshotKRelation&) const = default;

private:
    Schema schema_;
    SemiringKind kind_;
    TimeDomain dom_;
    std::map<Tick, KRelation> byTick_;
};

/// Snapshot K-database: named snapshot relations over one time domain.
struct SnapshotKDatabase {
    TimeDomain dom;
    SemiringKind kind;
    std::map<std::string, SnapshotKRelation> rels;

    SnapshotKDatabase(TimeDomain d, SemiringKind k) : dom(d), kind(k) {}

    SnapshotKRelation& relation(const std::string& name);
    const SnapshotKRelation& relation(const std::string& name) const;
    SnapshotKRelation& addRelation(const std::string& name, Schema schema);
};

/// Logical model: finite mapping tuple -> normalized nonempty element.
class PeriodKRelation {
public:
    PeriodKRelation(Schema schema, SemiringKind kind, TimeDomain dom)
        : schema_(std::move(schema)), kind_(kind), dom_(dom) {}

    const Schema& schema() const { return schema_; }
    SemiringKind kind() const { return kind_; }
    SemiringSpec spec() const { return SemiringSpec(kind_); }
    const TimeDomain& domain() const { return dom_; }
    const std::map<Tuple, TemporalElement>& data() const { return data_; }
    bool empty() const { return data_.empty(); }

    /// Semiring-adds (interval, value) into the tuple's element. The
    /// relation may transiently hold non-normalized elements; call
    /// normalize() before exposing it as a result.
    void add(const Tuple& tuple, const Interval& iv, const KValue& value);

    /// Period-adds a whole element into the tuple's slot.
    void addElement(const Tuple& tuple, const TemporalElement& e);

    /// Element of a tuple (pZero when absent).
    TemporalElement at(const Tuple& tuple) const;

    /// Coalesces every element and drops tuples whose element is empty.
    PeriodKRelation normalized() const;
    bool isNormalized() const;

    bool operator==(const PeriodKRelation&) const = default;

private:
    Schema schema_;
    SemiringKind kind_;
    TimeDomain dom_;
    std::map<Tuple, TemporalElement> data_;
};

/// One row of the SQL encoding: data values plus period columns.
struct Row {
    Tuple vals;
    Tick begin;
    Tick end;

    auto operator<=>(const Row&) const = default;
};

/// Implementation encoding: a bag of period rows, stored as
/// row -> positive multiplicity.
class SqlPeriodRelation {
public:
    SqlPeriodRelation(Schema schema, TimeDomain dom)
        : schema_(std::move(schema)), dom_(dom) {}

    /// Data attributes only; the period columns are implicit.
    const Schema& schema() const { return schema_; }
    const TimeDomain& domain() const { return dom_; }
    const std::map<Row, std::int64_t>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    std::int64_t rowCount() const;

    /// Adds `mult` copies of a row. begin < end and domain containment
    /// are enforced; a non-positive total drops the row.
    void add(const Row& row, std::int64_t mult = 1);

    /// Like add, but the row must sort strictly after every row already
    /// present; insertion is then O(1).
    void append(const Row& row, std::int64_t mult);

    bool operator==(const SqlPeriodRelation&) const = default;

private:
    Schema schema_;
    TimeDomain dom_;
    std::map<Row, std::int64_t> rows_;
};

/// Enc_K: collapse the per-tick history of each tuple into one element.
PeriodKRelation encSnapshot(const SnapshotKDatabase& db, const std::string& relName);
PeriodKRelation encSnapshot(const SnapshotKRelation& rel);

/// Enc_K inverse: per-tick snapshots of a period relation.
SnapshotKRelation decSnapshot(const PeriodKRelation& r);

/// Snapshot of a period relation at one tick; zeros dropped.
KRelation relTimeslice(const PeriodKRelation& r, Tick t);

/// PeriodEnc: one row per support interval, multiplicity = annotation.
/// Defined for the bag semiring only.
SqlPeriodRelation periodEnc(const PeriodKRelation& r);

/// PeriodEnc inverse, composed with coalescing so the result is a
/// valid (normalized) period relation.
PeriodKRelation periodEncInv(const SqlPeriodRelation& s);

} // namespace tqe

#endif

#include "tqe/relation.hpp"

namespace tqe {

void KRelation::add(const Tuple& tuple, const KValue& value) {
    if (tuple.size() != schema_.arity())
        throw ContractError("tuple arity does not match schema");
    SemiringSpec sp = spec();
    if (sp.isZero(value))
        return;
    auto it = data_.find(tuple);
    if (it == data_.end()) {
        data_.emplace(tuple, value);
    } else {
        it->second = sp.add(it->second, value);
        if (sp.isZero(it->second))
            data_.erase(it);
    }
}

KValue KRelation::at(const Tuple& tuple) const {
    auto it = data_.find(tuple);
    return it == data_.end() ? spec().zero() : it->second;
}

void SnapshotKRelation::add(Tick t, const Tuple& tuple, const KValue& value) {
    if (!dom_.contains(t))
        throw RangeError("snapshot tick outside time domain");
    auto it = byTick_.find(t);
    if (it == byTick_.end())
        it = byTick_.emplace(t, KRelation(schema_, kind_)).first;
    it->second.add(tuple, value);
    if (it->second.empty())
        byTick_.erase(it);
}

KRelation SnapshotKRelation::at(Tick t) const {
    if (!dom_.contains(t))
        throw RangeError("snapshot tick outside time domain");
    auto it = byTick_.find(t);
    return it == byTick_.end() ? KRelation(schema_, kind_) : it->second;
}

SnapshotKRelation& SnapshotKDatabase::relation(const std::string& name) {
    auto it = rels.find(name);
    if (it == rels.end())
        throw ContractError("unknown relation: " + name);
    return it->second;
}

const SnapshotKRelation& SnapshotKDatabase::relation(const std::string& name) const {
    auto it = rels.find(name);
    if (it == rels.end())
        throw ContractError("unknown relation: " + name);
    return it->second;
}

SnapshotKRelation& SnapshotKDatabase::addRelation(const std::string& name,
                                                  Schema schema) {
    auto [it, fresh] =
        rels.emplace(name, SnapshotKRelation(std::move(schema), kind, dom));
    if (!fresh)
        throw ContractError("duplicate relation: " + name);
    return it->second;
}

void PeriodKRelation::add(const Tuple& tuple, const Interval& iv,
                          const KValue& value) {
    if (tuple.size() != schema_.arity())
        throw ContractError("tuple arity does not match schema");
    if (spec().isZero(value))
        return;
    auto it = data_.find(tuple);
    if (it == data_.end())
        it = data_.emplace(tuple, TemporalElement(kind_, dom_)).first;
    it->second.add(iv, value);
    if (it->second.empty())
        data_.erase(it);
}

void PeriodKRelation::addElement(const Tuple& tuple, const TemporalElement& e) {
    if (e.kind() != kind_ || e.domain() != dom_)
        throw ContractError("element does not match relation kind/domain");
    for (const auto& [iv, v] : e.support())
        add(tuple, iv, v);
}

TemporalElement PeriodKRelation::at(const Tuple& tuple) const {
    auto it = data_.find(tuple);
    return it == data_.end() ? TemporalElement(kind_, dom_) : it->second;
}

PeriodKRelation PeriodKRelation::normalized() const {
    PeriodKRelation out(schema_, kind_, dom_);
    for (const auto& [tuple, e] : data_) {
        TemporalElement c = e.coalesced();
        if (!c.empty())
            out.data_.emplace(tuple, std::move(c));
    }
    return out;
}

bool PeriodKRelation::isNormalized() const {
    return *this == normalized();
}

std::int64_t SqlPeriodRelation::rowCount() const {
    std::int64_t n = 0;
    for (const auto& [row, mult] : rows_)
        n += mult;
    return n;
}

void SqlPeriodRelation::add(const Row& row, std::int64_t mult) {
    if (row.vals.size() != schema_.arity())
        throw ContractError("row arity does not match schema");
    if (row.begin >= row.end)
        throw ContractError("malformed row: begin >= end");
    if (row.begin < dom_.tmin || row.end > dom_.tmax)
        throw RangeError("row period outside time domain");
    if (mult == 0)
        return;
    auto it = rows_.find(row);
    if (it == rows_.end()) {
        if (mult < 0)
            throw ContractError("negative row multiplicity");
        rows_.emplace(row, mult);
    } else {
        it->second += mult;
        if (it->second < 0)
            throw ContractError("negative row multiplicity");
        if (it->second == 0)
            rows_.erase(it);
    }
}

void SqlPeriodRelation::append(const Row& row, std::int64_t mult) {
    if (row.vals.size() != schema_.arity())
        throw ContractError("row arity does not match schema");
    if (row.begin >= row.end)
        throw ContractError("malformed row: begin >= end");
    if (row.begin < dom_.tmin || row.end > dom_.tmax)
        throw RangeError("row period outside time domain");
    if (mult < 0)
        throw ContractError("negative row multiplicity");
    if (mult == 0)
        return;
    if (!rows_.empty() && !(rows_.rbegin()->first < row))
        throw ContractError("append out of order");
    rows_.emplace_hint(rows_.end(), row, mult);
}

PeriodKRelation encSnapshot(const SnapshotKDatabase& db,
                            const std::string& relName) {
    return encSnapshot(db.relation(relName));
}

PeriodKRelation encSnapshot(const SnapshotKRelation& rel) {
    const TimeDomain& dom = rel.domain();
    PeriodKRelation out(rel.schema(), rel.kind(), dom);
    for (Tick t = dom.tmin; t < dom.tmax; ++t) {
        KRelation snap = rel.at(t);
        for (const auto& [tuple, v] : snap.data())
            out.add(tuple, Interval(t, t + 1), v);
    }
    return out.normalized();
}

SnapshotKRelation decSnapshot(const PeriodKRelation& r) {
    const TimeDomain& dom = r.domain();
    SnapshotKRelation out(r.schema(), r.kind(), dom);
    for (const auto& [tuple, e] : r.data()) {
        TemporalElement c = e.coalesced();
        for (const auto& [iv, v] : c.support()) {
            for (Tick t = iv.begin; t < iv.end; ++t)
                out.add(t, tuple, v);
        }
    }
    return out;
}

KRelation relTimeslice(const PeriodKRelation& r, Tick t) {
    if (!r.domain().contains(t))
        throw RangeError("timeslice outside time domain");
    KRelation out(r.schema(), r.kind());
    for (const auto& [tuple, e] : r.data())
        out.add(tuple, e.timeslice(t));
    return out;
}

SqlPeriodRelation periodEnc(const PeriodKRelation& r) {
    if (r.kind() != SemiringKind::Bag)
        throw ContractError("period encoding requires the bag semiring");
    SqlPeriodRelation out(r.schema(), r.domain());
    for (const auto& [tuple, e] : r.data()) {
        for (const auto& [iv, v] : e.support())
            out.add(Row{tuple, iv.begin, iv.end}, v.asInt());
    }
    return out;
}

PeriodKRelation periodEncInv(const SqlPeriodRelation& s) {
    PeriodKRelation out(s.schema(), SemiringKind::Bag, s.domain());
    for (const auto& [row, mult] : s.rows())
        out.add(row.vals, Interval(row.begin, row.end),
                KValue{SemiringKind::Bag, mult});
    return out.normalized();
}

} // namespace tqe

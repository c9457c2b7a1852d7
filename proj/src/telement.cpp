#include "tqe/telement.hpp"

#include <algorithm>

namespace tqe {

void TemporalElement::add(const Interval& iv, const KValue& value) {
    if (iv.begin < dom_.tmin || iv.end > dom_.tmax)
        throw RangeError("interval outside time domain");
    SemiringSpec sp = spec();
    if (sp.isZero(value))
        return;
    auto it = support_.find(iv);
    if (it == support_.end()) {
        support_.emplace(iv, value);
    } else {
        it->second = sp.add(it->second, value);
        if (sp.isZero(it->second))
            support_.erase(it);
    }
}

KValue TemporalElement::timeslice(Tick t) const {
    if (!dom_.contains(t))
        throw RangeError("timeslice outside time domain");
    SemiringSpec sp = spec();
    KValue acc = sp.zero();
    for (const auto& [iv, v] : support_) {
        if (iv.begin > t)
            break;
        if (iv.contains(t))
            acc = sp.add(acc, v);
    }
    return acc;
}

std::vector<std::pair<Interval, KValue>> TemporalElement::segments() const {
    // Endpoint sweep: the slice is constant between consecutive interval
    // endpoints, so one pass over the sorted endpoints suffices.
    std::map<Tick, std::int64_t> delta;
    for (const auto& [iv, v] : support_) {
        delta[iv.begin] += v.raw;
        delta[iv.end] -= v.raw;
    }
    std::vector<std::pair<Interval, KValue>> raw;
    Tick prev = dom_.tmin;
    std::int64_t open = 0;
    auto emit = [&](Tick upto) {
        if (prev < upto) {
            KValue v = kind_ == SemiringKind::Set
                           ? KValue{kind_, open > 0 ? 1 : 0}
                           : KValue{kind_, open};
            raw.emplace_back(Interval(prev, upto), v);
            prev = upto;
        }
    };
    for (const auto& [t, d] : delta) {
        emit(std::min(t, dom_.tmax));
        open += d;
    }
    emit(dom_.tmax);
    // Merge adjacent segments with equal values.
    std::vector<std::pair<Interval, KValue>> out;
    for (const auto& seg : raw) {
        if (!out.empty() && out.back().second == seg.second &&
            out.back().first.end == seg.first.begin) {
            out.back().first.end = seg.first.end;
        } else {
            out.push_back(seg);
        }
    }
    return out;
}

std::vector<Tick> TemporalElement::changepoints() const {
    std::vector<Tick> cps;
    for (const auto& seg : segments())
        cps.push_back(seg.first.begin);
    return cps;
}

std::vector<Interval> TemporalElement::changeIntervals() const {
    std::vector<Interval> out;
    for (const auto& seg : segments())
        out.push_back(seg.first);
    return out;
}

TemporalElement TemporalElement::coalesced() const {
    TemporalElement out(kind_, dom_);
    for (const auto& [iv, v] : segments()) {
        if (v.raw != 0)
            out.support_.emplace(iv, v);
    }
    return out;
}

bool TemporalElement::isNormalized() const {
    return *this == coalesced();
}

bool TemporalElement::snapshotEq(const TemporalElement& a,
                                 const TemporalElement& b) {
    if (a.kind_ != b.kind_ || a.dom_ != b.dom_)
        throw ContractError("snapshotEq over mismatched elements");
    return a.coalesced() == b.coalesced();
}

} // namespace tqe

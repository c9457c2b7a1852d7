#ifndef TQE_TELEMENT_HPP
#define TQE_TELEMENT_HPP

#include "tqe/common.hpp"
#include "tqe/semiring.hpp"

#include <map>
#include <utility>
#include <vector>

namespace tqe {

/// Finite, totally ordered time domain [tmin, tmax).
struct TimeDomain {
    Tick tmin;
    Tick tmax;

    TimeDomain(Tick lo, Tick hi) : tmin(lo), tmax(hi) {
        if (lo >= hi)
            throw ContractError("time domain must satisfy tmin < tmax");
    }

    bool contains(Tick t) const { return t >= tmin && t < tmax; }
    Tick length() const { return tmax - tmin; }
    bool operator==(const TimeDomain&) const = default;
};

/// Half-open interval [begin, end) of ticks. Ordered by (begin, end).
struct Interval {
    Tick begin;
    Tick end;

    Interval(Tick b, Tick e) : begin(b), end(e) {
        if (b >= e)
            throw ContractError("interval must satisfy begin < end");
    }

    bool contains(Tick t) const { return t >= begin && t < end; }
    bool overlaps(const Interval& o) const {
        return begin < o.end && o.begin < end;
    }
    auto operator<=>(const Interval&) const = default;
};

/// Finite mapping from intervals to nonzero semiring values; the
/// annotation history of one tuple. Overlapping intervals sum: the
/// annotation at tick t is the semiring sum over all intervals
/// containing t. Support is kept sorted by (begin, end) so equality
/// is structural and iteration is deterministic.
class TemporalElement {
public:
    TemporalElement(SemiringKind kind, TimeDomain dom)
        : kind_(kind), dom_(dom) {}

    SemiringKind kind() const { return kind_; }
    const TimeDomain& domain() const { return dom_; }
    SemiringSpec spec() const { return SemiringSpec(kind_); }

    const std::map<Interval, KValue>& support() const { return support_; }
    bool empty() const { return support_.empty(); }

    /// Semiring-adds `value` into the slot for `iv`; zero slots are absent.
    void add(const Interval& iv, const KValue& value);

    /// Annotation valid at tick t (semiring sum over covering intervals).
    KValue timeslice(Tick t) const;

    /// Sorted annotation changepoints: tmin plus every tick where the
    /// slice differs from the slice one tick earlier.
    std::vector<Tick> changepoints() const;

    /// Maximal intervals of constant slice value, covering the domain.
    std::vector<Interval> changeIntervals() const;

    /// Normal form: one interval per change interval with its (nonzero)
    /// slice value. Idempotent; preserves every timeslice.
    TemporalElement coalesced() const;

    /// True iff this element is a coalesce fixed point.
    bool isNormalized() const;

    /// Pointwise slice equality over the whole domain.
    static bool snapshotEq(const TemporalElement& a, const TemporalElement& b);

    bool operator==(const TemporalElement&) const = default;

    /// Constant-slice segments covering [tmin, tmax), adjacent segments
    /// carrying different values (zero segments included).
    std::vector<std::pair<Interval, KValue>> segments() const;

private:
    SemiringKind kind_;
    TimeDomain dom_;
    std::map<Interval, KValue> support_;
};

} // namespace tqe

#endif

#ifndef TQE_PERIOD_HPP
#define TQE_PERIOD_HPP

#include "tqe/telement.hpp"

namespace tqe {

// The period semiring over normalized temporal elements. Pointwise
// variants are exposed separately so callers (and tests) can defer
// coalescing; the p* operations always return coalesced results.

/// Element with empty support (slices to zero everywhere).
TemporalElement pZero(SemiringKind kind, const TimeDomain& dom);

/// Element mapping exactly [tmin, tmax) to the semiring one.
TemporalElement pOne(SemiringKind kind, const TimeDomain& dom);

/// Interval-wise sum of two supports, no coalescing.
TemporalElement pAddPointwise(const TemporalElement& a, const TemporalElement& b);

/// Products of all overlapping support pairs, accumulated on the
/// intersection intervals, no coalescing.
TemporalElement pMulPointwise(const TemporalElement& a, const TemporalElement& b);

/// Slice-wise monus over intervals aligned on the union of both
/// changepoint sets, no coalescing.
TemporalElement pMonusAligned(const TemporalElement& a, const TemporalElement& b);

TemporalElement pAdd(const TemporalElement& a, const TemporalElement& b);
TemporalElement pMul(const TemporalElement& a, const TemporalElement& b);
TemporalElement pMonus(const TemporalElement& a, const TemporalElement& b);

} // namespace tqe

#endif

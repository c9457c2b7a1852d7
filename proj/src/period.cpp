#include "tqe/period.hpp"

#include <algorithm>

namespace tqe {

namespace {

void requireCompatible(const TemporalElement& a, const TemporalElement& b) {
    if (a.kind() != b.kind())
        throw ContractError("period operation over mismatched semirings");
    if (a.domain() != b.domain())
        throw ContractError("period operation over mismatched time domains");
}

} // namespace

TemporalElement pZero(SemiringKind kind, const TimeDomain& dom) {
    return TemporalElement(kind, dom);
}

TemporalElement pOne(SemiringKind kind, const TimeDomain& dom) {
    TemporalElement e(kind, dom);
    e.add(Interval(dom.tmin, dom.tmax), SemiringSpec(kind).one());
    return e;
}

TemporalElement pAddPointwise(const TemporalElement& a, const TemporalElement& b) {
    requireCompatible(a, b);
    TemporalElement out = a;
    for (const auto& [iv, v] : b.support())
        out.add(iv, v);
    return out;
}

TemporalElement pMulPointwise(const TemporalElement& a, const TemporalElement& b) {
    requireCompatible(a, b);
    SemiringSpec sp = a.spec();
    TemporalElement out(a.kind(), a.domain());
    // Sort-merge over supports sorted by begin: for each left interval,
    // scan right intervals until they start past its end.
    for (const auto& [ia, va] : a.support()) {
        for (const auto& [ib, vb] : b.support()) {
            if (ib.begin >= ia.end)
                break;
            if (!ia.overlaps(ib))
                continue;
            Interval both(std::max(ia.begin, ib.begin), std::min(ia.end, ib.end));
            out.add(both, sp.mul(va, vb));
        }
    }
    return out;
}

TemporalElement pMonusAligned(const TemporalElement& a, const TemporalElement& b) {
    requireCompatible(a, b);
    SemiringSpec sp = a.spec();
    TemporalElement out(a.kind(), a.domain());
    auto segsA = a.segments();
    auto segsB = b.segments();
    // Both segment lists cover the domain; walk them in lockstep and cut
    // at every boundary from either side. The monus is constant per cut.
    std::size_t i = 0, j = 0;
    Tick pos = a.domain().tmin;
    while (i < segsA.size() && j < segsB.size()) {
        Tick upto = std::min(segsA[i].first.end, segsB[j].first.end);
        KValue v = sp.monus(segsA[i].second, segsB[j].second);
        if (!sp.isZero(v))
            out.add(Interval(pos, upto), v);
        pos = upto;
        if (segsA[i].first.end == upto)
            ++i;
        if (segsB[j].first.end == upto)
            ++j;
    }
    return out;
}

TemporalElement pAdd(const TemporalElement& a, const TemporalElement& b) {
    return pAddPointwise(a, b).coalesced();
}

TemporalElement pMul(const TemporalElement& a, const TemporalElement& b) {
    return pMulPointwise(a, b).coalesced();
}

TemporalElement pMonus(const TemporalElement& a, const TemporalElement& b) {
    return pMonusAligned(a, b).coalesced();
}

} // namespace tqe

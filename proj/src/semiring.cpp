#include "tqe/semiring.hpp"

namespace tqe {

std::string toString(SemiringKind kind) {
    return kind == SemiringKind::Set ? "set" : "bag";
}

KValue SemiringSpec::fromBool(bool b) const {
    if (kind_ != SemiringKind::Set)
        throw ContractError("boolean value in bag semiring");
    return {kind_, b ? 1 : 0};
}

KValue SemiringSpec::fromCount(std::int64_t n) const {
    if (kind_ != SemiringKind::Bag)
        throw ContractError("multiplicity value in set semiring");
    if (n < 0)
        throw ContractError("negative multiplicity");
    return {kind_, n};
}

const KValue& SemiringSpec::check(const KValue& k) const {
    if (k.kind != kind_)
        throw ContractError("semiring tag mismatch");
    return k;
}

KValue SemiringSpec::add(const KValue& k, const KValue& k2) const {
    check(k);
    check(k2);
    if (kind_ == SemiringKind::Set)
        return {kind_, (k.raw != 0 || k2.raw != 0) ? 1 : 0};
    std::int64_t out;
    if (__builtin_add_overflow(k.raw, k2.raw, &out))
        throw OverflowError("multiplicity overflow in add");
    return {kind_, out};
}

KValue SemiringSpec::mul(const KValue& k, const KValue& k2) const {
    check(k);
    check(k2);
    if (kind_ == SemiringKind::Set)
        return {kind_, (k.raw != 0 && k2.raw != 0) ? 1 : 0};
    std::int64_t out;
    if (__builtin_mul_overflow(k.raw, k2.raw, &out))
        throw OverflowError("multiplicity overflow in mul");
    return {kind_, out};
}

KValue SemiringSpec::monus(const KValue& k, const KValue& k2) const {
    check(k);
    check(k2);
    if (kind_ == SemiringKind::Set)
        return {kind_, (k.raw != 0 && k2.raw == 0) ? 1 : 0};
    return {kind_, k.raw > k2.raw ? k.raw - k2.raw : 0};
}

bool SemiringSpec::naturalLeq(const KValue& k, const KValue& k2) const {
    check(k);
    check(k2);
    if (kind_ == SemiringKind::Set)
        return k.raw == 0 || k2.raw != 0;
    return k.raw <= k2.raw;
}

} // namespace tqe

#ifndef TQE_SEMIRING_HPP
#define TQE_SEMIRING_HPP

#include "tqe/common.hpp"

#include <cstdint>
#include <string>

namespace tqe {

/// The two supported annotation domains: B (sets) and N (multisets).
enum class SemiringKind { Set, Bag };

std::string toString(SemiringKind kind);

/// A single annotation value. Booleans are stored as 0/1, bag
/// multiplicities as non-negative 64-bit integers.
struct KValue {
    SemiringKind kind;
    std::int64_t raw;

    bool operator==(const KValue&) const = default;

    bool asBool() const { return raw != 0; }
    std::int64_t asInt() const { return raw; }
};

/// Operation table of a commutative semiring with natural order and monus.
/// Dispatch is by runtime tag so one engine handles both instances.
class SemiringSpec {
public:
    explicit SemiringSpec(SemiringKind kind) : kind_(kind) {}

    SemiringKind kind() const { return kind_; }

    KValue zero() const { return {kind_, 0}; }
    KValue one() const { return {kind_, 1}; }
    KValue fromBool(bool b) const;
    KValue fromCount(std::int64_t n) const;

    bool isZero(const KValue& k) const { return check(k).raw == 0; }

    KValue add(const KValue& k, const KValue& k2) const;
    KValue mul(const KValue& k, const KValue& k2) const;
    /// Truncating minus: the smallest k'' with k <= k2 + k''.
    KValue monus(const KValue& k, const KValue& k2) const;
    /// Natural order: true iff some k'' satisfies k + k'' = k2.
    bool naturalLeq(const KValue& k, const KValue& k2) const;

private:
    const KValue& check(const KValue& k) const;

    SemiringKind kind_;
};

} // namespace tqe

#endif

#ifndef TQE_VALUE_HPP
#define TQE_VALUE_HPP

#include "tqe/common.hpp"
#include "tqe/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tqe {

/// A scalar attribute value: Null, Int, exact Rational, or Str.
/// Null groups with Null but compares false under every predicate.
class Value {
public:
    Value() : v_(std::monostate{}) {}
    Value(std::int64_t i) : v_(i) {}
    Value(Rational r) : v_(std::move(r)) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}

    static Value null() { return Value(); }

    bool isNull() const { return std::holds_alternative<std::monostate>(v_); }
    bool isInt() const { return std::holds_alternative<std::int64_t>(v_); }
    bool isRational() const { return std::holds_alternative<Rational>(v_); }
    bool isString() const { return std::holds_alternative<std::string>(v_); }
    bool isNumeric() const { return isInt() || isRational(); }

    std::int64_t asInt() const { return std::get<std::int64_t>(v_); }
    const Rational& asRational() const { return std::get<Rational>(v_); }
    const std::string& asString() const { return std::get<std::string>(v_); }

    /// Numeric view; valid only when isNumeric().
    Rational toRational() const {
        return isInt() ? Rational(asInt()) : asRational();
    }

    /// Total order used for grouping and canonical output:
    /// Null < numerics (compared exactly, Int and Rational mixed) < Str.
    std::strong_ordering operator<=>(const Value& o) const;
    bool operator==(const Value& o) const {
        return (*this <=> o) == std::strong_ordering::equal;
    }

    /// Canonical rendering; rationals at the given decimal precision.
    std::string toString(int precision = 4) const;

private:
    std::variant<std::monostate, std::int64_t, Rational, std::string> v_;
};

using Tuple = std::vector<Value>;

std::strong_ordering compareTuples(const Tuple& a, const Tuple& b);

/// Ordered attribute names of a relation.
struct Schema {
    std::vector<std::string> attrs;

    std::size_t arity() const { return attrs.size(); }
    /// Index of an attribute; ContractError if absent.
    std::size_t indexOf(const std::string& name) const;
    bool has(const std::string& name) const;
    bool operator==(const Schema&) const = default;
};

} // namespace tqe

#endif

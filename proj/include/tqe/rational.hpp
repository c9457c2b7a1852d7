#ifndef TQE_RATIONAL_HPP
#define TQE_RATIONAL_HPP

#include "tqe/common.hpp"

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace tqe {

/// Exact rational number with a normalized int64 numerator/denominator.
/// Intermediate products go through 128-bit arithmetic; results that do
/// not fit back into 64 bits raise OverflowError.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0)
            throw ContractError("rational with zero denominator");
        __int128 nn = n;
        __int128 dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        normalizeFrom(nn, dd);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool isInteger() const { return den_ == 1; }

    Rational operator+(const Rational& o) const {
        return fromWide((__int128)num_ * o.den_ + (__int128)o.num_ * den_,
                        (__int128)den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return fromWide((__int128)num_ * o.den_ - (__int128)o.num_ * den_,
                        (__int128)den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return fromWide((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0)
            throw ContractError("rational division by zero");
        return fromWide((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    }

    std::strong_ordering operator<=>(const Rational& o) const {
        __int128 lhs = (__int128)num_ * o.den_;
        __int128 rhs = (__int128)o.num_ * den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    /// Fixed-point decimal rendering with banker's rounding; integers
    /// render without a fractional part.
    std::string toString(int precision = 4) const;

private:
    static Rational fromWide(__int128 n, __int128 d) {
        Rational r;
        if (d < 0) { n = -n; d = -d; }
        r.normalizeFrom(n, d);
        return r;
    }

    void normalizeFrom(__int128 n, __int128 d) {
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw OverflowError("rational out of 64-bit range");
        num_ = (std::int64_t)n;
        den_ = (std::int64_t)d;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace tqe

#endif

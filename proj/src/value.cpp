#include "tqe/value.hpp"

#include <algorithm>
#include <cstdlib>

namespace tqe {

namespace {

int rank(const Value& v) {
    if (v.isNull()) return 0;
    if (v.isNumeric()) return 1;
    return 2;
}

} // namespace

std::strong_ordering Value::operator<=>(const Value& o) const {
    int ra = rank(*this);
    int rb = rank(o);
    if (ra != rb)
        return ra <=> rb;
    if (ra == 0)
        return std::strong_ordering::equal;
    if (ra == 1)
        return toRational() <=> o.toRational();
    return asString().compare(o.asString()) <=> 0;
}

std::string Value::toString(int precision) const {
    if (isNull())
        return "";
    if (isInt())
        return std::to_string(asInt());
    if (isRational())
        return asRational().toString(precision);
    return asString();
}

std::string Rational::toString(int precision) const {
    if (den_ == 1)
        return std::to_string(num_);
    // Scale to `precision` decimals with round-half-even.
    __int128 scale = 1;
    for (int i = 0; i < precision; ++i)
        scale *= 10;
    __int128 n = (__int128)num_ * scale;
    bool neg = n < 0;
    if (neg)
        n = -n;
    __int128 q = n / den_;
    __int128 r = n % den_;
    __int128 twice = r * 2;
    if (twice > den_ || (twice == den_ && (q % 2) == 1))
        ++q;
    std::string digits;
    if (q == 0)
        digits = "0";
    while (q > 0) {
        digits.push_back(char('0' + (int)(q % 10)));
        q /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    if (precision > 0) {
        while ((int)digits.size() <= precision)
            digits.insert(digits.begin(), '0');
        digits.insert(digits.end() - precision, '.');
    }
    if (neg)
        digits.insert(digits.begin(), '-');
    return digits;
}

std::strong_ordering compareTuples(const Tuple& a, const Tuple& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = a[i] <=> b[i];
        if (c != std::strong_ordering::equal)
            return c;
    }
    return a.size() <=> b.size();
}

std::size_t Schema::indexOf(const std::string& name) const {
    for (std::size_t i = 0; i < attrs.size(); ++i)
        if (attrs[i] == name)
            return i;
    throw ContractError("unknown attribute: " + name);
}

bool Schema::has(const std::string& name) const {
    return std::find(attrs.begin(), attrs.end(), name) != attrs.end();
}

} // namespace tqe

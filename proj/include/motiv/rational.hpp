#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "motiv/bigint.hpp"

namespace motiv {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; every operation is exact. There is no floating point
/// anywhere in this library.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long value) : num_(value), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    /// Parses "p/q" or "p" (optionally signed). Exact, no rounding.
    static Rational parse(std::string_view text);

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.negative(); }
    bool is_integer() const { return den_ == BigInt(1); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    std::strong_ordering operator<=>(const Rational& o) const;
    bool operator==(const Rational& o) const = default;

    /// "p/q", or just "p" when the denominator is 1. Round-trips via parse.
    std::string to_string() const;

private:
    BigInt num_, den_;

    void normalize();
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace motiv

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace motiv {

/// Arbitrary-precision signed integer, sign-magnitude with base-10^9 limbs.
/// Small and unoptimized on purpose; operands in this library stay tiny
/// (a few limbs), so schoolbook algorithms are fine.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long value);
    static BigInt parse(std::string_view text);

    bool is_zero() const { return limbs_.empty(); }
    bool negative() const { return negative_; }
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// Quotient truncated toward zero, remainder with the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    static BigInt gcd(BigInt a, BigInt b);
    static BigInt lcm(const BigInt& a, const BigInt& b);

    std::strong_ordering operator<=>(const BigInt& o) const;
    bool operator==(const BigInt& o) const = default;

    std::string to_string() const;

    /// Value as int64 if it fits, otherwise nullopt-like via `ok`.
    bool fits_int64() const;
    long long to_int64() const;  // precondition: fits_int64()

private:
    static constexpr uint32_t kBase = 1'000'000'000;

    // limbs_ little-endian, no leading zero limb; empty means zero.
    std::vector<uint32_t> limbs_;
    bool negative_ = false;

    void trim();
    static int cmp_magnitude(const BigInt& a, const BigInt& b);
    static BigInt add_magnitude(const BigInt& a, const BigInt& b);
    static BigInt sub_magnitude(const BigInt& a, const BigInt& b);  // |a| >= |b|
    static BigInt mul_small(const BigInt& a, uint32_t m);
};

}  // namespace motiv

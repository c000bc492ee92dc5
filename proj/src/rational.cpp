#include "motiv/rational.hpp"

#include <stdexcept>

namespace motiv {

void Rational::normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::parse(std::string_view text) {
    size_t slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(BigInt::parse(text), BigInt(1));
    return Rational(BigInt::parse(text.substr(0, slash)),
                    BigInt::parse(text.substr(slash + 1)));
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    // denominators are positive, so cross-multiplication preserves order
    return num_ * o.den_ <=> o.num_ * den_;
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace motiv

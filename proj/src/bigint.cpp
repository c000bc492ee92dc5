#include "motiv/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace motiv {

BigInt::BigInt(long long value) {
    negative_ = value < 0;
    unsigned long long mag =
        negative_ ? -static_cast<unsigned long long>(value) : value;
    while (mag > 0) {
        limbs_.push_back(static_cast<uint32_t>(mag % kBase));
        mag /= kBase;
    }
}

BigInt BigInt::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("BigInt: empty string");
    bool neg = false;
    size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        neg = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt out;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c < '0' || c > '9')
            throw std::invalid_argument("BigInt: bad digit");
        out = mul_small(out, 10);
        out = add_magnitude(out, BigInt(c - '0'));
    }
    out.negative_ = neg && !out.is_zero();
    return out;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

int BigInt::cmp_magnitude(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i])
            return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigInt BigInt::add_magnitude(const BigInt& a, const BigInt& b) {
    BigInt out;
    out.limbs_.resize(std::max(a.limbs_.size(), b.limbs_.size()) + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < out.limbs_.size(); ++i) {
        uint64_t sum = carry;
        if (i < a.limbs_.size()) sum += a.limbs_[i];
        if (i < b.limbs_.size()) sum += b.limbs_[i];
        out.limbs_[i] = static_cast<uint32_t>(sum % kBase);
        carry = sum / kBase;
    }
    out.trim();
    return out;
}

BigInt BigInt::sub_magnitude(const BigInt& a, const BigInt& b) {
    BigInt out;
    out.limbs_.resize(a.limbs_.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        int64_t diff = static_cast<int64_t>(a.limbs_[i]) - borrow -
                       (i < b.limbs_.size() ? b.limbs_[i] : 0);
        if (diff < 0) {
            diff += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.limbs_[i] = static_cast<uint32_t>(diff);
    }
    out.trim();
    return out;
}

BigInt BigInt::mul_small(const BigInt& a, uint32_t m) {
    BigInt out;
    if (a.is_zero() || m == 0) return out;
    out.limbs_.resize(a.limbs_.size() + 2, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * m + carry;
        out.limbs_[i] = static_cast<uint32_t>(cur % kBase);
        carry = cur / kBase;
    }
    size_t i = a.limbs_.size();
    while (carry > 0) {
        out.limbs_[i++] = static_cast<uint32_t>(carry % kBase);
        carry /= kBase;
    }
    out.trim();
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    if (!out.is_zero()) out.negative_ = !out.negative_;
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    out.negative_ = false;
    return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.negative_ == b.negative_) {
        BigInt out = BigInt::add_magnitude(a, b);
        out.negative_ = a.negative_ && !out.is_zero();
        return out;
    }
    int c = BigInt::cmp_magnitude(a, b);
    if (c == 0) return BigInt();
    BigInt out = c > 0 ? BigInt::sub_magnitude(a, b) : BigInt::sub_magnitude(b, a);
    out.negative_ = (c > 0 ? a.negative_ : b.negative_) && !out.is_zero();
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt out;
    if (a.is_zero() || b.is_zero()) return out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            uint64_t cur = out.limbs_[i + j] +
                           static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                           carry;
            out.limbs_[i + j] = static_cast<uint32_t>(cur % BigInt::kBase);
            carry = cur / BigInt::kBase;
        }
        size_t j = i + b.limbs_.size();
        while (carry > 0) {
            uint64_t cur = out.limbs_[j] + carry;
            out.limbs_[j] = static_cast<uint32_t>(cur % BigInt::kBase);
            carry = cur / BigInt::kBase;
            ++j;
        }
    }
    out.negative_ = a.negative_ != b.negative_;
    out.trim();
    return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    q = BigInt();
    r = BigInt();
    if (cmp_magnitude(a, b) < 0) {
        r = a;
        return;
    }
    BigInt babs = b.abs();
    q.limbs_.assign(a.limbs_.size(), 0);
    BigInt rem;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
        // rem = rem * base + limb
        rem.limbs_.insert(rem.limbs_.begin(), a.limbs_[i]);
        rem.trim();
        // largest d with d * |b| <= rem, by binary search
        uint32_t lo = 0, hi = kBase - 1;
        while (lo < hi) {
            uint32_t mid = lo + (hi - lo + 1) / 2;
            if (cmp_magnitude(mul_small(babs, mid), rem) <= 0)
                lo = mid;
            else
                hi = mid - 1;
        }
        q.limbs_[i] = lo;
        if (lo > 0) rem = sub_magnitude(rem, mul_small(babs, lo));
    }
    q.trim();
    rem.trim();
    q.negative_ = (a.negative_ != b.negative_) && !q.is_zero();
    rem.negative_ = a.negative_ && !rem.is_zero();
    r = rem;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

BigInt BigInt::lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    return (a / gcd(a, b) * b).abs();
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (negative_ != o.negative_)
        return negative_ ? std::strong_ordering::less
                         : std::strong_ordering::greater;
    int c = cmp_magnitude(*this, o);
    if (negative_) c = -c;
    return c < 0    ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::string out = negative_ ? "-" : "";
    out += std::to_string(limbs_.back());
    for (size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

bool BigInt::fits_int64() const {
    // |value| < 2^63 comfortably within three limbs below 9.2e18
    if (limbs_.size() > 3) return false;
    unsigned long long mag = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        if (mag > (0x7FFFFFFFFFFFFFFFull - limbs_[i]) / kBase) return false;
        mag = mag * kBase + limbs_[i];
    }
    return true;
}

long long BigInt::to_int64() const {
    long long mag = 0;
    for (size_t i = limbs_.size(); i-- > 0;)
        mag = mag * kBase + limbs_[i];
    return negative_ ? -mag : mag;
}

}  // namespace motiv

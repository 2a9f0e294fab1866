// include/legcert/rational.hpp — arbitrary-precision integers and exact rationals.
//
// Every grading, area and feasibility computation in this library runs on
// Rational; there is intentionally no floating-point fallback anywhere in
// the exact core.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace legcert {

// Sign-magnitude big integer, little-endian base 2^32 limbs.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) {
        if (v < 0) { sign_ = -1; }
        else if (v > 0) { sign_ = 1; }
        unsigned long long m = (v < 0) ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
        while (m) { mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu)); m >>= 32; }
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    static BigInt from_string(const std::string& s) {
        BigInt r;
        size_t i = 0;
        int sg = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) { sg = (s[i] == '-') ? -1 : 1; ++i; }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
            r.mul_small(10);
            r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        if (!r.mag_.empty()) r.sign_ = sg;
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<uint32_t> tmp = mag_;
        std::string digits;
        while (!tmp.empty()) {
            uint64_t rem = 0;
            for (size_t i = tmp.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | tmp[i];
                tmp[i] = static_cast<uint32_t>(cur / 10);
                rem = cur % 10;
            }
            digits.push_back(static_cast<char>('0' + rem));
            while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
        }
        if (sign_ < 0) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

    friend BigInt operator-(BigInt a) { a.sign_ = -a.sign_; return a; }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) { r.mag_ = sub_mag(a.mag_, b.mag_); r.sign_ = a.sign_; }
            else { r.mag_ = sub_mag(b.mag_, a.mag_); r.sign_ = b.sign_; }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-BigInt(b)); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(a.mag_[i]) * b.mag_[j] + r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
            }
            size_t k = i + b.mag_.size();
            while (carry) {
                uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<uint32_t>(cur & 0xffffffffu);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    // Truncated quotient and remainder, remainder has the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) { q = BigInt(); r = a; return; }
        // Bitwise long division; magnitudes in this project stay small.
        BigInt absb = b; absb.sign_ = absb.is_zero() ? 0 : 1;
        BigInt rem, quo;
        quo.mag_.assign(a.mag_.size(), 0);
        for (size_t bit = a.bit_count(); bit-- > 0;) {
            rem.shift_left_1();
            if (a.bit(bit)) rem.add_small(1);
            if (cmp_mag(rem.mag_, absb.mag_) >= 0) {
                rem.mag_ = sub_mag(rem.mag_, absb.mag_);
                rem.trim();
                if (rem.mag_.empty()) rem.sign_ = 0;
                quo.set_bit(bit);
            }
        }
        quo.trim();
        quo.sign_ = quo.mag_.empty() ? 0 : a.sign_ * b.sign_;
        rem.trim();
        rem.sign_ = rem.mag_.empty() ? 0 : a.sign_;
        q = quo;
        r = rem;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        return a;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        int c = cmp_mag(a.mag_, b.mag_) * (a.sign_ < 0 ? -1 : 1);
        return c <=> 0;
    }

    double to_double() const {
        double v = 0;
        for (size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0 + mag_[i];
        return sign_ < 0 ? -v : v;
    }

private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    void trim() { while (!mag_.empty() && mag_.back() == 0) mag_.pop_back(); if (mag_.empty()) sign_ = 0; }

    void mul_small(uint32_t m) {
        uint64_t carry = 0;
        for (auto& limb : mag_) {
            uint64_t cur = static_cast<uint64_t>(limb) * m + carry;
            limb = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<uint32_t>(carry));
        trim();
    }
    void add_small(uint32_t v) {
        if (v == 0) return;
        if (sign_ == 0) sign_ = 1;
        uint64_t carry = v;
        for (size_t i = 0; i < mag_.size() && carry; ++i) {
            uint64_t cur = mag_[i] + carry;
            mag_[i] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<uint32_t>(carry));
    }
    size_t bit_count() const {
        if (mag_.empty()) return 0;
        uint32_t top = mag_.back();
        size_t bits = (mag_.size() - 1) * 32;
        while (top) { ++bits; top >>= 1; }
        return bits;
    }
    bool bit(size_t i) const {
        size_t limb = i / 32;
        if (limb >= mag_.size()) return false;
        return (mag_[limb] >> (i % 32)) & 1u;
    }
    void set_bit(size_t i) {
        size_t limb = i / 32;
        if (limb >= mag_.size()) mag_.resize(limb + 1, 0);
        mag_[limb] |= (1u << (i % 32));
        sign_ = 1;
    }
    void shift_left_1() {
        uint32_t carry = 0;
        for (auto& limb : mag_) {
            uint32_t next = limb >> 31;
            limb = (limb << 1) | carry;
            carry = next;
        }
        if (carry) mag_.push_back(carry);
        if (!mag_.empty()) sign_ = 1;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            uint64_t cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            r[i] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) { cur += (1ll << 32); borrow = 1; } else borrow = 0;
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

// Exact rational, always reduced, denominator > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    // Accepts "p", "p/q", optional sign.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt::from_string(s), BigInt(1));
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }

    // Canonical form: integers render bare, otherwise "p/q" reduced, q > 1.
    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    friend Rational operator-(const Rational& a) { Rational r; r.num_ = -a.num_; r.den_ = a.den_; return r; }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return (a.num_ * b.den_) <=> (b.num_ * a.den_);
    }

private:
    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (den_.sign() < 0) { num_ = -num_; den_ = -den_; }
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        BigInt g = BigInt::gcd(num_, den_);
        if (!(g == BigInt(1))) {
            BigInt q, r;
            BigInt::divmod(num_, g, q, r);
            num_ = q;
            BigInt::divmod(den_, g, q, r);
            den_ = q;
        }
    }
};

} // namespace legcert

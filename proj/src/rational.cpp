#include "msymp/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "msymp/error.hpp"

namespace msymp {

BigInt::BigInt(long long v) {
    if (v < 0) { neg_ = true; }
    unsigned long long m = neg_ ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    while (m) {
        limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
        m >>= 32;
    }
}

BigInt BigInt::from_decimal(const std::string& digits) {
    BigInt r;
    for (char c : digits) {
        if (c < '0' || c > '9') throw MsympError(Errc::InvalidArgument, "bad digit in integer literal");
        // r = r*10 + (c - '0')
        uint64_t carry = static_cast<uint64_t>(c - '0');
        for (auto& l : r.limbs_) {
            uint64_t v = static_cast<uint64_t>(l) * 10u + carry;
            l = static_cast<uint32_t>(v & 0xffffffffu);
            carry = v >> 32;
        }
        while (carry) {
            r.limbs_.push_back(static_cast<uint32_t>(carry & 0xffffffffu));
            carry >>= 32;
        }
    }
    r.trim();
    return r;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.limbs_.empty()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        uint64_t v = carry;
        if (i < a.size()) v += a[i];
        if (i < b.size()) v += b[i];
        r.push_back(static_cast<uint32_t>(v & 0xffffffffu));
        carry = v >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
}

// requires |a| >= |b|
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t v = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (v < 0) {
            v += (1ll << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.push_back(static_cast<uint32_t>(v));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.neg_ == b.neg_) {
        r.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
        r.neg_ = a.neg_;
    } else {
        int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_);
            r.neg_ = a.neg_;
        } else {
            r.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_);
            r.neg_ = b.neg_;
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            uint64_t v = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<uint32_t>(v & 0xffffffffu);
            carry = v >> 32;
        }
        size_t k = i + b.limbs_.size();
        while (carry) {
            uint64_t v = static_cast<uint64_t>(r.limbs_[k]) + carry;
            r.limbs_[k] = static_cast<uint32_t>(v & 0xffffffffu);
            carry = v >> 32;
            ++k;
        }
    }
    r.neg_ = a.neg_ != b.neg_;
    r.trim();
    return r;
}

// binary shift-subtract long division on magnitudes
void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw MsympError(Errc::DivisionByZero, "integer division by zero");
    q = BigInt();
    r = BigInt();
    if (cmp_mag(a.limbs_, b.limbs_) < 0) {
        r = a;
        return;
    }
    size_t nbits = a.limbs_.size() * 32;
    std::vector<uint32_t> rem, quo(a.limbs_.size(), 0);
    BigInt babs = b.abs();
    for (size_t i = nbits; i-- > 0;) {
        // rem = rem*2 + bit_i(a)
        uint32_t carry = (a.limbs_[i / 32] >> (i % 32)) & 1u;
        for (auto& l : rem) {
            uint32_t nc = l >> 31;
            l = (l << 1) | carry;
            carry = nc;
        }
        if (carry) rem.push_back(carry);
        if (cmp_mag(rem, babs.limbs_) >= 0) {
            rem = sub_mag(rem, babs.limbs_);
            quo[i / 32] |= (1u << (i % 32));
        }
    }
    q.limbs_ = std::move(quo);
    q.neg_ = a.neg_ != b.neg_;
    q.trim();
    r.limbs_ = std::move(rem);
    r.neg_ = a.neg_;
    r.trim();
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    if (a.is_zero()) return BigInt(1);
    return a;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.neg_ ? -c : c;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt v = abs();
    const BigInt ten9(1000000000);
    std::string out;
    std::vector<uint32_t> chunks;
    while (!v.is_zero()) {
        BigInt q, r;
        divmod(v, ten9, q, r);
        uint32_t chunk = r.limbs_.empty() ? 0 : r.limbs_[0];
        chunks.push_back(chunk);
        v = q;
    }
    out = std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string s = std::to_string(chunks[i]);
        out += std::string(9 - s.size(), '0') + s;
    }
    return neg_ ? "-" + out : out;
}

double BigInt::to_double() const {
    double v = 0.0;
    for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + static_cast<double>(limbs_[i]);
    return neg_ ? -v : v;
}

bool BigInt::fits_i64(long long& out) const {
    if (limbs_.size() > 2) return false;
    unsigned long long m = 0;
    if (limbs_.size() >= 1) m = limbs_[0];
    if (limbs_.size() == 2) m |= static_cast<unsigned long long>(limbs_[1]) << 32;
    if (!neg_ && m > 0x7fffffffffffffffull) return false;
    if (neg_ && m > 0x8000000000000000ull) return false;
    out = neg_ ? -static_cast<long long>(m) : static_cast<long long>(m);
    return true;
}

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw MsympError(Errc::DivisionByZero, "rational with zero denominator");
    reduce();
}

void Rational::reduce() {
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    BigInt q, r;
    BigInt::divmod(num_, g, q, r);
    num_ = q;
    BigInt::divmod(den_, g, q, r);
    den_ = q;
}

Rational Rational::from_decimal_literal(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt::from_decimal(text), BigInt(1));
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    BigInt num = BigInt::from_decimal(whole + frac);
    BigInt den(1);
    const BigInt ten(10);
    for (size_t i = 0; i < frac.size(); ++i) den = den * ten;
    return Rational(num, den);
}

bool Rational::is_one() const {
    long long n = 0, d = 0;
    return num_.fits_i64(n) && den_.fits_i64(d) && n == 1 && d == 1;
}

bool Rational::is_integer() const {
    long long d = 0;
    return den_.fits_i64(d) && d == 1;
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }
Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw MsympError(Errc::DivisionByZero, "division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::inverse() const {
    if (is_zero()) throw MsympError(Errc::DivisionByZero, "inverse of zero");
    return Rational(den_, num_);
}

Rational Rational::pow(int k) const {
    if (k == 0) return Rational(1);
    Rational base = k > 0 ? *this : inverse();
    int e = k > 0 ? k : -k;
    Rational acc(1);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

int Rational::cmp(const Rational& a, const Rational& b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

double Rational::to_double() const { return num_.to_double() / den_.to_double(); }

}  // namespace msymp

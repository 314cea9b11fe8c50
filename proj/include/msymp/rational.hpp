#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msymp {

/// Arbitrary-precision signed integer, little-endian 32-bit limbs.
/// Only the operations the rational layer needs.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    static BigInt from_decimal(const std::string& digits);

    bool is_zero() const { return limbs_.empty(); }
    bool negative() const { return neg_; }
    int sign() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    // Truncated division (quotient rounds toward zero).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    static BigInt gcd(BigInt a, BigInt b);

    // -1, 0, +1 as a compares to b.
    static int cmp(const BigInt& a, const BigInt& b);
    bool operator==(const BigInt& o) const { return cmp(*this, o) == 0; }

    std::string to_string() const;
    double to_double() const;

    // True when the value fits in long long.
    bool fits_i64(long long& out) const;

private:
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    void trim();

    bool neg_ = false;
    std::vector<uint32_t> limbs_;  // empty means zero
};

/// Exact rational, always reduced, denominator positive.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d);

    static Rational from_decimal_literal(const std::string& text);  // "3.25" -> 13/4

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_integer() const;
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);  // throws on zero divisor

    Rational pow(int k) const;  // throws on 0^negative
    Rational inverse() const;

    static int cmp(const Rational& a, const Rational& b);
    bool operator==(const Rational& o) const { return cmp(*this, o) == 0; }

    std::string to_string() const;  // "7", "-3/4"
    double to_double() const;

private:
    void reduce();
    BigInt num_, den_;
};

}  // namespace msymp

#ifndef STAGEDTSP_RATIONAL_HPP
#define STAGEDTSP_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stagedtsp {

// Exact rational on 128-bit integers, always normalized (den > 0, gcd 1).
// Feasibility verdicts are exact equalities; no floating point anywhere.
class Rational {
public:
    using Int = __int128;

    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational from_wide(Int n, Int d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    long long num() const { return narrow(num_); }
    long long den() const { return narrow(den_); }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator+(const Rational& o) const {
        return from_wide(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                         checked_mul(den_, o.den_));
    }
    Rational operator-(const Rational& o) const {
        return from_wide(checked_add(checked_mul(num_, o.den_), -checked_mul(o.num_, den_)),
                         checked_mul(den_, o.den_));
    }
    Rational operator*(const Rational& o) const {
        return from_wide(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return from_wide(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
    }
    Rational operator-() const { return from_wide(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // "p" for integers, "p/q" otherwise.
    std::string str() const {
        std::string s = int_to_string(num_);
        if (den_ != 1) s += "/" + int_to_string(den_);
        return s;
    }

    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(parse_ll(s), 1);
        return Rational(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
    }

private:
    Int num_, den_;

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Int gcd(Int a, Int b) {
        while (b != 0) {
            Int t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    static Int checked_mul(Int a, Int b) {
        Int r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
        return r;
    }
    static Int checked_add(Int a, Int b) {
        Int r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
        return r;
    }

    static long long narrow(Int v) {
        if (v > Int(INT64_MAX) || v < Int(INT64_MIN))
            throw std::overflow_error("rational does not fit in 64 bits");
        return static_cast<long long>(v);
    }

    static std::string int_to_string(Int v) {
        if (v == 0) return "0";
        bool neg = v < 0;
        std::string digits;
        // careful with INT128_MIN: negate digit by digit via unsigned
        unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
        while (u > 0) {
            digits += char('0' + int(u % 10));
            u /= 10;
        }
        if (neg) digits += '-';
        return std::string(digits.rbegin(), digits.rend());
    }

    static long long parse_ll(const std::string& s) {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad rational literal: " + s);
        return v;
    }
};

}  // namespace stagedtsp

#endif

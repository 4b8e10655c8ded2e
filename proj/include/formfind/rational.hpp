#pragma once

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

#include "formfind/errors.hpp"

namespace formfind {

// Exact rational with small terms; used for power exponents and unit vectors.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const { return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    Rational operator-(const Rational& o) const { return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    // Terminating decimal when the denominator is 2^a * 5^b, else "p/q".
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        std::int64_t d = den_;
        int twos = 0, fives = 0;
        while (d % 2 == 0) { d /= 2; ++twos; }
        while (d % 5 == 0) { d /= 5; ++fives; }
        if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
        int digits = twos > fives ? twos : fives;
        std::int64_t scale = 1;
        for (int i = 0; i < digits; ++i) scale *= 10;
        std::int64_t scaled = num_ * (scale / den_);
        bool neg = scaled < 0;
        std::string s = std::to_string(neg ? -scaled : scaled);
        while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
        s.insert(s.end() - digits, '.');
        return (neg ? "-" : "") + s;
    }

    // Accepts integers, terminating decimals and "p/q".
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(parse_int(text));
        std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
        bool neg = !head.empty() && head[0] == '-';
        std::int64_t whole = head.empty() || head == "-" ? 0 : std::llabs(parse_int(head));
        std::int64_t frac = tail.empty() ? 0 : parse_int(tail);
        std::int64_t num = whole * den + frac;
        return Rational(neg ? -num : num, den);
    }

  private:
    static std::int64_t parse_int(const std::string& s) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(0, "rational number, got '" + s + "'");
        return v;
    }
    void normalize() {
        if (den_ == 0) throw NumericError("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace formfind

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "formfind/rational.hpp"

namespace formfind {

// Physical dimension as a rational exponent vector over
// (length, mass, time, temperature, angle). Angle is a pseudo-dimension:
// it participates in products/powers like the others, which lets constrained
// generation insist that trigonometric arguments are angles.
class Dimension {
  public:
    static constexpr std::size_t kSlots = 5;

    Dimension() = default;
    explicit Dimension(std::array<Rational, kSlots> e) : exp_(std::move(e)) {}

    static Dimension dimensionless() { return Dimension(); }
    static Dimension angle() {
        Dimension d;
        d.exp_[4] = Rational(1);
        return d;
    }

    const Rational& operator[](std::size_t i) const { return exp_[i]; }
    Rational& operator[](std::size_t i) { return exp_[i]; }

    bool is_dimensionless() const {
        for (const auto& e : exp_)
            if (!e.is_zero()) return false;
        return true;
    }

    // Pure angle with unit exponent; what constrained trig accepts.
    bool is_angle() const {
        return exp_[0].is_zero() && exp_[1].is_zero() && exp_[2].is_zero() && exp_[3].is_zero() &&
               exp_[4] == Rational(1);
    }

    Dimension operator+(const Dimension& o) const {  // product of quantities
        Dimension d;
        for (std::size_t i = 0; i < kSlots; ++i) d.exp_[i] = exp_[i] + o.exp_[i];
        return d;
    }

    Dimension scaled(const Rational& a) const {  // power of a quantity
        Dimension d;
        for (std::size_t i = 0; i < kSlots; ++i) d.exp_[i] = exp_[i] * a;
        return d;
    }

    friend bool operator==(const Dimension& a, const Dimension& b) { return a.exp_ == b.exp_; }
    friend bool operator!=(const Dimension& a, const Dimension& b) { return !(a == b); }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < kSlots; ++i) {
            if (i) s += ",";
            s += exp_[i].str();
        }
        return s + "]";
    }

  private:
    std::array<Rational, kSlots> exp_{};
};

// Sum of exponent vectors scaled by their exponents.
inline Dimension combine_dimensions(const std::vector<std::pair<Dimension, Rational>>& parts) {
    Dimension out;
    for (const auto& [dim, a] : parts) out = out + dim.scaled(a);
    return out;
}

}  // namespace formfind

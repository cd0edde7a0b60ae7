/// @file rational.hpp
/// Exact rational arithmetic over arbitrary-precision integers.
///
/// Every graded degree, shifting number, weight and structure constant in
/// this library is a Rational; nothing is ever rounded to floating point.

#ifndef ORBICOH_RATIONAL_HPP
#define ORBICOH_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <ostream>
#include <string>
#include <type_traits>

#include "orbicoh/errors.hpp"

namespace orbicoh {

using Integer = boost::multiprecision::cpp_int;

// Rational number kept in lowest terms with a positive denominator.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    template <typename T, typename = std::enable_if_t<std::is_integral_v<T>>>
    Rational(T n) : num_(n), den_(1) {} // NOLINT: implicit on purpose
    Rational(Integer n) : num_(std::move(n)), den_(1) {}
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    template <typename T, typename U,
              typename = std::enable_if_t<std::is_integral_v<T> && std::is_integral_v<U>>>
    Rational(T n, U d) : num_(n), den_(d) {
        normalize();
    }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw validation_error("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    // Exact comparison: cross-multiplication, denominators positive.
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const Integer lhs = a.num_ * b.den_;
        const Integer rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // Largest integer <= *this.
    Integer floor() const {
        Integer q = num_ / den_;                 // truncates toward zero
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    // "p" for integers, "p/q" otherwise.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    void normalize() {
        if (den_ == 0) throw validation_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Integer num_;
    Integer den_;
};

// Fractional part in [0, 1): frac(q) = q - floor(q).
inline Rational frac(const Rational& q) { return q - Rational(q.floor()); }

// Parses "p" or "p/q" with optional leading minus. No floats, no whitespace.
inline Rational parse_rational(const std::string& text) {
    const auto bad = [&]() -> validation_error {
        return validation_error("not a fraction: '" + text + "' (expected \"p\" or \"p/q\")");
    };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    const auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) throw bad();
        std::size_t i = from;
        if (text[i] == '-') ++i;
        if (i >= to) throw bad();
        for (; i < to; ++i)
            if (text[i] < '0' || text[i] > '9') throw bad();
    };
    if (slash == std::string::npos) {
        digits(0, text.size());
        return Rational(Integer(text));
    }
    digits(0, slash);
    digits(slash + 1, text.size());
    if (text[slash + 1] == '-') throw bad();
    return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
}

} // namespace orbicoh

#endif

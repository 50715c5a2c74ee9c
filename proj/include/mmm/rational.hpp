#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace mmm {

/// Exact rational number. All analytic quantities (W, S, O, C, bounds, ratios)
/// are computed and compared exactly; no floating point enters any decision.
class Rat {
public:
    using Big = boost::multiprecision::cpp_int;
    using BigRat = boost::multiprecision::cpp_rational;

    Rat() : v_(0) {}
    Rat(std::int64_t n) : v_(n) {}  // NOLINT: implicit by design (mixed arithmetic)
    Rat(std::int64_t num, std::int64_t den);
    explicit Rat(BigRat v) : v_(std::move(v)) {}

    /// Parse "123", "-4/5", "1.5", "-2.75". Throws std::invalid_argument on
    /// malformed text or zero denominator.
    static Rat parse(const std::string& text);

    Rat operator-() const { return Rat(BigRat(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Big numerator() const { return boost::multiprecision::numerator(v_); }
    Big denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_integer() const { return denominator() == 1; }
    /// Exact conversion; throws std::domain_error if not an integer or out of
    /// int64 range.
    std::int64_t to_int64() const;
    double to_double() const { return v_.convert_to<double>(); }

    /// Canonical rendering: integers as plain digits; fractions whose reduced
    /// denominator is 2^a*5^b as exact decimals ("139.5", "0.25"); everything
    /// else as "num/den".
    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    BigRat v_;
};

/// Exact base-2 logarithm of a positive integer power of two. Throws
/// std::domain_error for any other value (no floating-point smoothing).
int ilog2_exact(const Rat& v);
int ilog2_exact(std::int64_t v);

}  // namespace mmm

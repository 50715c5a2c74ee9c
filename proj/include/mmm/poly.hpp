#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "mmm/field.hpp"

namespace mmm {

/// Dense univariate polynomial over a prime field, ascending coefficients
/// (c[i] multiplies X^i). The zero polynomial has an empty coefficient vector;
/// a nonzero polynomial's vector has length deg + 1 with a nonzero last entry.
struct Poly {
    std::vector<std::int64_t> c;

    Poly() = default;
    explicit Poly(std::vector<std::int64_t> coeffs) : c(std::move(coeffs)) {}
    Poly(std::initializer_list<std::int64_t> coeffs) : c(coeffs) {}

    bool is_zero() const { return c.empty(); }
    /// Degree; -1 for the zero polynomial.
    std::int64_t degree() const { return static_cast<std::int64_t>(c.size()) - 1; }
    std::int64_t lead() const { return c.back(); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
};

/// Strip leading (high-degree) zero coefficients into canonical form.
Poly trimmed(Poly p);

/// Scale so the leading coefficient is 1; zero stays zero.
Poly monic(const Poly& p, const Field& F);

/// Uniform random polynomial with exactly `terms` coefficients (degree
/// terms-1); the leading coefficient is forced nonzero. terms >= 1.
Poly random_poly(std::mt19937_64& rng, std::int64_t terms, const Field& F);

/// Diagnostic rendering, e.g. "3*X^2 + X + 5".
std::string to_string(const Poly& p);

}  // namespace mmm

#pragma once

#include <utility>

#include "mmm/field.hpp"
#include "mmm/poly.hpp"

namespace mmm {

/// Reference (serial, textbook) implementations used to check the simulated
/// kernels. Written independently of the machine code paths.

/// Schoolbook product, iterating input index pairs.
Poly oracle_mul(const Poly& a, const Poly& b, const Field& F);

/// Second independent product, iterating output coefficients. Used to
/// cross-check oracle_mul in tests.
Poly oracle_mul_alt(const Poly& a, const Poly& b, const Field& F);

Poly oracle_add(const Poly& a, const Poly& b, const Field& F);
Poly oracle_sub(const Poly& a, const Poly& b, const Field& F);

/// Euclidean division: returns (quotient, remainder) with deg r < deg b.
/// Throws std::domain_error when b is zero.
std::pair<Poly, Poly> oracle_divmod(const Poly& a, const Poly& b, const Field& F);

/// Monic greatest common divisor; throws std::domain_error when both inputs
/// are zero.
Poly oracle_gcd(const Poly& a, const Poly& b, const Field& F);

}  // namespace mmm

#include "mmm/field.hpp"

#include <stdexcept>
#include <string>

namespace mmm {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

Field::Field(std::int64_t p) : p_(p) {
    if (p < 2 || p >= (std::int64_t(1) << 31))
        throw std::invalid_argument("field: p must satisfy 2 <= p < 2^31, got " + std::to_string(p));
    if (!is_prime(p))
        throw std::invalid_argument("field: p must be prime, got " + std::to_string(p));
}

std::int64_t Field::inv(std::int64_t a) const {
    if (a == 0) throw std::domain_error("field: inverse of zero");
    // Extended Euclid on (a, p).
    std::int64_t old_r = a, r = p_;
    std::int64_t old_t = 1, t = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    return reduce(old_t);
}

}  // namespace mmm

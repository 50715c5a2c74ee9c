#pragma once

#include <cstdint>

namespace mmm {

/// Prime field Z/pZ with canonical representatives in [0, p).
/// p is validated prime and kept below 2^31 so products fit in int64.
class Field {
public:
    explicit Field(std::int64_t p);

    std::int64_t p() const { return p_; }

    std::int64_t add(std::int64_t a, std::int64_t b) const {
        std::int64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::int64_t sub(std::int64_t a, std::int64_t b) const {
        std::int64_t s = a - b;
        return s < 0 ? s + p_ : s;
    }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p_; }
    std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : p_ - a; }

    /// Multiplicative inverse; throws std::domain_error on 0.
    std::int64_t inv(std::int64_t a) const;
    /// a * b^{-1}; throws std::domain_error when b == 0.
    std::int64_t divide(std::int64_t a, std::int64_t b) const { return mul(a, inv(b)); }

    /// Canonical representative of an arbitrary signed value.
    std::int64_t reduce(std::int64_t x) const {
        std::int64_t r = x % p_;
        return r < 0 ? r + p_ : r;
    }

private:
    std::int64_t p_;
};

}  // namespace mmm

#include "mmm/poly.hpp"

#include <stdexcept>

namespace mmm {

Poly trimmed(Poly p) {
    while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
    return p;
}

Poly monic(const Poly& p, const Field& F) {
    if (p.is_zero()) return p;
    std::int64_t s = F.inv(p.lead());
    Poly out = p;
    for (auto& x : out.c) x = F.mul(x, s);
    return out;
}

Poly random_poly(std::mt19937_64& rng, std::int64_t terms, const Field& F) {
    if (terms < 1) throw std::invalid_argument("random_poly: terms must be >= 1");
    std::uniform_int_distribution<std::int64_t> any(0, F.p() - 1);
    std::uniform_int_distribution<std::int64_t> nonzero(1, F.p() - 1);
    Poly out;
    out.c.resize(terms);
    for (std::int64_t i = 0; i + 1 < terms; ++i) out.c[i] = any(rng);
    out.c[terms - 1] = nonzero(rng);
    return out;
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::int64_t i = p.degree(); i >= 0; --i) {
        std::int64_t v = p.c[i];
        if (v == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(v);
        } else {
            if (v != 1) out += std::to_string(v) + "*";
            out += (i == 1) ? "X" : ("X^" + std::to_string(i));
        }
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace mmm

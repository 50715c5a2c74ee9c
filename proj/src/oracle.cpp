#include "mmm/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmm {

Poly oracle_mul(const Poly& a, const Poly& b, const Field& F) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<std::int64_t> out(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a.c[i], b.c[j]));
    return trimmed(Poly(std::move(out)));
}

Poly oracle_mul_alt(const Poly& a, const Poly& b, const Field& F) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::size_t n = a.c.size(), m = b.c.size();
    std::vector<std::int64_t> out(n + m - 1, 0);
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::int64_t acc = 0;
        std::size_t lo = k >= m - 1 ? k - (m - 1) : 0;
        std::size_t hi = std::min(k, n - 1);
        for (std::size_t i = lo; i <= hi; ++i) acc = F.add(acc, F.mul(a.c[i], b.c[k - i]));
        out[k] = acc;
    }
    return trimmed(Poly(std::move(out)));
}

Poly oracle_add(const Poly& a, const Poly& b, const Field& F) {
    std::vector<std::int64_t> out(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::int64_t va = i < a.c.size() ? a.c[i] : 0;
        std::int64_t vb = i < b.c.size() ? b.c[i] : 0;
        out[i] = F.add(va, vb);
    }
    return trimmed(Poly(std::move(out)));
}

Poly oracle_sub(const Poly& a, const Poly& b, const Field& F) {
    std::vector<std::int64_t> out(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::int64_t va = i < a.c.size() ? a.c[i] : 0;
        std::int64_t vb = i < b.c.size() ? b.c[i] : 0;
        out[i] = F.sub(va, vb);
    }
    return trimmed(Poly(std::move(out)));
}

std::pair<Poly, Poly> oracle_divmod(const Poly& a, const Poly& b, const Field& F) {
    if (b.is_zero()) throw std::domain_error("divmod: division by the zero polynomial");
    Poly r = trimmed(a);
    std::int64_t db = b.degree();
    if (r.degree() < db) return {Poly{}, r};
    std::vector<std::int64_t> q(r.degree() - db + 1, 0);
    std::int64_t lead_inv = F.inv(b.lead());
    for (std::int64_t i = r.degree(); i >= db; --i) {
        std::int64_t cur = r.c[i];
        if (cur == 0) continue;
        std::int64_t coef = F.mul(cur, lead_inv);
        q[i - db] = coef;
        for (std::int64_t j = 0; j <= db; ++j)
            r.c[i - db + j] = F.sub(r.c[i - db + j], F.mul(coef, b.c[j]));
    }
    return {trimmed(Poly(std::move(q))), trimmed(std::move(r))};
}

Poly oracle_gcd(const Poly& a, const Poly& b, const Field& F) {
    Poly x = trimmed(a), y = trimmed(b);
    if (x.is_zero() && y.is_zero()) throw std::domain_error("gcd: both inputs are zero");
    while (!y.is_zero()) {
        Poly r = oracle_divmod(x, y, F).second;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x, F);
}

}  // namespace mmm

#include "mmm/multiplication.hpp"

#include <stdexcept>
#include <vector>

#include "mmm/graph.hpp"
#include "run_util.hpp"

namespace mmm {

namespace {

using detail::ceil_div;

std::int64_t next_pow2(std::int64_t v) {
    std::int64_t p = 1;
    while (p < v) p *= 2;
    return p;
}

}  // namespace

MulResult run_multiplication(const MachineParams& mp, const Field& F, const Poly& a_in,
                             const Poly& b_in, std::int64_t s, std::int64_t l) {
    Poly a = trimmed(a_in);
    Poly b = trimmed(b_in);
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("multiplication: operands must be nonzero");
    if (s < 1) throw std::invalid_argument("multiplication: s must be >= 1");
    if (l < 1) throw std::invalid_argument("multiplication: l must be >= 1");
    if (2 * s * l + 2 * s - 1 > mp.Z)
        throw std::invalid_argument("multiplication: requires 2*s*l + 2*s - 1 <= Z");
    detail::validate_coeffs(a, F, "multiplication first operand");
    detail::validate_coeffs(b, F, "multiplication second operand");

    const std::int64_t n = a.degree() + 1;
    const std::int64_t m = b.degree() + 1;
    const std::int64_t y = n + s - 1;            // cells per row
    const std::int64_t x0 = ceil_div(m, s);      // rows actually computed
    const std::int64_t x = next_pow2(x0);        // rows after zero-padding
    const std::int64_t wpr = ceil_div(y, s * l); // blocks covering one row

    Machine M(mp);
    GArr ga = M.alloc("a", n);
    GArr gb = M.alloc("b", m);
    GArr gf = M.alloc("f", (x - 1) * s + y);
    GArr gM = M.alloc("M", x >= 2 ? (x - 1) * y : 0);
    for (std::int64_t i = 0; i < n; ++i) M.host_write(ga, i, a.c[i]);
    for (std::int64_t i = 0; i < m; ++i) M.host_write(gb, i, b.c[i]);

    // Row r covers output positions [r*s, r*s + y). Rows 0..x-2 live in M
    // (stride y); the surviving top row is aliased onto the tail of f.
    auto row_arr = [&](std::int64_t r) { return r == x - 1 ? gf : gM; };
    auto row_off = [&](std::int64_t r) { return r == x - 1 ? (x - 1) * s : r * y; };

    MmmProgram prog;
    std::vector<KernelMetrics> kms;

    KernelSpec mul;
    mul.name = "mul";
    mul.blocks = x0 * wpr;
    mul.threads = l;
    mul.body = [&](BlockCtx& ctx) {
        const std::int64_t r = ctx.bid() / wpr;
        const std::int64_t w = ctx.bid() % wpr;
        auto Ap = ctx.local(s * l + s - 1);
        auto Bp = ctx.local(s);
        const std::int64_t base = w * s * l - s + 1;  // a-index of window position 0
        for (std::int64_t t = 0; t < l; ++t) {
            ThreadOps th = ctx.thread(t);
            for (std::int64_t k = 0; k < s; ++k) {
                const std::int64_t pos = k * l + t;
                const std::int64_t ai = base + pos;
                if (ai >= 0 && ai < n) Ap[static_cast<std::size_t>(pos)] = th.read(ga, ai);
            }
            for (std::int64_t pos = t; pos < s - 1; pos += l) {
                const std::int64_t ai = base + s * l + pos;
                if (ai >= 0 && ai < n) Ap[static_cast<std::size_t>(s * l + pos)] = th.read(ga, ai);
            }
            for (std::int64_t pos = t; pos < s; pos += l) {
                const std::int64_t bi = r * s + pos;
                if (bi < m) Bp[static_cast<std::size_t>(pos)] = th.read(gb, bi);
            }
        }
        for (std::int64_t t = 0; t < l; ++t) {
            ThreadOps th = ctx.thread(t);
            for (std::int64_t e = 0; e < s; ++e) {
                const std::int64_t c = w * s * l + t * s + e;  // row cell = a-shift index
                if (c >= y) break;
                std::int64_t acc = 0;
                bool first = true;
                for (std::int64_t e2 = 0; e2 < s; ++e2) {
                    const std::int64_t ai = c - e2;
                    if (ai < 0 || ai >= n || r * s + e2 >= m) continue;
                    const std::int64_t term =
                        th.mul(F, Bp[static_cast<std::size_t>(e2)],
                               Ap[static_cast<std::size_t>(ai - base)]);
                    acc = first ? term : th.add(F, acc, term);
                    first = false;
                }
                th.write(row_arr(r), row_off(r) + c, acc);
            }
        }
    };
    std::int64_t prev = prog.add_kernel(mul.name, mul.blocks);
    kms.push_back(M.launch(mul));

    std::vector<bool> live(static_cast<std::size_t>(x), false);
    for (std::int64_t r = 0; r < x0; ++r) live[static_cast<std::size_t>(r)] = true;

    std::int64_t rounds = 0;
    for (std::int64_t g = 1; g < x; g *= 2) ++rounds;  // log2(x)
    for (std::int64_t i = 0; i < rounds; ++i) {
        const std::int64_t gap = std::int64_t(1) << i;
        std::vector<std::int64_t> donors;
        for (std::int64_t k = gap - 1; k + gap < x; k += 2 * gap)
            if (live[static_cast<std::size_t>(k)]) donors.push_back(k);

        KernelSpec add;
        add.name = "add#" + std::to_string(i);
        add.blocks = static_cast<std::int64_t>(donors.size()) * wpr;
        add.threads = l;
        add.body = [&, donors, gap](BlockCtx& ctx) {
            const std::int64_t dk = donors[static_cast<std::size_t>(ctx.bid()) /
                                           static_cast<std::size_t>(wpr)];
            const std::int64_t w = ctx.bid() % wpr;
            for (std::int64_t t = 0; t < l; ++t) {
                ThreadOps th = ctx.thread(t);
                for (std::int64_t e = 0; e < s; ++e) {
                    const std::int64_t c = w * s * l + t * s + e;
                    if (c >= y) break;
                    const std::int64_t val = th.read(row_arr(dk), row_off(dk) + c);
                    GArr dst;
                    std::int64_t di;
                    if (c < gap * s) {  // below the keeper's range: final output cells
                        dst = gf;
                        di = dk * s + c;
                    } else {
                        dst = row_arr(dk + gap);
                        di = row_off(dk + gap) + (c - gap * s);
                    }
                    th.write(dst, di, th.add(F, val, th.read(dst, di)));
                }
            }
        };
        const std::int64_t node = prog.add_kernel(add.name, add.blocks);
        prog.add_edge(prev, node);
        prev = node;
        kms.push_back(M.launch(add));

        for (std::int64_t k : donors) {
            live[static_cast<std::size_t>(k + gap)] = true;
            live[static_cast<std::size_t>(k)] = false;
        }
    }

    MulResult res;
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(n + m - 1));
    for (std::int64_t i = 0; i < n + m - 1; ++i)
        coeffs[static_cast<std::size_t>(i)] = M.host_read(gf, i);
    res.f = trimmed(Poly(std::move(coeffs)));
    res.sim = detail::finish_sim(prog, std::move(kms));
    return res;
}

}  // namespace mmm

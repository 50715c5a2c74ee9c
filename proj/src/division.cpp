#include "mmm/division.hpp"

#include <stdexcept>

#include "mmm/testhooks.hpp"
#include "run_util.hpp"

namespace mmm {

namespace testhooks {
bool corrupt_division_output = false;
}

namespace {

using detail::ceil_div;

/// One launch per dividend head. Grid ceil(m/ell) x ell; thread j = bid*ell+t
/// updates a[j + i - d_b] for j < d_b, thread j == d_b records the quotient
/// word. The first thread of each block derives the step scale from the two
/// heads and shares it block-locally.
DivisionResult naive_division(const MachineParams& mp, const Field& F, const Poly& A,
                              const Poly& B, std::int64_t ell) {
    const std::int64_t n = A.degree() + 1;
    const std::int64_t m = B.degree() + 1;
    const std::int64_t mu = n - m + 1;
    const std::int64_t d_b = m - 1;

    Machine M(mp);
    GArr ga = M.alloc("a", n);
    GArr gb = M.alloc("b", m);
    GArr gq = M.alloc("q", mu);
    for (std::int64_t i = 0; i < n; ++i) M.host_write(ga, i, A.c[i]);
    for (std::int64_t i = 0; i < m; ++i) M.host_write(gb, i, B.c[i]);

    const std::int64_t blocks = ceil_div(m, ell);
    MmmProgram prog;
    std::vector<KernelMetrics> kms;
    kms.reserve(static_cast<std::size_t>(mu));
    for (std::int64_t i = n - 1; i >= m - 1; --i) {
        KernelSpec ks;
        ks.name = "div-naive#" + std::to_string(n - 1 - i);
        ks.blocks = blocks;
        ks.threads = ell;
        ks.body = [&, i](BlockCtx& ctx) {
            const std::int64_t base = ctx.bid() * ell;  // base <= d_b for this grid
            ThreadOps t0 = ctx.thread(0);
            const std::int64_t lam = t0.divide(F, t0.read(ga, i), t0.read(gb, d_b));
            for (std::int64_t t = 0; t < ell; ++t) {
                const std::int64_t j = base + t;
                if (j < d_b) {
                    ThreadOps th = ctx.thread(t);
                    const std::int64_t bj = th.read(gb, j);
                    const std::int64_t ak = th.read(ga, j + i - d_b);
                    th.write(ga, j + i - d_b, th.sub(F, ak, th.mul(F, lam, bj)));
                } else if (j == d_b) {
                    ctx.thread(t).write(gq, i - d_b, lam);
                }
            }
        };
        const std::int64_t node = prog.add_kernel(ks.name, blocks);
        if (node > 0) prog.add_edge(node - 1, node);
        kms.push_back(M.launch(ks));
    }

    DivisionResult res;
    res.q.c.resize(static_cast<std::size_t>(mu));
    for (std::int64_t i = 0; i < mu; ++i) res.q.c[static_cast<std::size_t>(i)] = M.host_read(gq, i);
    std::vector<std::int64_t> rc(static_cast<std::size_t>(m - 1));
    for (std::int64_t i = 0; i + 1 < m; ++i) rc[static_cast<std::size_t>(i)] = M.host_read(ga, i);
    res.r = trimmed(Poly(std::move(rc)));
    res.sim = detail::finish_sim(prog, std::move(kms));
    return res;
}

/// s dividend heads retired per launch. Grid ceil(m/(2s)) x 3s; each block
/// stages the s head cells, the top s divisor words, its own 2s-wide slice of
/// a, and a 3s-wide divisor window (exactly 7s local words). Thread s-1 owns
/// the divisor-head inverse and the per-step scales; block 0's head thread k
/// emits quotient word k. Updater threads write their slice back once.
DivisionResult optimized_division(const MachineParams& mp, const Field& F, const Poly& A,
                                  const Poly& B, std::int64_t s) {
    const std::int64_t n = A.degree() + 1;
    const std::int64_t m = B.degree() + 1;
    const std::int64_t mu = n - m + 1;
    const std::int64_t d_b = m - 1;

    Machine M(mp);
    GArr ga = M.alloc("a", n);
    GArr gb = M.alloc("b", m);
    GArr gq = M.alloc("q", mu);
    for (std::int64_t i = 0; i < n; ++i) M.host_write(ga, i, A.c[i]);
    for (std::int64_t i = 0; i < m; ++i) M.host_write(gb, i, B.c[i]);

    const std::int64_t blocks = ceil_div(m, 2 * s);
    MmmProgram prog;
    std::vector<KernelMetrics> kms;
    std::int64_t step_index = 0;
    for (std::int64_t i = n - 1; i >= m - 1; i -= s, ++step_index) {
        const std::int64_t valid = std::min<std::int64_t>(s, i - d_b + 1);
        KernelSpec ks;
        ks.name = "div-opt#" + std::to_string(step_index);
        ks.blocks = blocks;
        ks.threads = 3 * s;
        ks.body = [&, i, valid](BlockCtx& ctx) {
            const std::int64_t bid = ctx.bid();
            auto sAc = ctx.local(s);
            auto sBc = ctx.local(s);
            auto sA = ctx.local(2 * s);
            auto sB = ctx.local(3 * s);
            for (std::int64_t t = 0; t < 3 * s; ++t) {
                ThreadOps th = ctx.thread(t);
                const std::int64_t ib = d_b - 2 * s * bid - t;
                if (ib >= 0) sB[static_cast<std::size_t>(t)] = th.read(gb, ib);
                if (t < s) {
                    const std::int64_t ia = i - t;
                    if (ia >= 0) sAc[static_cast<std::size_t>(t)] = th.read(ga, ia);
                    const std::int64_t ibc = d_b - t;
                    if (ibc >= 0) sBc[static_cast<std::size_t>(t)] = th.read(gb, ibc);
                } else {
                    const std::int64_t ia = i - 2 * s * bid - t;
                    if (ia >= 0) sA[static_cast<std::size_t>(t - s)] = th.read(ga, ia);
                }
            }
            ThreadOps lt = ctx.thread(s - 1);
            const std::int64_t inv_lc = lt.inv(F, lt.read(gb, d_b));
            for (std::int64_t k = 0; k < valid; ++k) {
                std::int64_t lam = 0;
                if (sAc[static_cast<std::size_t>(k)] != 0)
                    lam = lt.mul(F, sAc[static_cast<std::size_t>(k)], inv_lc);
                if (bid == 0) ctx.thread(k).write(gq, i - d_b - k, lam);
                if (lam == 0) continue;
                for (std::int64_t t = k + 1; t < s; ++t) {
                    ThreadOps th = ctx.thread(t);
                    sAc[static_cast<std::size_t>(t)] =
                        th.sub(F, sAc[static_cast<std::size_t>(t)],
                               th.mul(F, lam, sBc[static_cast<std::size_t>(t - k)]));
                }
                for (std::int64_t t = s; t < 3 * s; ++t) {
                    const std::int64_t ia = i - 2 * s * bid - t;
                    if (ia < 0) continue;  // below the array
                    const std::int64_t ib = d_b - 2 * s * bid - (t - k);
                    if (ib < 0) continue;  // divisor has no word there
                    ThreadOps th = ctx.thread(t);
                    sA[static_cast<std::size_t>(t - s)] =
                        th.sub(F, sA[static_cast<std::size_t>(t - s)],
                               th.mul(F, lam, sB[static_cast<std::size_t>(t - k)]));
                }
            }
            for (std::int64_t t = s; t < 3 * s; ++t) {
                const std::int64_t ia = i - 2 * s * bid - t;
                if (ia >= 0) ctx.thread(t).write(ga, ia, sA[static_cast<std::size_t>(t - s)]);
            }
            if (bid == 0) {
                // steps beyond the last valid one leave live head cells: these
                // are the remainder's top words, written back once
                for (std::int64_t t = valid; t < s; ++t) {
                    const std::int64_t ia = i - t;
                    if (ia >= 0) ctx.thread(t).write(ga, ia, sAc[static_cast<std::size_t>(t)]);
                }
            }
        };
        const std::int64_t node = prog.add_kernel(ks.name, blocks);
        if (node > 0) prog.add_edge(node - 1, node);
        kms.push_back(M.launch(ks));
    }

    DivisionResult res;
    res.q.c.resize(static_cast<std::size_t>(mu));
    for (std::int64_t i = 0; i < mu; ++i) res.q.c[static_cast<std::size_t>(i)] = M.host_read(gq, i);
    std::vector<std::int64_t> rc(static_cast<std::size_t>(m - 1));
    for (std::int64_t i = 0; i + 1 < m; ++i) rc[static_cast<std::size_t>(i)] = M.host_read(ga, i);
    res.r = trimmed(Poly(std::move(rc)));
    res.sim = detail::finish_sim(prog, std::move(kms));
    return res;
}

}  // namespace

DivisionResult run_division(Variant variant, const MachineParams& mp, const Field& F,
                            const Poly& a_in, const Poly& b_in, std::int64_t block_param) {
    Poly a = trimmed(a_in);
    Poly b = trimmed(b_in);
    if (b.is_zero()) throw std::invalid_argument("division: divisor must be nonzero");
    if (a.is_zero() || a.degree() < b.degree())
        throw std::invalid_argument("division: requires deg a >= deg b >= 0");
    detail::validate_coeffs(a, F, "division dividend");
    detail::validate_coeffs(b, F, "division divisor");
    if (block_param < 1) throw std::invalid_argument("division: block parameter must be >= 1");
    if (variant == Variant::naive) {
        if (2 * block_param > mp.Z)
            throw std::invalid_argument("division: naive variant requires 2*ell <= Z");
    } else {
        if (7 * block_param > mp.Z)
            throw std::invalid_argument("division: optimized variant requires 7*s <= Z");
    }

    DivisionResult res = variant == Variant::naive
                             ? naive_division(mp, F, a, b, block_param)
                             : optimized_division(mp, F, a, b, block_param);
    if (testhooks::corrupt_division_output && !res.q.is_zero())
        res.q.c[0] = F.add(res.q.c[0], 1);
    return res;
}

}  // namespace mmm

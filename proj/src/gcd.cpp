#include "mmm/gcd.hpp"

#include <array>
#include <cassert>
#include <stdexcept>

#include "run_util.hpp"

namespace mmm {

namespace {

using detail::ceil_div;

/// Read the surviving polynomial out of global memory, given its degree.
Poly extract_poly(const Machine& M, GArr arr, std::int64_t deg) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(deg + 1));
    for (std::int64_t i = 0; i <= deg; ++i) c[static_cast<std::size_t>(i)] = M.host_read(arr, i);
    return Poly(std::move(c));
}

/// Final host-side selection shared by both variants: one side died -> the
/// other is the gcd; otherwise the loop stalled with a degree-0 survivor and
/// the gcd is a unit (monic 1).
Poly select_gcd(const Machine& M, GArr ga, GArr gb, std::int64_t st0, std::int64_t st1,
                const Field& F) {
    if (st0 < 0 && st1 < 0) throw SimError("gcd: both operands vanished");
    if (st0 < 0) return monic(extract_poly(M, gb, st1), F);
    if (st1 < 0) return monic(extract_poly(M, ga, st0), F);
    if (st0 != 0 && st1 != 0)
        throw SimError("gcd: elimination stalled with both degrees positive");
    return Poly{1};
}

/// Exactly n+m-2 launches of grid ceil(m/ell) x ell. Each live launch
/// eliminates the head of the higher-degree operand against the other; the
/// thread owning the divisor's top word then walks the stored values downward
/// (post-merge) and records the new degree in st. Launches whose guards fail
/// (a degree-0 divisor, or a dead operand) are no-ops but still occupy a grid
/// slot, keeping the launch schedule fixed.
GcdResult naive_gcd(const MachineParams& mp, const Field& F, const Poly& A, const Poly& B,
                    std::int64_t ell) {
    const std::int64_t n = A.degree() + 1;
    const std::int64_t m = B.degree() + 1;

    Machine M(mp);
    GArr ga = M.alloc("a", n);
    GArr gb = M.alloc("b", m);
    GArr gst = M.alloc("st", 2);
    for (std::int64_t i = 0; i < n; ++i) M.host_write(ga, i, A.c[i]);
    for (std::int64_t i = 0; i < m; ++i) M.host_write(gb, i, B.c[i]);
    M.host_write(gst, 0, n - 1);
    M.host_write(gst, 1, m - 1);

    const std::int64_t blocks = ceil_div(m, ell);
    const std::int64_t launches = n + m - 2;
    MmmProgram prog;
    std::vector<KernelMetrics> kms;
    kms.reserve(static_cast<std::size_t>(launches));
    for (std::int64_t it = 0; it < launches; ++it) {
        const std::int64_t st0 = M.host_read(gst, 0);
        const std::int64_t st1 = M.host_read(gst, 1);
        const bool case_a = st0 >= st1 && st1 > 0;
        const bool case_b = st0 > 0 && st0 < st1;

        KernelSpec ks;
        ks.name = "gcd-naive#" + std::to_string(it);
        ks.blocks = blocks;
        ks.threads = ell;
        if (case_a || case_b) {
            const GArr X = case_a ? ga : gb;  // dividend: gets updated
            const GArr Y = case_a ? gb : ga;  // divisor
            const std::int64_t deg_hi = case_a ? st0 : st1;
            const std::int64_t d = case_a ? st1 : st0;
            ks.body = [&, X, Y, deg_hi, d](BlockCtx& ctx) {
                const std::int64_t base = ctx.bid() * ell;
                if (base >= d) return;  // block has no active thread
                ThreadOps t0 = ctx.thread(0);
                const std::int64_t lam = t0.divide(F, t0.read(X, deg_hi), t0.read(Y, d));
                for (std::int64_t t = 0; t < ell; ++t) {
                    const std::int64_t j = base + t;
                    if (j >= d) break;
                    ThreadOps th = ctx.thread(t);
                    const std::int64_t k = j + deg_hi - d;
                    const std::int64_t yj = th.read(Y, j);
                    const std::int64_t xk = th.read(X, k);
                    th.write(X, k, th.sub(F, xk, th.mul(F, lam, yj)));
                }
            };
            // Degree bookkeeping is done post-merge by the first thread past
            // the active range, so the walk's traffic never inflates the
            // per-block read/write maxima of the elimination itself.
            Epilogue epi;
            epi.bid = d / ell;
            epi.tid = d % ell;
            epi.fn = [&, X, deg_hi, case_a](EpilogueCtx& e) {
                std::int64_t nd = deg_hi - 1;
                while (nd >= 0 && e.read(X, nd) == 0) --nd;
                e.write(gst, case_a ? 0 : 1, nd);
            };
            ks.epilogue = std::move(epi);
        }
        const std::int64_t node = prog.add_kernel(ks.name, blocks);
        if (node > 0) prog.add_edge(node - 1, node);
        kms.push_back(M.launch(ks));
    }

    GcdResult res;
    res.g = select_gcd(M, ga, gb, M.host_read(gst, 0), M.host_read(gst, 1), F);
    res.sim = detail::finish_sim(prog, std::move(kms));
    return res;
}

/// Offset-indexed polynomial with support restricted to [-s, s]; entry d
/// multiplies the operand value s positions below its head... stored at d+s.
struct OffPoly {
    std::vector<std::int64_t> coef;  // length 2s+1, index d+s
    std::int64_t lo, hi;             // conservative support bounds; lo > hi = empty

    explicit OffPoly(std::int64_t s) : coef(static_cast<std::size_t>(2 * s + 1), 0), lo(s + 1), hi(-s - 1) {}
    bool empty() const { return lo > hi; }
};

struct UpdateMatrix {
    std::int64_t s;
    OffPoly p11, p12, p21, p22;  // [new_a; new_b] = P * [a; b] in offset form

    explicit UpdateMatrix(std::int64_t s_) : s(s_), p11(s_), p12(s_), p21(s_), p22(s_) {
        p11.coef[static_cast<std::size_t>(s)] = 1;
        p11.lo = p11.hi = 0;
        p22.coef[static_cast<std::size_t>(s)] = 1;
        p22.lo = p22.hi = 0;
    }

    bool is_identity_row_a() const {
        return p11.lo == 0 && p11.hi == 0 && p11.coef[static_cast<std::size_t>(s)] == 1 &&
               p12.empty();
    }
    bool is_identity_row_b() const {
        return p22.lo == 0 && p22.hi == 0 && p22.coef[static_cast<std::size_t>(s)] == 1 &&
               p21.empty();
    }

    /// dst -= lam * X^shift * src; caller guarantees the shifted support fits.
    static void sub_scaled(OffPoly& dst, const OffPoly& src, std::int64_t lam, std::int64_t shift,
                           std::int64_t s, const Field& F) {
        if (src.empty() || lam == 0) return;
        for (std::int64_t d = src.lo; d <= src.hi; ++d) {
            const std::int64_t v = src.coef[static_cast<std::size_t>(d + s)];
            if (v == 0) continue;
            auto& cell = dst.coef[static_cast<std::size_t>(d + shift + s)];
            cell = F.sub(cell, F.mul(lam, v));
        }
        dst.lo = std::min(dst.lo, src.lo + shift);
        dst.hi = std::max(dst.hi, src.hi + shift);
    }
};

/// Up to s head retirements per launch, staged host-side as a 2x2 matrix of
/// offset polynomials and applied uniformly by every block. Blocks are 3s
/// threads wide: threads [0,s) own a-cells, [s,2s) own b-cells, [2s,3s) only
/// help stage the two 3s-wide windows (6s local words).
GcdResult optimized_gcd(const MachineParams& mp, const Field& F, const Poly& A, const Poly& B,
                        std::int64_t s) {
    const std::int64_t n = A.degree() + 1;
    const std::int64_t m = B.degree() + 1;

    Machine M(mp);
    GArr ga = M.alloc("a", n);
    GArr gb = M.alloc("b", m);
    GArr gst = M.alloc("st", 2);
    for (std::int64_t i = 0; i < n; ++i) M.host_write(ga, i, A.c[i]);
    for (std::int64_t i = 0; i < m; ++i) M.host_write(gb, i, B.c[i]);
    M.host_write(gst, 0, n - 1);
    M.host_write(gst, 1, m - 1);

    const std::int64_t min_launches = std::max<std::int64_t>(ceil_div(n + m - 2, s), 0);
    const std::int64_t noop_blocks = ceil_div(m, s);
    MmmProgram prog;
    std::vector<KernelMetrics> kms;

    std::int64_t it = 0;
    const std::int64_t safety_cap = min_launches + n + m + 2;
    while (true) {
        const std::int64_t st0 = M.host_read(gst, 0);
        const std::int64_t st1 = M.host_read(gst, 1);
        const bool alive = st0 > 0 && st1 > 0;  // a degree at 0 means the gcd is a unit
        if (it >= min_launches && !alive) break;
        if (it >= safety_cap) throw SimError("gcd: launch loop failed to terminate");

        KernelSpec ks;
        ks.name = "gcd-opt#" + std::to_string(it);
        ks.threads = 3 * s;
        if (!alive) {
            ks.blocks = noop_blocks;  // schedule padding after termination
            const std::int64_t node = prog.add_kernel(ks.name, ks.blocks);
            if (node > 0) prog.add_edge(node - 1, node);
            kms.push_back(M.launch(ks));
            ++it;
            continue;
        }

        // --- host staging: simulate up to s eliminations symbolically ---
        UpdateMatrix P(s);
        // operand value at offset j below the launch-entry head, under the
        // eliminations recorded so far (host reads are argument prep)
        auto raw_a = [&](std::int64_t off) -> std::int64_t {
            return (off >= 0 && off <= st0) ? M.host_read(ga, st0 - off) : 0;
        };
        auto raw_b = [&](std::int64_t off) -> std::int64_t {
            return (off >= 0 && off <= st1) ? M.host_read(gb, st1 - off) : 0;
        };
        auto conv = [&](const OffPoly& pa, const OffPoly& pb, std::int64_t j) -> std::int64_t {
            std::int64_t acc = 0;
            if (!pa.empty())
                for (std::int64_t d = pa.lo; d <= pa.hi; ++d) {
                    const std::int64_t cc = pa.coef[static_cast<std::size_t>(d + s)];
                    if (cc != 0) acc = F.add(acc, F.mul(cc, raw_a(j - d)));
                }
            if (!pb.empty())
                for (std::int64_t d = pb.lo; d <= pb.hi; ++d) {
                    const std::int64_t cc = pb.coef[static_cast<std::size_t>(d + s)];
                    if (cc != 0) acc = F.add(acc, F.mul(cc, raw_b(j - d)));
                }
            return acc;
        };
        auto value_a = [&](std::int64_t j) { return conv(P.p11, P.p12, j); };
        auto value_b = [&](std::int64_t j) { return conv(P.p21, P.p22, j); };

        std::int64_t u = 0, v = 0, steps = 0;
        std::int64_t deep_a = -1, deep_b = -1;
        while (steps < s) {
            const std::int64_t da = st0 - u;
            const std::int64_t db = st1 - v;
            if (da < 0 || db < 0) break;  // one side died mid-launch
            const bool type_a = da >= db;
            const std::int64_t shift = type_a ? u - v : v - u;
            const OffPoly& src1 = type_a ? P.p21 : P.p11;
            const OffPoly& src2 = type_a ? P.p22 : P.p12;
            OffPoly& dst1 = type_a ? P.p11 : P.p21;
            OffPoly& dst2 = type_a ? P.p12 : P.p22;
            auto fits = [&](const OffPoly& dst, const OffPoly& src) {
                if (src.empty()) return true;
                const std::int64_t lo = std::min(dst.empty() ? src.lo + shift : dst.lo, src.lo + shift);
                const std::int64_t hi = std::max(dst.empty() ? src.hi + shift : dst.hi, src.hi + shift);
                return lo >= -s && hi <= s;
            };
            if (!fits(dst1, src1) || !fits(dst2, src2)) break;  // window exhausted
            const std::int64_t head_hi = type_a ? value_a(u) : value_b(v);
            const std::int64_t head_lo = type_a ? value_b(v) : value_a(u);
            const std::int64_t lam = F.divide(head_hi, head_lo);
            UpdateMatrix::sub_scaled(dst1, src1, lam, shift, s, F);
            UpdateMatrix::sub_scaled(dst2, src2, lam, shift, s, F);
            ++steps;
            if (type_a) {
                deep_a = std::max(deep_a, u + db);  // deepest touched a offset
                ++u;
                while (st0 - u >= 0 && value_a(u) == 0) ++u;
            } else {
                deep_b = std::max(deep_b, v + da);
                ++v;
                while (st1 - v >= 0 && value_b(v) == 0) ++v;
            }
        }
        assert(steps >= 1);
        const bool a_mod = !P.is_identity_row_a();
        const bool b_mod = !P.is_identity_row_b();

        std::int64_t blocks = 1;
        if (a_mod && deep_a >= 0) blocks = std::max(blocks, deep_a / s + 1);
        if (b_mod && deep_b >= 0) blocks = std::max(blocks, deep_b / s + 1);
        ks.blocks = blocks;

        ks.body = [&, st0, st1, u, v, a_mod, b_mod, P](BlockCtx& ctx) {
            const std::int64_t bid = ctx.bid();
            auto wa = ctx.local(3 * s);
            auto wb = ctx.local(3 * s);
            for (std::int64_t t = 0; t < 3 * s; ++t) {
                ThreadOps th = ctx.thread(t);
                const std::int64_t off = s * bid - s + t;
                if (off >= 0 && off <= st0) wa[static_cast<std::size_t>(t)] = th.read(ga, st0 - off);
                if (off >= 0 && off <= st1) wb[static_cast<std::size_t>(t)] = th.read(gb, st1 - off);
            }
            auto apply_row = [&](const OffPoly& pa, const OffPoly& pb, std::int64_t t,
                                 std::int64_t j) -> std::int64_t {
                ThreadOps th = ctx.thread(t);
                std::int64_t acc = 0;
                bool first = true;
                auto fold = [&](const OffPoly& pp, std::span<std::int64_t> win) {
                    if (pp.empty()) return;
                    for (std::int64_t d = pp.lo; d <= pp.hi; ++d) {
                        const std::int64_t cc = pp.coef[static_cast<std::size_t>(d + s)];
                        if (cc == 0) continue;
                        const std::int64_t pos = j - d - (s * bid - s);
                        const std::int64_t term = th.mul(F, cc, win[static_cast<std::size_t>(pos)]);
                        acc = first ? term : th.add(F, acc, term);
                        first = false;
                    }
                };
                fold(pa, wa);
                fold(pb, wb);
                return acc;
            };
            if (a_mod) {
                for (std::int64_t t = 0; t < s; ++t) {
                    const std::int64_t j = s * bid + t;
                    if (j > st0) continue;
                    const std::int64_t val = apply_row(P.p11, P.p12, t, j);
                    ctx.thread(t).write(ga, st0 - j, val);
                }
            }
            if (b_mod) {
                for (std::int64_t t = s; t < 2 * s; ++t) {
                    const std::int64_t j = s * bid + (t - s);
                    if (j > st1) continue;
                    const std::int64_t val = apply_row(P.p21, P.p22, t, j);
                    ctx.thread(t).write(gb, st1 - j, val);
                }
            }
            if (bid == 0) {
                ThreadOps t0 = ctx.thread(0);
                t0.write(gst, 0, st0 - u);
                t0.write(gst, 1, st1 - v);
            }
        };
        const std::int64_t node = prog.add_kernel(ks.name, ks.blocks);
        if (node > 0) prog.add_edge(node - 1, node);
        kms.push_back(M.launch(ks));
        ++it;
    }

    GcdResult res;
    res.g = select_gcd(M, ga, gb, M.host_read(gst, 0), M.host_read(gst, 1), F);
    res.sim = detail::finish_sim(prog, std::move(kms));
    return res;
}

}  // namespace

GcdResult run_gcd(Variant variant, const MachineParams& mp, const Field& F, const Poly& a_in,
                  const Poly& b_in, std::int64_t block_param) {
    Poly a = trimmed(a_in);
    Poly b = trimmed(b_in);
    if (b.is_zero()) throw std::invalid_argument("gcd: second operand must be nonzero");
    if (a.is_zero() || a.degree() < b.degree())
        throw std::invalid_argument("gcd: requires deg a >= deg b >= 0");
    detail::validate_coeffs(a, F, "gcd first operand");
    detail::validate_coeffs(b, F, "gcd second operand");
    if (variant == Variant::naive) {
        if (block_param < 1) throw std::invalid_argument("gcd: ell must be >= 1");
        if (2 * block_param > mp.Z) throw std::invalid_argument("gcd: naive variant requires 2*ell <= Z");
        return naive_gcd(mp, F, a, b, block_param);
    }
    if (block_param < 2) throw std::invalid_argument("gcd: optimized variant requires s >= 2");
    if (6 * block_param > mp.Z) throw std::invalid_argument("gcd: optimized variant requires 6*s <= Z");
    return optimized_gcd(mp, F, a, b, block_param);
}

}  // namespace mmm

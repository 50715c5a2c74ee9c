#include "mmm/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "mmm/graph.hpp"

namespace mmm {

BlockMetrics make_block_metrics(std::span<const ThreadCounters> threads, const Rat& U) {
    BlockMetrics bm;
    for (const ThreadCounters& t : threads) {
        bm.W += t.sigma;
        bm.S = std::max(bm.S, t.sigma);
        bm.alpha = std::max(bm.alpha, t.alpha);
        bm.beta = std::max(bm.beta, t.beta);
        bm.max_accesses = std::max(bm.max_accesses, t.alpha + t.beta);
    }
    bm.O = Rat(bm.alpha + bm.beta) * U;
    return bm;
}

std::int64_t KernelMetrics::W() const {
    std::int64_t w = 0;
    for (const auto& b : per_block) w += b.W;
    return w;
}

std::int64_t KernelMetrics::S() const {
    std::int64_t s = 0;
    for (const auto& b : per_block) s = std::max(s, b.S);
    return s;
}

Rat KernelMetrics::O() const {
    Rat o;
    for (const auto& b : per_block) o += b.O;
    return o;
}

Rat KernelMetrics::max_block_C() const {
    Rat c;
    for (const auto& b : per_block) {
        Rat bc = b.C();
        if (c < bc) c = bc;
    }
    return c;
}

std::int64_t KernelMetrics::max_accesses() const {
    std::int64_t m = 0;
    for (const auto& b : per_block) m = std::max(m, b.max_accesses);
    return m;
}

ProgramMetrics aggregate(const MmmProgram& program, const std::vector<KernelMetrics>& kernels) {
    std::int64_t n = program.kernel_count();
    if (static_cast<std::int64_t>(kernels.size()) != n)
        throw std::invalid_argument("aggregate: kernel metrics must cover every kernel node");
    for (std::int64_t i = 0; i < n; ++i) {
        if (kernels[i].blocks != program.blocks_of(i) ||
            static_cast<std::int64_t>(kernels[i].per_block.size()) != kernels[i].blocks)
            throw std::invalid_argument(
                "aggregate: kernel " + std::to_string(i) + " is missing per-block metrics");
    }

    ProgramMetrics pm;
    // A program that never launched (e.g. the gcd of two constants) has
    // nothing to schedule: every quantity is zero.
    if (n == 0) return pm;
    pm.structure = program.structural();

    std::vector<std::int64_t> span(n, 0);
    std::vector<std::int64_t> path(n, 0);
    for (std::int64_t i = 0; i < n; ++i) span[i] = kernels[i].S();
    std::vector<std::int64_t> order = program.topo_order();
    std::int64_t best = 0;
    for (std::int64_t v : order) {
        path[v] += span[v];
        best = std::max(best, path[v]);
        for (std::int64_t w : program.successors()[v]) path[w] = std::max(path[w], path[v]);
    }
    pm.S = best;

    for (const auto& k : kernels) {
        pm.W += k.W();
        pm.O += k.O();
        Rat kc = k.max_block_C();
        if (pm.C < kc) pm.C = kc;
    }
    return pm;
}

Rat graham_brent_bound(const ProgramMetrics& pm, std::int64_t P) {
    if (P < 1) throw std::invalid_argument("graham_brent_bound: P must be >= 1");
    return (Rat(pm.structure.N) / Rat(P) + Rat(pm.structure.L)) * pm.C;
}

Rat antichain_bound(const ProgramMetrics& pm) {
    if (pm.structure.N == 0) return Rat(0);  // nothing was launched
    return graham_brent_bound(pm, pm.structure.K);
}

}  // namespace mmm

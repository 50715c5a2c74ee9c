#include "mmm/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmm {

std::int64_t MmmProgram::add_kernel(std::string name, std::int64_t blocks) {
    if (blocks < 1) throw std::invalid_argument("program: kernel must have at least one block");
    names_.push_back(std::move(name));
    blocks_.push_back(blocks);
    succ_.emplace_back();
    indeg_.push_back(0);
    return kernel_count() - 1;
}

void MmmProgram::add_edge(std::int64_t from, std::int64_t to) {
    std::int64_t n = kernel_count();
    if (from < 0 || from >= n || to < 0 || to >= n)
        throw std::invalid_argument("program: edge endpoint out of range");
    if (from == to) throw std::invalid_argument("program: self-loop is not a valid dependency");
    succ_[from].push_back(to);
    ++indeg_[to];
}

std::vector<std::int64_t> MmmProgram::topo_order() const {
    std::int64_t n = kernel_count();
    std::vector<std::int64_t> indeg = indeg_;
    std::vector<std::int64_t> order;
    order.reserve(n);
    std::vector<std::int64_t> ready;
    for (std::int64_t v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    // Process in ascending id order for determinism.
    std::size_t head = 0;
    while (head < ready.size()) {
        std::sort(ready.begin() + head, ready.end());
        std::int64_t v = ready[head++];
        order.push_back(v);
        for (std::int64_t w : succ_[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    if (static_cast<std::int64_t>(order.size()) != n)
        throw std::invalid_argument("program: precedence graph has a cycle");
    return order;
}

std::vector<std::int64_t> MmmProgram::levels() const {
    std::vector<std::int64_t> order = topo_order();
    std::vector<std::int64_t> lvl(kernel_count(), 1);
    for (std::int64_t v : order)
        for (std::int64_t w : succ_[v]) lvl[w] = std::max(lvl[w], lvl[v] + 1);
    return lvl;
}

StructuralMetrics MmmProgram::structural() const {
    std::int64_t n = kernel_count();
    if (n == 0) throw std::invalid_argument("program: empty program has no structural metrics");
    std::vector<std::int64_t> order = topo_order();
    std::vector<std::int64_t> lvl(n, 1);
    for (std::int64_t v : order)
        for (std::int64_t w : succ_[v]) lvl[w] = std::max(lvl[w], lvl[v] + 1);

    StructuralMetrics out;
    out.N = 0;
    for (std::int64_t b : blocks_) out.N += b;
    out.L = *std::max_element(lvl.begin(), lvl.end());
    out.pi = out.L;  // minimum rounds = longest chain (Mirsky)

    std::vector<std::int64_t> level_sum(out.L + 1, 0);
    for (std::int64_t v = 0; v < n; ++v) level_sum[lvl[v]] += blocks_[v];
    out.K = *std::max_element(level_sum.begin() + 1, level_sum.end());

    // K equals the maximum antichain weight only when any two vertices on
    // different levels are comparable. A simple chain passes trivially;
    // otherwise check reachability between all cross-level pairs.
    bool simple_chain = true;
    std::int64_t edges = 0;
    for (std::int64_t v = 0; v < n; ++v) {
        edges += static_cast<std::int64_t>(succ_[v].size());
        if (succ_[v].size() > 1 || (succ_[v].size() == 1 && succ_[v][0] != v + 1))
            simple_chain = false;
    }
    if (!(simple_chain && edges == n - 1)) {
        // reach[v] = bitset of vertices reachable from v (excluding v).
        std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
        std::vector<std::uint64_t> reach(static_cast<std::size_t>(n) * words, 0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::int64_t v = *it;
            std::uint64_t* rv = &reach[static_cast<std::size_t>(v) * words];
            for (std::int64_t w : succ_[v]) {
                rv[w / 64] |= std::uint64_t(1) << (w % 64);
                const std::uint64_t* rw = &reach[static_cast<std::size_t>(w) * words];
                for (std::size_t k = 0; k < words; ++k) rv[k] |= rw[k];
            }
        }
        for (std::int64_t u = 0; u < n; ++u) {
            const std::uint64_t* ru = &reach[static_cast<std::size_t>(u) * words];
            for (std::int64_t w = 0; w < n; ++w) {
                if (lvl[u] >= lvl[w]) continue;
                if (!(ru[w / 64] >> (w % 64) & 1))
                    throw std::runtime_error(
                        "program: antichain width is exact only for level-decomposable "
                        "programs (found incomparable kernels '" +
                        names_[u] + "' and '" + names_[w] + "' on different levels)");
            }
        }
    }
    return out;
}

std::string MmmProgram::dump_edges() const {
    std::string out;
    for (std::int64_t v = 0; v < kernel_count(); ++v) {
        out += std::to_string(v) + ": " + names_[v] + " [blocks=" + std::to_string(blocks_[v]) +
               "]\n";
    }
    for (std::int64_t v = 0; v < kernel_count(); ++v) {
        std::vector<std::int64_t> s = succ_[v];
        std::sort(s.begin(), s.end());
        for (std::int64_t w : s) out += std::to_string(v) + " -> " + std::to_string(w) + "\n";
    }
    return out;
}

}  // namespace mmm

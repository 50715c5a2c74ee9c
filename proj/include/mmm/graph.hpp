#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmm/metrics.hpp"

namespace mmm {

/// Precedence DAG of kernel launches. Vertices carry a block count; edges are
/// execution-order dependencies.
class MmmProgram {
public:
    /// Add a kernel node; returns its id. blocks >= 1 required.
    std::int64_t add_kernel(std::string name, std::int64_t blocks);
    /// Add a precedence edge from -> to. Both ids must exist; self-loops are
    /// rejected.
    void add_edge(std::int64_t from, std::int64_t to);

    std::int64_t kernel_count() const { return static_cast<std::int64_t>(blocks_.size()); }
    std::int64_t blocks_of(std::int64_t id) const { return blocks_.at(id); }
    const std::string& name_of(std::int64_t id) const { return names_.at(id); }
    const std::vector<std::vector<std::int64_t>>& successors() const { return succ_; }

    /// N, L, K, pi. Throws std::invalid_argument on an empty program or a
    /// cycle. K is exact only for level-decomposable DAGs (every cross-level
    /// pair comparable); otherwise throws std::runtime_error rather than
    /// returning a heuristic.
    StructuralMetrics structural() const;

    /// Topological order; throws std::invalid_argument on a cycle.
    std::vector<std::int64_t> topo_order() const;

    /// Level of each vertex (1 + longest path from a source, counting
    /// vertices).
    std::vector<std::int64_t> levels() const;

    /// Deterministic text dump: one line per kernel, then one line per edge.
    std::string dump_edges() const;

private:
    std::vector<std::string> names_;
    std::vector<std::int64_t> blocks_;
    std::vector<std::vector<std::int64_t>> succ_;
    std::vector<std::int64_t> indeg_;
};

}  // namespace mmm

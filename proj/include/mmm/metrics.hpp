#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmm/rational.hpp"

namespace mmm {

class MmmProgram;

/// Per-thread counters accumulated during a launch.
struct ThreadCounters {
    std::int64_t sigma = 0;  ///< field operations executed
    std::int64_t alpha = 0;  ///< global words read
    std::int64_t beta = 0;   ///< global words written
};

/// Work/span/overhead of one thread block.
struct BlockMetrics {
    std::int64_t W = 0;             ///< sum of sigma over threads
    std::int64_t S = 0;             ///< max sigma over threads
    std::int64_t alpha = 0;         ///< max per-thread reads
    std::int64_t beta = 0;          ///< max per-thread writes
    std::int64_t max_accesses = 0;  ///< max per-thread alpha+beta
    Rat O;                          ///< (alpha + beta) * U

    Rat C() const { return Rat(S) + O; }
};

BlockMetrics make_block_metrics(std::span<const ThreadCounters> threads, const Rat& U);

/// Metrics of one kernel launch (a grid of blocks).
struct KernelMetrics {
    std::string name;
    std::int64_t blocks = 0;
    std::int64_t threads = 0;  ///< threads per block
    std::vector<BlockMetrics> per_block;

    std::int64_t W() const;
    std::int64_t S() const;  ///< max block span
    Rat O() const;           ///< sum of block overheads
    Rat max_block_C() const;
    std::int64_t max_accesses() const;
};

/// Quantities read off the precedence DAG alone.
struct StructuralMetrics {
    std::int64_t N = 0;   ///< total blocks over all kernels
    std::int64_t L = 0;   ///< vertices on a longest path
    std::int64_t K = 0;   ///< maximum antichain weight (blocks)
    std::int64_t pi = 0;  ///< minimum number of parallel rounds (= L)
};

/// Whole-program metrics.
struct ProgramMetrics {
    std::int64_t W = 0;  ///< total work
    std::int64_t S = 0;  ///< max over paths of the span sum
    Rat O;               ///< total overhead
    Rat C;               ///< max over blocks of S(B) + O(B)
    StructuralMetrics structure;
};

/// Combine per-kernel measurements with the precedence graph. The kernel list
/// must match the graph's nodes one-to-one (same order, same block counts);
/// anything missing raises std::invalid_argument. A program that never
/// launched aggregates to all-zero metrics.
ProgramMetrics aggregate(const MmmProgram& program, const std::vector<KernelMetrics>& kernels);

/// (N/P + L) * C for P processors; P >= 1 required.
Rat graham_brent_bound(const ProgramMetrics& pm, std::int64_t P);

/// The bound evaluated at P = K (the maximum antichain weight); 0 for a
/// program that never launched.
Rat antichain_bound(const ProgramMetrics& pm);

}  // namespace mmm

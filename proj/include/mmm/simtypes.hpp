#pragma once

#include <vector>

#include "mmm/graph.hpp"
#include "mmm/machine.hpp"
#include "mmm/metrics.hpp"
#include "mmm/poly.hpp"
#include "mmm/variant.hpp"

namespace mmm {

/// Everything measured while simulating one program: per-kernel metrics in
/// launch order, the aggregated program metrics, and the worst per-thread
/// global access count seen in any launch.
struct SimReport {
    ProgramMetrics metrics;
    std::vector<KernelMetrics> kernels;
    std::int64_t max_thread_accesses = 0;
};

}  // namespace mmm

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mmm/simtypes.hpp"

namespace mmm::detail {

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

/// Aggregate a chain program's kernel metrics into a SimReport.
inline SimReport finish_sim(const MmmProgram& prog, std::vector<KernelMetrics> kms) {
    SimReport r;
    r.kernels = std::move(kms);
    r.metrics = aggregate(prog, r.kernels);
    for (const auto& k : r.kernels)
        r.max_thread_accesses = std::max(r.max_thread_accesses, k.max_accesses());
    return r;
}

/// Inputs must arrive trimmed with canonical coefficients in [0, p).
inline void validate_coeffs(const Poly& p, const Field& F, const char* who) {
    for (std::int64_t c : p.c)
        if (c < 0 || c >= F.p())
            throw std::invalid_argument(std::string(who) +
                                        ": coefficients must be canonical field elements");
}

}  // namespace mmm::detail

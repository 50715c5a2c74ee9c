#pragma once

#include "mmm/simtypes.hpp"

namespace mmm {

struct DivisionResult {
    Poly q;
    Poly r;
    SimReport sim;
};

/// Simulate plain Euclidean division of a by b over F on the abstract
/// machine. The naive variant eliminates one dividend head per launch with
/// blocks of `block_param` threads (requires 2*block_param <= Z); the
/// optimized variant eliminates s = block_param heads per launch from staged
/// local windows (requires 7*s <= Z). Requires deg a >= deg b >= 0, b != 0.
DivisionResult run_division(Variant variant, const MachineParams& mp, const Field& F,
                            const Poly& a, const Poly& b, std::int64_t block_param);

}  // namespace mmm

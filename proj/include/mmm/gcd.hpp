#pragma once

#include "mmm/simtypes.hpp"

namespace mmm {

struct GcdResult {
    Poly g;  ///< monic gcd
    SimReport sim;
};

/// Simulate the Euclidean GCD of a and b over F on the abstract machine.
/// The naive variant runs exactly n+m-2 launches of grid ceil(m/block_param) x
/// block_param, each eliminating one head of the higher-degree operand
/// (requires 2*block_param <= Z). The optimized variant retires up to
/// s = block_param heads per launch by applying a host-staged 2x2 update
/// matrix across 3s-thread blocks (requires s >= 2 and 6*s <= Z).
/// Requires deg a >= deg b >= 0 and b != 0.
GcdResult run_gcd(Variant variant, const MachineParams& mp, const Field& F, const Poly& a,
                  const Poly& b, std::int64_t block_param);

}  // namespace mmm

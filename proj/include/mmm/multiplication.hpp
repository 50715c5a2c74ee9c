#pragma once

#include <cstdint>

#include "mmm/field.hpp"
#include "mmm/machine.hpp"
#include "mmm/poly.hpp"
#include "mmm/simtypes.hpp"

namespace mmm {

struct MulResult {
    Poly f;  ///< the product a * b
    SimReport sim;
};

/// Long multiplication on the abstract machine, in two phases. The
/// multiplication phase computes x = ceil(m/s) partial rows (one per chunk of
/// s coefficients of b) of y = n+s-1 cells each, with ceil(y/(s*l)) blocks of
/// l threads per row, each thread producing s cells by an s-term convolution
/// staged through local memory. The addition phase then folds the rows
/// pairwise in log2(x') rounds (x' = x padded to a power of two; padded rows
/// are never launched until a fold makes them live): at round i a donor row's
/// low 2^i*s cells are final and land directly in the output array, and the
/// rest is added cell-wise into the row 2^i above. The top row is aliased
/// onto the tail of the output array, so the last fold completes f in place.
///
/// Requires a and b nonzero, s >= 1, l >= 1 and 2*s*l + 2*s - 1 <= Z.
MulResult run_multiplication(const MachineParams& mp, const Field& F, const Poly& a, const Poly& b,
                             std::int64_t s, std::int64_t l);

}  // namespace mmm

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mmm/rational.hpp"
#include "mmm/variant.hpp"

namespace mmm {

/// Parameters consumed by the closed-form evaluators. Each evaluator documents
/// which fields it reads; the rest may stay at their defaults. Throughout,
/// n and m are term counts (degree + 1), l is threads per one-dimensional
/// thread block, and s is the blocking parameter of the optimized variants.
struct CostInputs {
    std::int64_t n = 1;  ///< term count of the first operand; key count for sorting
    std::int64_t m = 1;  ///< term count of the second operand
    std::int64_t l = 1;  ///< threads per thread block
    std::int64_t s = 1;  ///< blocking (program) parameter
    std::int64_t c = 1;  ///< key bit size (sorting model only)
    Rat U = Rat(2);      ///< word-transfer cost, in units of one local operation
    std::int64_t Z = 0;  ///< local-memory words per processor (sorting capacity check only)
};

/// The six analytic quantities every application model produces. All are exact
/// rationals; structural quantities (N, L) need not be integers in the model.
struct CostTuple {
    Rat W;  ///< work: total field operations
    Rat S;  ///< span: longest chain of field operations
    Rat O;  ///< data-transfer overhead
    Rat N;  ///< total number of thread blocks
    Rat L;  ///< critical-path length of the block DAG, in blocks
    Rat C;  ///< largest per-block span-plus-overhead charge
};

/// Cost model for plain Euclidean division of an n-term polynomial by an
/// m-term one. The models abbreviate mu = n - m + 1, the quotient term count.
/// Naive variant reads (n, m, l, U); optimized reads (n, m, s, U).
/// Requires n >= m >= 1 and l, s >= 1; violations raise std::invalid_argument.
CostTuple division_cost(Variant v, const CostInputs& in);

/// Cost model for long multiplication of an n-term by an m-term polynomial,
/// with delta = n + s - 1 partial-sum columns. Reads (n, m, l, s, U); requires
/// s | m with m/s a power of two (the addition tree halves the row count each
/// round), else std::invalid_argument / std::domain_error.
CostTuple multiplication_cost(const CostInputs& in);

/// Cost model for the Euclidean gcd of an n-term and an m-term polynomial.
/// Naive variant reads (n, m, l, U); optimized reads (n, m, s, U). Requires
/// n >= m >= 1 and l, s >= 1.
CostTuple gcd_cost(Variant v, const CostInputs& in);

/// Analytic model of a least-significant-digit radix sort of n keys of c bits,
/// processed s bits per pass with l threads per block (each thread handling 4
/// elements). This model is analytic only — the simulator does not execute it;
/// its constants are inputs to the model, not quantities we re-derive.
/// Reads (n, c, l, s, U, Z); requires l a power of two and the local-memory
/// capacity constraint 8*l + 2^s <= Z.
CostTuple radix_cost(const CostInputs& in);

// --- Running-time-estimate ratios (naive bound / optimized bound) --------
//
// Each ratio compares the (N/P + L)*C running-time estimates of the two
// variants after substituting the largest block sizes the local memory
// allows (l = Z/2 with s = Z/7 for division, l = Z/2 with s = Z/6 for gcd).
// A value above 1 means the optimized variant wins. All parameters must be
// positive; violations raise std::invalid_argument.

/// Division time-estimate ratio (3 + 5U) Z / (3 (Z + 21 U)).
Rat division_time_ratio(const Rat& U, const Rat& Z);
/// Division work ratio 8 (Z + 1) / (9 Z + 7) at the same substitution.
Rat division_work_ratio(const Rat& Z);
/// Division overhead ratio (20/441) Z at the same substitution.
Rat division_overhead_ratio(const Rat& Z);

/// Gcd time-estimate ratio at finite n (with m = n):
/// (6n - 2 + Z)(3 + 5U) Z / ((18n + Z)(Z + 16U)).
Rat gcd_time_ratio(const Rat& n, const Rat& U, const Rat& Z);
/// Its limit as n grows: (3 + 5U) Z / (3 (Z + 16 U)).
Rat gcd_time_ratio_limit(const Rat& U, const Rat& Z);
/// Gcd overhead ratio (5/48) Z (2n + 2 + Z) / (6n + Z) with m = n.
Rat gcd_overhead_ratio(const Rat& n, const Rat& Z);

/// Multiplication time-estimate ratio at m = n:
/// (n lg n + 3n - 1)(1 + 4U) / ((n lg(n/s) + 3n - s)(2Us + 2U + 2s^2 - s)).
/// Requires n and n/s powers of two.
Rat multiplication_time_ratio(std::int64_t n, std::int64_t s, const Rat& U);
/// Its dominant-term simplification 2 lg n / (s lg(n/s)); requires s < n.
Rat multiplication_essential_ratio(std::int64_t n, std::int64_t s);
/// Multiplication overhead ratio n s^2 (7n - 3) / ((n + s - 1)(5ns + 2n - 3s^2))
/// at m = n.
Rat multiplication_overhead_ratio(std::int64_t n, std::int64_t s);

/// Radix-sort time-estimate ratio with the digit width set to s = lg l,
/// reduced to its dominant terms: 7 (8 lg l + 9U) / (60 lg l). Requires l a
/// power of two, l >= 2.
Rat radix_leading_ratio(std::int64_t l, const Rat& U);
/// The full radix-sort ratio before simplification:
/// (14 l + 2)(53 + 8 lg l + 9U) s / ((14 l + 2^s)(41 s + 8 s lg l + 12 + 9U)).
Rat radix_time_ratio(std::int64_t l, std::int64_t s, const Rat& U);

/// Verdict of a time-estimate comparison: does the optimized variant win, and
/// the exact ratio backing the answer.
struct ThresholdResult {
    bool optimized_wins = false;
    Rat ratio;
};

/// Division: optimized wins iff the time ratio exceeds 1, which reduces to
/// Z > 12.6 independently of U.
ThresholdResult threshold_check_division(const Rat& U, const Rat& Z);
/// Gcd (large-n limit): optimized wins iff the ratio exceeds 1, i.e. Z > 9.6.
ThresholdResult threshold_check_gcd(const Rat& U, const Rat& Z);
/// Radix sort at s = lg l: the wide-digit variant wins iff lg l < 15.75 U.
ThresholdResult threshold_check_radix(std::int64_t l, const Rat& U);
/// Multiplication: the blocked variant wins iff the full time ratio exceeds 1
/// (it does not for s >= 2; blocking only hurts this algorithm in-model).
ThresholdResult threshold_check_multiplication(std::int64_t n, std::int64_t s, const Rat& U);

/// One named formula, evaluable over CostInputs, so sweeps can address any
/// model quantity or ratio by name.
struct FormulaEntry {
    std::string name;    ///< e.g. "division.naive.W" or "ratio.gcd.limit"
    std::string params;  ///< space-separated list of the CostInputs fields read
    std::function<Rat(const CostInputs&)> eval;
};

/// All evaluators, in stable listing order.
const std::vector<FormulaEntry>& formula_registry();

/// Look up a formula by exact name; nullptr if absent.
const FormulaEntry* find_formula(const std::string& name);

}  // namespace mmm

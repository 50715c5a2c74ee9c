#pragma once

namespace mmm::testhooks {

/// When set, the division runner corrupts one quotient coefficient before
/// returning. Exists so the verification path can demonstrate that it fails
/// when an algorithm is mutated; never set outside tests.
extern bool corrupt_division_output;

}  // namespace mmm::testhooks

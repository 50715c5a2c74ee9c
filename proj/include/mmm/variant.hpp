#pragma once

namespace mmm {

/// Which implementation of an application is meant: the baseline form that
/// retires one step per kernel launch, or the blocked form driven by the
/// program parameter s.
enum class Variant { naive, optimized };

}  // namespace mmm

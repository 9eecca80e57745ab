#pragma once

namespace cornea {

/// Loop execution for the data-parallel kernels. `serial` is the reference
/// path kept for verification and benchmarking; both produce bit-identical
/// results because every element is computed independently.
enum class Execution { serial, parallel };

}  // namespace cornea

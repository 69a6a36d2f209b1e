#pragma once

#include <cstdint>

namespace zeroset::wallis {

/// Asymptotic series for ln(p(n) * sqrt(pi n)) where p(n) = C(2n,n) 4^-n.
/// Accurate to ~1e-17 absolute for n >= 20.
double log_correction(std::uint64_t n) noexcept;

/// p(n) in floating point without tables: direct product below 20, series above.
/// Relative error ~1e-15.
double return_prob(std::uint64_t n) noexcept;

}  // namespace zeroset::wallis

#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "zeroset/randfield.hpp"

namespace zeroset::render {

inline constexpr std::uint64_t kRenderCeiling = std::uint64_t{1} << 13;

inline constexpr std::uint8_t kZeroPixel = 0;
inline constexpr std::uint8_t kNegativePixel = 128;
inline constexpr std::uint8_t kPositivePixel = 255;

constexpr std::uint8_t pixel_for(std::int64_t s) noexcept {
  return s == 0 ? kZeroPixel : (s < 0 ? kNegativePixel : kPositivePixel);
}

/// Binary PGM of the sign of S over [1,N]^2: "P5\n<N> <N>\n255\n" then N*N bytes,
/// row i top to bottom, column j left to right. Streams one row at a time.
void write_zero_set_pgm(std::ostream& out, const SignField& field, std::uint64_t N,
                        std::uint64_t ceiling = kRenderCeiling);

std::string zero_set_pgm(const SignField& field, std::uint64_t N, std::uint64_t ceiling = kRenderCeiling);

}  // namespace zeroset::render

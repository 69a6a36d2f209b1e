#pragma once

#include <cstdint>
#include <span>

namespace zeroset {

/**
 * Counter-based randomness for the two-parameter walk.
 *
 * Generator "zs-mix64 v1". Every output word is a chain of SplitMix64
 * finalizers (mix64) applied to a counter, so any cell of any stream can be
 * produced in O(1) without touching its neighbours:
 *
 *   stream  = mix64(mix64(seed ^ 0x5A45524F53455431) + replicate * 0x9E3779B97F4A7C15 + 0xD1B54A32D192ED03)
 *   field   = mix64(stream ^ 0x4649454C44000001)
 *   binom   = mix64(stream ^ 0x42494E4F4D000002)
 *   word(i, b) = mix64(field + mix64((i << 32) | b))
 *   X(i, j) = bit ((j-1) & 63) of word(i, (j-1) >> 6) set ? +1 : -1
 *
 * The binomial sampler draws its words from the separate `binom` domain, so
 * fast-path runs never reuse grid-cell bits. Outputs are fixed for a given
 * generator version; changing any constant above is a major-version change.
 */
inline constexpr const char* kGeneratorVersion = "zs-mix64-v1";

struct Seed {
  std::uint64_t value = 0;
  friend constexpr bool operator==(Seed, Seed) = default;
};

struct StreamKey {
  Seed seed;
  std::uint64_t replicate = 0;
  friend constexpr bool operator==(const StreamKey&, const StreamKey&) = default;
};

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// A ±1 array X(i, j), i, j >= 1. Implementations must be pure functions of (i, j).
class SignField {
 public:
  virtual ~SignField() = default;

  /// X(i, j); throws DomainError for i == 0 or j == 0.
  virtual int value(std::uint64_t i, std::uint64_t j) const = 0;

  /// out[k] = X(i, k + 1) for k < out.size().
  virtual void fill_row(std::uint64_t i, std::span<std::int8_t> out) const;
};

/// The i.i.d. Rademacher field of one (seed, replicate) stream.
class RademacherField final : public SignField {
 public:
  explicit RademacherField(StreamKey key) noexcept;

  const StreamKey& key() const noexcept { return key_; }

  int value(std::uint64_t i, std::uint64_t j) const override;
  void fill_row(std::uint64_t i, std::span<std::int8_t> out) const override;

  /// 64 consecutive cells of row i: bit k is X(i, 64*block + k + 1) == +1.
  std::uint64_t row_word(std::uint64_t i, std::uint64_t block) const noexcept {
    return mix64(field_base_ + mix64((i << 32) | block));
  }

 private:
  StreamKey key_;
  std::uint64_t field_base_;
};

int field_value(const RademacherField& field, std::uint64_t i, std::uint64_t j);

/// Sum of `count` independent ±1 signs, i.e. 2*Binomial(count, 1/2) - count.
/// Pure in (key, draw_index, count). Throws DomainError for count == 0.
std::int64_t sample_signed_binomial(const StreamKey& key, std::uint64_t draw_index, std::uint64_t count);

namespace detail {
std::uint64_t stream_base(const StreamKey& key) noexcept;
}

}  // namespace zeroset

#include "zeroset/randfield.hpp"

#include <bit>

#include "zeroset/errors.hpp"
#include "zeroset/wallis.hpp"

namespace zeroset {
namespace {

constexpr std::uint64_t kSeedSalt = 0x5A45524F53455431ULL;  // "ZEROSET1"
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kReplicateSalt = 0xD1B54A32D192ED03ULL;
constexpr std::uint64_t kFieldTag = 0x4649454C44000001ULL;
constexpr std::uint64_t kBinomTag = 0x42494E4F4D000002ULL;

// Up to this many steps the sampler sums popcounts of raw words.
constexpr std::uint64_t kPopcountLimit = 1024;

std::uint64_t binom_word(std::uint64_t base, std::uint64_t draw_index, std::uint64_t count,
                         std::uint64_t t) noexcept {
  const std::uint64_t a = mix64(base ^ draw_index);
  const std::uint64_t b = mix64(a + count);
  return mix64(b + t * kGolden);
}

// Number of successes in `count` fair trials by inversion. The support is
// scanned outward from the mode (m, m+1, m-1, m+2, ...), which keeps the
// expected work at O(sqrt(count)).
std::uint64_t invert_binomial(std::uint64_t count, double u) noexcept {
  const std::uint64_t mode = count / 2;
  // C(n, floor(n/2)) / 2^n equals p(n/2) for even n and p((n+1)/2) for odd n.
  const double pmf_mode = wallis::return_prob((count + 1) / 2);
  const double n = static_cast<double>(count);

  double cum = pmf_mode;
  if (u < cum) return mode;
  std::uint64_t up = mode;
  std::uint64_t down = mode;
  double p_up = pmf_mode;
  double p_down = pmf_mode;
  while (up < count || down > 0) {
    if (up < count) {
      p_up *= (n - static_cast<double>(up)) / static_cast<double>(up + 1);
      ++up;
      cum += p_up;
      if (u < cum) return up;
    }
    if (down > 0) {
      p_down *= static_cast<double>(down) / (n - static_cast<double>(down) + 1.0);
      --down;
      cum += p_down;
      if (u < cum) return down;
    }
  }
  // Only reachable when rounding leaves cum a hair below u.
  return mode;
}

}  // namespace

namespace detail {
std::uint64_t stream_base(const StreamKey& key) noexcept {
  const std::uint64_t s = mix64(key.seed.value ^ kSeedSalt);
  return mix64(s + key.replicate * kGolden + kReplicateSalt);
}
}  // namespace detail

void SignField::fill_row(std::uint64_t i, std::span<std::int8_t> out) const {
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = static_cast<std::int8_t>(value(i, k + 1));
  }
}

RademacherField::RademacherField(StreamKey key) noexcept
    : key_(key), field_base_(mix64(detail::stream_base(key) ^ kFieldTag)) {}

int RademacherField::value(std::uint64_t i, std::uint64_t j) const {
  if (i == 0 || j == 0) throw DomainError("field is indexed from 1");
  const std::uint64_t c = j - 1;
  return ((row_word(i, c >> 6) >> (c & 63)) & 1U) ? 1 : -1;
}

void RademacherField::fill_row(std::uint64_t i, std::span<std::int8_t> out) const {
  if (i == 0) throw DomainError("field is indexed from 1");
  const std::size_t n = out.size();
  std::size_t k = 0;
  for (std::uint64_t block = 0; k < n; ++block) {
    std::uint64_t w = row_word(i, block);
    const std::size_t stop = (n - k < 64) ? n : k + 64;
    for (; k < stop; ++k, w >>= 1) {
      out[k] = static_cast<std::int8_t>(static_cast<int>((w & 1U) << 1) - 1);
    }
  }
}

int field_value(const RademacherField& field, std::uint64_t i, std::uint64_t j) { return field.value(i, j); }

std::int64_t sample_signed_binomial(const StreamKey& key, std::uint64_t draw_index, std::uint64_t count) {
  if (count == 0) throw DomainError("sample_signed_binomial: count must be >= 1");
  const std::uint64_t base = mix64(detail::stream_base(key) ^ kBinomTag);

  std::uint64_t successes = 0;
  if (count <= kPopcountLimit) {
    const std::uint64_t words = (count + 63) / 64;
    for (std::uint64_t t = 0; t < words; ++t) {
      std::uint64_t w = binom_word(base, draw_index, count, t);
      const std::uint64_t bits = (t + 1 == words) ? count - 64 * t : 64;
      if (bits < 64) w &= (std::uint64_t{1} << bits) - 1;
      successes += static_cast<std::uint64_t>(std::popcount(w));
    }
  } else {
    const double u = static_cast<double>(binom_word(base, draw_index, count, 0) >> 11) * 0x1.0p-53;
    successes = invert_binomial(count, u);
  }
  return 2 * static_cast<std::int64_t>(successes) - static_cast<std::int64_t>(count);
}

}  // namespace zeroset

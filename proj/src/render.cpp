#include "zeroset/render.hpp"

#include <sstream>
#include <vector>

#include "zeroset/errors.hpp"
#include "zeroset/walkstats.hpp"

namespace zeroset::render {

void write_zero_set_pgm(std::ostream& out, const SignField& field, std::uint64_t N, std::uint64_t ceiling) {
  if (N == 0) throw DomainError("render: N must be >= 1");
  if (N > ceiling) throw CapacityError("render: N above render ceiling", ceiling);
  out << "P5\n" << N << ' ' << N << "\n255\n";
  std::vector<char> pixels(N);
  walkstats::GridSweeper sweeper(field, N);
  for (std::uint64_t i = 1; i <= N; ++i) {
    const auto row = sweeper.next_row();
    for (std::uint64_t j = 0; j < N; ++j) pixels[j] = static_cast<char>(pixel_for(row[j]));
    out.write(pixels.data(), static_cast<std::streamsize>(N));
  }
  if (!out) throw IoError("render: write failed");
}

std::string zero_set_pgm(const SignField& field, std::uint64_t N, std::uint64_t ceiling) {
  std::ostringstream out(std::ios::binary);
  write_zero_set_pgm(out, field, N, ceiling);
  return std::move(out).str();
}

}  // namespace zeroset::render

#include <cstdlib>
#include <iostream>
#include <thread>

#include "zeroset/acceptance.hpp"

int main() {
  zeroset::acceptance::Options opts;
  opts.level = zeroset::acceptance::Level::full;
  opts.workers = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WORKERS")) opts.workers = std::max(1, std::atoi(env));
  const auto results = zeroset::acceptance::run(opts);
  std::cout << zeroset::acceptance::format_report(results) << std::flush;
  return zeroset::acceptance::all_passed(results) ? 0 : 1;
}

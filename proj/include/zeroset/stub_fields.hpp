#pragma once

#include <cstdint>

#include "zeroset/errors.hpp"
#include "zeroset/randfield.hpp"

namespace zeroset {

/// X(i, j) = +1 everywhere, so S(i, j) = ij.
class AllPlusField final : public SignField {
 public:
  int value(std::uint64_t i, std::uint64_t j) const override {
    if (i == 0 || j == 0) throw DomainError("field is indexed from 1");
    return 1;
  }
};

/// X(i, j) = +1 for even j, -1 for odd j, so S(i, j) = -i for odd j and 0 for even j.
class AlternatingColumnField final : public SignField {
 public:
  int value(std::uint64_t i, std::uint64_t j) const override {
    if (i == 0 || j == 0) throw DomainError("field is indexed from 1");
    return (j % 2 == 0) ? 1 : -1;
  }
};

}  // namespace zeroset

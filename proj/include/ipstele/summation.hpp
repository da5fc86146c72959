#pragma once

#include <span>

namespace ipstele {

/// Pairwise (tree) summation. The association order depends only on the
/// length, so results are bitwise reproducible however the terms were filled.
template <typename T>
T pairwise_sum(std::span<const T> terms) {
  if (terms.size() <= 8) {
    T acc{};
    for (const T& t : terms) acc += t;
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace ipstele

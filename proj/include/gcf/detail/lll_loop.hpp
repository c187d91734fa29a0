#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "gcf/error.hpp"
#include "gcf/rational.hpp"

namespace gcf::detail {

// Shared LLL driver for forms. The backend decides every comparison, so the
// same loop runs on a numeric form and on a parametric form evaluated just
// past a critical t. Backend interface:
//   std::size_t dim() const;
//   Integer shift_coefficient(std::size_t r, std::size_t s);  // -round(mu_rs)
//   bool lovasz_violated(std::size_t i);
//   void shift(std::size_t r, std::size_t s, const Integer& a);
//   void swap(std::size_t r);
template <class Backend>
std::size_t run_lll_loop(Backend& be, bool partial,
                         std::optional<std::size_t> swap_cap) {
  const std::size_t n = be.dim();
  auto size_reduce = [&](std::size_t r, std::size_t s) {
    Integer a = be.shift_coefficient(r, s);
    if (a != 0) be.shift(r, s, a);
  };

  for (std::size_t i = 0; i + 1 < n; ++i) size_reduce(i, i + 1);

  std::size_t swaps = 0;
  for (;;) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (be.lovasz_violated(i)) {
        hit = i;
        break;
      }
    }
    if (!hit) break;
    if (swap_cap && swaps >= *swap_cap) {
      throw Error(ErrorCode::IterationCapExceeded,
                  "LLL loop exceeded " + std::to_string(*swap_cap) + " swaps");
    }
    const std::size_t i = *hit;
    be.swap(i);
    ++swaps;
    if (i > 0) size_reduce(i - 1, i);
    size_reduce(i, i + 1);
    if (i + 2 < n) size_reduce(i + 1, i + 2);
  }

  if (!partial) {
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = j; i-- > 0;) size_reduce(i, j);
  }
  return swaps;
}

}  // namespace gcf::detail

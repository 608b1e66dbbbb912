#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include <omp.h>

namespace modbc {

/// Worker count to use for `requested` (0 = OpenMP default).
inline int resolve_threads(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

namespace detail {

inline constexpr std::size_t kMaxBlocks = 128;

/// Sums per-item contributions into a vector of `width` doubles.
///
/// Items are cut into a block layout that depends only on `items`; each block
/// accumulates its items in order into a private vector and the blocks are
/// merged in index order. The result is therefore bitwise identical for any
/// thread count.
template <class MakeWorkspace, class Body>
std::vector<double> blocked_sum(std::size_t items, std::size_t width, int threads,
                                MakeWorkspace make_workspace, Body body) {
  std::vector<double> total(width, 0.0);
  if (items == 0) return total;
  const std::size_t blocks = std::min(items, kMaxBlocks);
  std::vector<std::vector<double>> partial(blocks);

#pragma omp parallel num_threads(resolve_threads(threads))
  {
    auto workspace = make_workspace();
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
      const std::size_t first = static_cast<std::size_t>(b) * items / blocks;
      const std::size_t last = (static_cast<std::size_t>(b) + 1) * items / blocks;
      auto& acc = partial[static_cast<std::size_t>(b)];
      acc.assign(width, 0.0);
      for (std::size_t item = first; item < last; ++item) {
        body(workspace, item, std::span<double>(acc));
      }
    }
  }

  for (const auto& acc : partial) {
    for (std::size_t i = 0; i < width; ++i) total[i] += acc[i];
  }
  return total;
}

}  // namespace detail
}  // namespace modbc

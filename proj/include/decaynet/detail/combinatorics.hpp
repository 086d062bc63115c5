#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace decaynet::detail {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaxExactVertices = 64;

struct IndependentSet {
  std::vector<std::size_t> members;  ///< ascending
  double weight = 0.0;
};

/// Exact maximum-weight independent set by branch and bound with a greedy
/// clique-cover bound. `conflicts[i]` has bit j set iff i and j conflict.
/// At most 64 vertices; weights must be positive.
IndependentSet max_weight_independent_set(std::span<const Mask> conflicts, std::span<const double> weights);

/// Greedy: heaviest first (ties by index), skipping conflicts.
IndependentSet greedy_independent_set(const std::vector<std::vector<bool>>& conflicts, std::span<const double> weights);

/// Smallest family of sets covering `universe`, searched exactly up to
/// `max_size` sets; nullopt when no cover of that size exists.
/// `covers[i]` is the mask of universe elements set i covers.
std::optional<std::vector<std::size_t>> exact_set_cover(std::span<const Mask> covers, Mask universe,
                                                        std::size_t max_size);

/// Greedy set cover (largest gain, ties by index); empty if impossible.
std::vector<std::size_t> greedy_set_cover(std::span<const Mask> covers, Mask universe);

}  // namespace decaynet::detail

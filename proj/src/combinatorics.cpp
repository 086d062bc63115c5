#include "decaynet/detail/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace decaynet::detail {

namespace {

inline Mask bit(std::size_t i) { return Mask{1} << i; }

class IndependentSetSearch {
 public:
  IndependentSetSearch(std::span<const Mask> conflicts, std::span<const double> weights)
      : conflicts_(conflicts), weights_(weights) {}

  IndependentSet run() {
    const std::size_t n = conflicts_.size();
    Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
    expand(0, 0.0, all);
    IndependentSet out;
    out.weight = best_weight_;
    for (std::size_t i = 0; i < n; ++i)
      if (best_ & bit(i)) out.members.push_back(i);
    return out;
  }

 private:
  // Partition candidates into cliques of the conflict graph; an independent
  // set takes at most one vertex from each, so the sum of per-clique maxima
  // bounds what is still reachable.
  double clique_cover_bound(Mask cand) const {
    double bound = 0.0;
    while (cand) {
      const std::size_t v = std::countr_zero(cand);
      Mask clique = bit(v);
      Mask common = conflicts_[v] & cand & ~bit(v);
      double heaviest = weights_[v];
      cand &= ~bit(v);
      while (common) {
        const std::size_t u = std::countr_zero(common);
        common &= ~bit(u);
        clique |= bit(u);
        common &= conflicts_[u];
        heaviest = std::max(heaviest, weights_[u]);
      }
      cand &= ~clique;
      bound += heaviest;
    }
    return bound;
  }

  void expand(Mask current, double weight, Mask cand) {
    if (cand == 0) {
      if (weight > best_weight_ + 1e-12 * std::max(1.0, best_weight_)) {
        best_weight_ = weight;
        best_ = current;
      }
      return;
    }
    if (weight + clique_cover_bound(cand) <= best_weight_ + 1e-12 * std::max(1.0, best_weight_)) return;
    // Isolated candidates are always taken.
    Mask free = 0;
    for (Mask c = cand; c;) {
      const std::size_t v = std::countr_zero(c);
      c &= c - 1;
      if ((conflicts_[v] & cand) == 0) free |= bit(v);
    }
    if (free) {
      double add = 0.0;
      for (Mask c = free; c; c &= c - 1) add += weights_[std::countr_zero(c)];
      expand(current | free, weight + add, cand & ~free);
      return;
    }
    std::size_t pick = std::countr_zero(cand);
    for (Mask c = cand; c; c &= c - 1) {
      const std::size_t v = std::countr_zero(c);
      if (weights_[v] > weights_[pick]) pick = v;
    }
    expand(current | bit(pick), weight + weights_[pick], cand & ~conflicts_[pick] & ~bit(pick));
    expand(current, weight, cand & ~bit(pick));
  }

  std::span<const Mask> conflicts_;
  std::span<const double> weights_;
  Mask best_ = 0;
  double best_weight_ = -1.0;
};

class SetCoverSearch {
 public:
  SetCoverSearch(std::span<const Mask> covers, Mask universe) : covers_(covers), universe_(universe) {}

  bool search(Mask covered, std::size_t depth_left, std::vector<std::size_t>& chosen) {
    const Mask open = universe_ & ~covered;
    if (open == 0) return true;
    if (depth_left == 0) return false;
    // Largest single gain bounds progress per step.
    std::size_t max_gain = 0;
    for (Mask c : covers_) max_gain = std::max<std::size_t>(max_gain, std::popcount(c & open));
    if (max_gain == 0 || max_gain * depth_left < static_cast<std::size_t>(std::popcount(open))) return false;
    // Branch on the open element with the fewest covering sets.
    std::size_t element = 0;
    std::size_t fewest = covers_.size() + 1;
    for (Mask o = open; o; o &= o - 1) {
      const std::size_t e = std::countr_zero(o);
      std::size_t count = 0;
      for (Mask c : covers_) count += (c >> e) & 1U;
      if (count < fewest) {
        fewest = count;
        element = e;
      }
    }
    for (std::size_t i = 0; i < covers_.size(); ++i) {
      if (!((covers_[i] >> element) & 1U)) continue;
      chosen.push_back(i);
      if (search(covered | covers_[i], depth_left - 1, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

 private:
  std::span<const Mask> covers_;
  Mask universe_;
};

}  // namespace

IndependentSet max_weight_independent_set(std::span<const Mask> conflicts, std::span<const double> weights) {
  if (conflicts.size() > kMaxExactVertices) throw std::invalid_argument("exact independent set limited to 64 vertices");
  if (conflicts.size() != weights.size()) throw std::invalid_argument("weights and conflicts differ in size");
  if (conflicts.empty()) return {};
  return IndependentSetSearch(conflicts, weights).run();
}

IndependentSet greedy_independent_set(const std::vector<std::vector<bool>>& conflicts, std::span<const double> weights) {
  const std::size_t n = weights.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  IndependentSet out;
  for (std::size_t v : order) {
    const bool ok = std::none_of(out.members.begin(), out.members.end(), [&](std::size_t u) { return conflicts[v][u]; });
    if (ok) {
      out.members.push_back(v);
      out.weight += weights[v];
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

std::optional<std::vector<std::size_t>> exact_set_cover(std::span<const Mask> covers, Mask universe,
                                                        std::size_t max_size) {
  SetCoverSearch search(covers, universe);
  for (std::size_t k = 0; k <= max_size; ++k) {
    std::vector<std::size_t> chosen;
    if (search.search(0, k, chosen)) {
      std::sort(chosen.begin(), chosen.end());
      return chosen;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> greedy_set_cover(std::span<const Mask> covers, Mask universe) {
  std::vector<std::size_t> chosen;
  Mask covered = 0;
  while ((universe & ~covered) != 0) {
    std::size_t best = covers.size();
    int gain = 0;
    for (std::size_t i = 0; i < covers.size(); ++i) {
      const int g = std::popcount(covers[i] & universe & ~covered);
      if (g > gain) {
        gain = g;
        best = i;
      }
    }
    if (best == covers.size()) return {};
    chosen.push_back(best);
    covered |= covers[best];
  }
  return chosen;
}

}  // namespace decaynet::detail

#include <doctest.h>

#include <bit>

#include "decaynet/detail/combinatorics.hpp"
#include "decaynet/generators.hpp"
#include "oracles.hpp"

using namespace decaynet;
using namespace decaynet::detail;

namespace {

double brute_mwis(const std::vector<Mask>& conflicts, const std::vector<double>& w) {
  const std::size_t n = conflicts.size();
  double best = 0.0;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    bool ok = true;
    double sum = 0.0;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (m >> i & 1) {
        ok = (conflicts[i] & m) == 0;
        sum += w[i];
      }
    if (ok) best = std::max(best, sum);
  }
  return best;
}

std::size_t brute_cover(const std::vector<Mask>& covers, Mask universe) {
  const std::size_t n = covers.size();
  std::size_t best = n + 1;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    Mask covered = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) covered |= covers[i];
    if ((covered & universe) == universe) best = std::min<std::size_t>(best, std::popcount(m));
  }
  return best;
}

}  // namespace

TEST_CASE("MWIS matches brute force on random graphs") {
  Rng rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + rng.below(14);
    std::vector<Mask> conflicts(n, 0);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = trial % 2 ? 1.0 : rng.uniform(0.1, 5.0);
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.uniform() < 0.3) {
          conflicts[i] |= Mask{1} << j;
          conflicts[j] |= Mask{1} << i;
        }
    }
    const auto got = max_weight_independent_set(conflicts, w);
    CHECK(got.weight == doctest::Approx(brute_mwis(conflicts, w)));
    Mask chosen = 0;
    double sum = 0.0;
    for (auto v : got.members) {
      chosen |= Mask{1} << v;
      sum += w[v];
    }
    for (auto v : got.members) CHECK((conflicts[v] & chosen) == 0);
    CHECK(sum == doctest::Approx(got.weight));
    CHECK(std::is_sorted(got.members.begin(), got.members.end()));
  }
}

TEST_CASE("MWIS on a pentagon has size 2, on an empty graph takes everything") {
  std::vector<Mask> c5(5);
  for (std::size_t i = 0; i < 5; ++i) c5[i] = (Mask{1} << (i + 1) % 5) | (Mask{1} << (i + 4) % 5);
  CHECK(max_weight_independent_set(c5, std::vector<double>(5, 1.0)).members.size() == 2);
  std::vector<Mask> none(7, 0);
  CHECK(max_weight_independent_set(none, std::vector<double>(7, 1.0)).members.size() == 7);
}

TEST_CASE("greedy independent set takes the heaviest first") {
  std::vector<std::vector<bool>> c{{false, true, false}, {true, false, true}, {false, true, false}};
  const auto got = greedy_independent_set(c, std::vector<double>{1.0, 3.0, 1.0});
  CHECK(got.members == std::vector<std::size_t>{1});
  CHECK(got.weight == doctest::Approx(3.0));
}

TEST_CASE("exact set cover matches brute force") {
  Rng rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t universe_size = 2 + rng.below(10), sets = 1 + rng.below(10);
    const Mask universe = (Mask{1} << universe_size) - 1;
    std::vector<Mask> covers(sets);
    for (auto& c : covers)
      for (std::size_t e = 0; e < universe_size; ++e)
        if (rng.uniform() < 0.3) c |= Mask{1} << e;
    const auto expect = brute_cover(covers, universe);
    const auto got = exact_set_cover(covers, universe, sets);
    if (expect > sets) {
      CHECK_FALSE(got.has_value());
      CHECK(greedy_set_cover(covers, universe).empty());
      continue;
    }
    REQUIRE(got.has_value());
    CHECK(got->size() == expect);
    Mask covered = 0;
    for (auto i : *got) covered |= covers[i];
    CHECK((covered & universe) == universe);
    const auto greedy = greedy_set_cover(covers, universe);
    CHECK(greedy.size() >= expect);
    if (expect > 1) CHECK_FALSE(exact_set_cover(covers, universe, expect - 1).has_value());
  }
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "decaynet/link_system.hpp"

namespace decaynet {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool has_edge(std::size_t a, std::size_t b) const;
  /// Throws on self-loops, duplicate edges or out-of-range endpoints.
  void validate() const;
};

/// Reproducible uniform doubles in [0, 1) from a 64-bit Mersenne twister;
/// the mapping does not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

/// f(p, q) = |p - q|^alpha; throws ValidationError on duplicate points.
DecaySpace gen_euclidean(std::span<const Point> points, double alpha);

/// Nodes {x_-1, x_0, x_1..x_k} in that order: x_0 is the hub, leaves at
/// distance k^2, x_-1 at distance r; decay = shortest-path distance.
DecaySpace gen_star(std::size_t k, double r);

/// Nodes {v_-1, v_0..v_n} in that order; d(v_-1, v_i) = 2^i - eps and
/// d(v_j, v_i) = 2^i for j < i.
DecaySpace gen_welzl(std::size_t n, double eps);

/// One unit-decay link per vertex. Adjacent links have cross decay 1/2 and
/// the rest n, so an edge costs affectance 2 and a non-edge 1/n.
LinkSystem gen_equidecay_graph(const Graph& g);

/// Senders at (0, i) and receivers at (n, i), i = 1..n. Same-line decays
/// are |i - j|^(alpha - 1); sender-receiver decays are n^(alpha-1) on the
/// own link, n^(alpha-1) - delta across an edge, n^alpha otherwise. Nodes:
/// senders 0..n-1, receivers n..2n-1. Symmetric.
LinkSystem gen_twoline(const Graph& g, double alpha, double delta);

/// Symmetric three-point space f_ab = 1, f_bc = q, f_ac = 2q.
DecaySpace gen_threepoint(double q);

std::vector<Point> random_points(std::size_t n, Rng& rng, double side = 1.0);
/// Random cloud of n points with a collinear triple planted at indices 0..2
/// (the middle point lies strictly between the other two).
std::vector<Point> random_points_with_collinear_triple(std::size_t n, Rng& rng, double side = 1.0);
/// Erdos-Renyi G(n, p).
Graph random_graph(std::size_t n, double p, Rng& rng);

/// Random planar links: senders uniform in a square, receivers at a random
/// angle and length in [min_len, max_len] from their sender.
LinkSystem random_planar_links(std::size_t links, double alpha, Rng& rng, double side, double min_len,
                               double max_len, SinrParams params = {}, double power = 1.0);

struct EuclideanParams {
  std::vector<Point> points;  ///< used when non-empty
  std::size_t random_count = 0;
  bool planted_collinear = false;
  double side = 1.0;
  double alpha = 2.0;
};
struct StarParams {
  std::size_t k = 1;
  double r = 1.0;
};
struct WelzlParams {
  std::size_t n = 1;
  double eps = 0.25;
};
struct EquidecayParams {
  Graph graph;
};
struct TwolineParams {
  Graph graph;
  double alpha = 2.0;
  double delta = 0.25;
};
struct ThreepointParams {
  double q = 2.0;
};

using GeneratorParams =
    std::variant<EuclideanParams, StarParams, WelzlParams, EquidecayParams, TwolineParams, ThreepointParams>;

struct GeneratorSpec {
  GeneratorParams params;
  std::optional<std::uint64_t> seed;
};

const char* family_name(const GeneratorParams& params);

/// Validates the parameters of the chosen family; throws ValidationError.
void validate(const GeneratorSpec& spec);

using Generated = std::variant<DecaySpace, LinkSystem>;

Generated generate(const GeneratorSpec& spec);

}  // namespace decaynet

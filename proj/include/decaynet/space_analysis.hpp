#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "decaynet/decay_space.hpp"

namespace decaynet {

using NodeSet = std::vector<NodeId>;

inline constexpr std::size_t kDefaultExactLimit = 24;

/// B(y, t) = {x : f(x, y) < t}; always contains y.
NodeSet ball(const DecaySpace& space, NodeId y, double t);

struct PackingResult {
  std::size_t count = 0;
  bool exact = true;
  NodeSet witness;
};

/// Largest subset of `body` whose pairwise decays (both directions) exceed 2t.
PackingResult packing_number(const DecaySpace& space, const NodeSet& body, double t,
                             std::size_t exact_limit = kDefaultExactLimit);

struct PackingSample {
  double q;
  std::size_t g;
};

struct DimensionEstimate {
  double assouad = 0.0;
  double C = 1.0;
  bool fitted_constant = false;  ///< C chosen by fitting rather than supplied
  std::vector<PackingSample> samples;
  std::vector<double> r_grid;
  bool exact = true;
};

std::vector<double> default_q_grid();

/// g(q) = max over centers x and radii r of P(B(x, r), r/q); the estimate is
/// max_q log_q(g(q)/C). Radii range over the distinct decay values, each
/// approached from above (balls are open). With no C given, A is the
/// least-squares slope of ln g against ln q and C = max_q g(q)/q^A, so that
/// g(q) <= C q^A on the whole grid.
DimensionEstimate assouad_estimate(const DecaySpace& space, std::optional<double> C = 1.0,
                                   const std::vector<double>& q_grid = default_q_grid(),
                                   std::size_t exact_limit = kDefaultExactLimit);

struct FadingReport {
  double r = 0.0;
  double gamma = 0.0;
  std::vector<double> per_node;
  std::optional<NodeId> witness_node;
  NodeSet witness_set;
  bool exact = true;
};

/// gamma_z(r) = r * max sum_{x in X} 1/f(x, z) over X subset of V\{z} with
/// X + {z} r-separated (pairwise decay >= r in both directions). With
/// `quasi` given, separation is measured in quasi-distance instead.
FadingReport fading_parameter(const DecaySpace& space, double r, std::size_t exact_limit = kDefaultExactLimit,
                              const QuasiMetric* quasi = nullptr);

/// True if every pair of distinct nodes in `nodes` has decay >= r both ways.
bool is_r_separated(const DecaySpace& space, const NodeSet& nodes, double r);

/// Riemann zeta for s > 1: partial sum plus Euler-Maclaurin tail, |error| < 1e-12.
double riemann_zeta_hat(double s);

/// C 2^(A+1) (zeta_hat(2 - A) - 1); requires A < 1 and C > 0.
double fading_bound(double C, double A);

struct IndependenceResult {
  std::size_t dimension = 0;
  std::optional<NodeId> center;
  NodeSet set;
  bool exact = true;
};

/// Largest I subset of V\{x} with min(d(z,w), d(w,z)) > max(d(z,x), d(w,x))
/// for all distinct z, w in I, maximised over x.
IndependenceResult independence_dimension(const DecaySpace& space, const QuasiMetric& quasi,
                                          std::size_t exact_limit = kDefaultExactLimit);

/// Size of the largest independent set with respect to a fixed center.
IndependenceResult independent_set_about(const QuasiMetric& quasi, NodeId x,
                                         std::size_t exact_limit = kDefaultExactLimit);

struct GuardSet {
  NodeSet guards;
  bool minimum = false;  ///< proven smallest by exhaustive search
};

/// J_x with min_{y in J_x} d(z, y) <= d(z, x) for every z != x. Greedy set
/// cover, then an exhaustive search for a smaller cover on up to 64 nodes.
GuardSet guard_set(const DecaySpace& space, const QuasiMetric& quasi, NodeId x);

/// Smallest number of balls of radius t (centers anywhere in V) covering
/// `body`, searched up to `limit`; nullopt if more are needed.
std::optional<std::size_t> ball_cover_number(const DecaySpace& space, const NodeSet& body, double t,
                                             std::size_t limit);

struct DoublingViolation {
  NodeId center;
  double radius;
};

/// First ball B(y, t) not coverable by `balls` balls of radius t/2. Radii
/// examined: every distinct decay value and the value just above it.
std::optional<DoublingViolation> find_doubling_violation(const DecaySpace& space, std::size_t balls);

}  // namespace decaynet

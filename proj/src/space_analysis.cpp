#include "decaynet/space_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "decaynet/detail/combinatorics.hpp"

namespace decaynet {

namespace {

using detail::Mask;

std::vector<double> distinct_decays(const DecaySpace& space) {
  std::vector<double> values;
  for (NodeId p = 0; p < space.size(); ++p)
    for (NodeId q = 0; q < space.size(); ++q)
      if (p != q) values.push_back(space(p, q));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

double sym_min(const DecaySpace& space, NodeId a, NodeId b) { return std::min(space(a, b), space(b, a)); }

// Maximum-weight subset of `nodes` avoiding every pair for which `clash`
// holds. Exact when small enough, greedy otherwise.
template <class Clash>
detail::IndependentSet best_subset(const NodeSet& nodes, const std::vector<double>& weights, Clash clash,
                                   std::size_t exact_limit, bool& exact) {
  const std::size_t m = nodes.size();
  exact = m <= std::min(exact_limit, detail::kMaxExactVertices);
  if (exact) {
    std::vector<Mask> conflicts(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (clash(nodes[i], nodes[j])) {
          conflicts[i] |= Mask{1} << j;
          conflicts[j] |= Mask{1} << i;
        }
    return detail::max_weight_independent_set(conflicts, weights);
  }
  std::vector<std::vector<bool>> conflicts(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) conflicts[i][j] = conflicts[j][i] = clash(nodes[i], nodes[j]);
  return detail::greedy_independent_set(conflicts, weights);
}

NodeSet pick(const NodeSet& nodes, const std::vector<std::size_t>& idx) {
  NodeSet out;
  for (auto i : idx) out.push_back(nodes[i]);
  return out;
}

}  // namespace

NodeSet ball(const DecaySpace& space, NodeId y, double t) {
  if (!(t > 0.0)) throw PreconditionError("ball: radius must be positive");
  NodeSet out;
  for (NodeId x = 0; x < space.size(); ++x)
    if (x == y || space(x, y) < t) out.push_back(x);
  return out;
}

PackingResult packing_number(const DecaySpace& space, const NodeSet& body, double t, std::size_t exact_limit) {
  if (body.empty()) throw PreconditionError("packing_number: body must be non-empty");
  PackingResult result;
  const std::vector<double> ones(body.size(), 1.0);
  auto clash = [&](NodeId a, NodeId b) { return !(sym_min(space, a, b) > 2.0 * t); };
  const auto best = best_subset(body, ones, clash, exact_limit, result.exact);
  result.witness = pick(body, best.members);
  result.count = result.witness.size();
  return result;
}

std::vector<double> default_q_grid() { return {1.5, 2.0, 3.0, 4.0, 8.0, 16.0}; }

DimensionEstimate assouad_estimate(const DecaySpace& space, std::optional<double> C,
                                   const std::vector<double>& q_grid, std::size_t exact_limit) {
  if (q_grid.empty()) throw PreconditionError("assouad_estimate: empty q grid");
  for (double q : q_grid)
    if (!(q > 1.0)) throw PreconditionError("assouad_estimate: q values must exceed 1");
  if (C && !(*C > 0.0)) throw PreconditionError("assouad_estimate: C must be positive");
  require_valid(space);

  DimensionEstimate est;
  est.r_grid = distinct_decays(space);
  const std::size_t n = space.size();
  for (double q : q_grid) {
    std::size_t g = n > 0 ? 1 : 0;
    for (NodeId x = 0; x < n; ++x) {
      // For a fixed ball the packing only shrinks as r grows, so each ball
      // is evaluated at the smallest radius (just above a decay value) that
      // produces it.
      std::vector<double> radii;
      for (NodeId y = 0; y < n; ++y)
        if (y != x) radii.push_back(space(y, x));
      std::sort(radii.begin(), radii.end());
      radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
      for (double v : radii) {
        const double r = std::nextafter(v, std::numeric_limits<double>::infinity());
        const auto body = ball(space, x, r);
        if (body.size() <= g) continue;
        const auto pack = packing_number(space, body, r / q, exact_limit);
        est.exact = est.exact && pack.exact;
        g = std::max(g, pack.count);
      }
    }
    est.samples.push_back({q, g});
  }

  if (C) {
    est.C = *C;
  } else {
    est.fitted_constant = true;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(est.samples.size());
    for (const auto& s : est.samples) {
      const double lx = std::log(s.q);
      const double ly = std::log(static_cast<double>(std::max<std::size_t>(s.g, 1)));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    const double slope = denom > 0.0 ? std::max(0.0, (m * sxy - sx * sy) / denom) : 0.0;
    double c = 0.0;
    for (const auto& s : est.samples) c = std::max(c, static_cast<double>(s.g) / std::pow(s.q, slope));
    est.C = c > 0.0 ? c : 1.0;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : est.samples)
    best = std::max(best, std::log(static_cast<double>(s.g) / est.C) / std::log(s.q));
  est.assouad = best;
  return est;
}

bool is_r_separated(const DecaySpace& space, const NodeSet& nodes, double r) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (sym_min(space, nodes[i], nodes[j]) < r) return false;
  return true;
}

FadingReport fading_parameter(const DecaySpace& space, double r, std::size_t exact_limit, const QuasiMetric* quasi) {
  if (!(r > 0.0)) throw PreconditionError("fading_parameter: r must be positive");
  require_valid(space);
  if (quasi && quasi->size() != space.size()) throw PreconditionError("fading_parameter: quasi-metric size mismatch");
  auto separation = [&](NodeId a, NodeId b) {
    return quasi ? std::min((*quasi)(a, b), (*quasi)(b, a)) : sym_min(space, a, b);
  };

  FadingReport report;
  report.r = r;
  const std::size_t n = space.size();
  report.per_node.assign(n, 0.0);
  double best = 0.0;
  for (NodeId z = 0; z < n; ++z) {
    NodeSet candidates;
    std::vector<double> weights;
    for (NodeId x = 0; x < n; ++x) {
      if (x == z || separation(x, z) < r) continue;
      candidates.push_back(x);
      weights.push_back(1.0 / space(x, z));
    }
    if (candidates.empty()) continue;
    bool exact = true;
    const auto chosen =
        best_subset(candidates, weights, [&](NodeId a, NodeId b) { return separation(a, b) < r; }, exact_limit, exact);
    report.exact = report.exact && exact;
    report.per_node[z] = r * chosen.weight;
    if (report.per_node[z] > best) {
      best = report.per_node[z];
      report.witness_node = z;
      report.witness_set = pick(candidates, chosen.members);
    }
  }
  report.gamma = best;
  return report;
}

double riemann_zeta_hat(double s) {
  if (!(s > 1.0)) throw PreconditionError("riemann_zeta_hat: series diverges for s <= 1");
  constexpr int N = 1000;
  double sum = 0.0;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double n = N;
  // Tail sum_{k >= N} k^-s: integral plus Euler-Maclaurin corrections.
  const double tail = std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s) + s * std::pow(n, -s - 1.0) / 12.0 -
                      s * (s + 1.0) * (s + 2.0) * std::pow(n, -s - 3.0) / 720.0;
  return sum + tail;
}

double fading_bound(double C, double A) {
  if (!(A < 1.0)) throw PreconditionError("fading_bound: requires A < 1 (zeta_hat(2 - A) diverges)");
  if (!(C > 0.0)) throw PreconditionError("fading_bound: C must be positive");
  return C * std::pow(2.0, A + 1.0) * (riemann_zeta_hat(2.0 - A) - 1.0);
}

IndependenceResult independent_set_about(const QuasiMetric& quasi, NodeId x, std::size_t exact_limit) {
  IndependenceResult result;
  result.center = x;
  NodeSet candidates;
  for (NodeId z = 0; z < quasi.size(); ++z)
    if (z != x) candidates.push_back(z);
  if (candidates.empty()) return result;
  const std::vector<double> ones(candidates.size(), 1.0);
  auto clash = [&](NodeId z, NodeId w) {
    return !(std::min(quasi(z, w), quasi(w, z)) > std::max(quasi(z, x), quasi(w, x)));
  };
  const auto best = best_subset(candidates, ones, clash, exact_limit, result.exact);
  result.set = pick(candidates, best.members);
  result.dimension = result.set.size();
  return result;
}

IndependenceResult independence_dimension(const DecaySpace& space, const QuasiMetric& quasi,
                                          std::size_t exact_limit) {
  if (quasi.size() != space.size()) throw PreconditionError("independence_dimension: quasi-metric size mismatch");
  IndependenceResult best;
  for (NodeId x = 0; x < space.size(); ++x) {
    auto r = independent_set_about(quasi, x, exact_limit);
    best.exact = best.exact && r.exact;
    if (r.dimension > best.dimension) {
      const bool exact = best.exact;
      best = std::move(r);
      best.exact = exact;
    }
  }
  return best;
}

GuardSet guard_set(const DecaySpace& space, const QuasiMetric& quasi, NodeId x) {
  const std::size_t n = space.size();
  if (n < 2) throw PreconditionError("guard_set: need at least two nodes");
  if (x >= n) throw StructuralError("guard_set: node out of range");
  NodeSet others;
  for (NodeId v = 0; v < n; ++v)
    if (v != x) others.push_back(v);

  GuardSet result;
  if (others.size() <= detail::kMaxExactVertices) {
    std::vector<Mask> covers(others.size(), 0);
    for (std::size_t yi = 0; yi < others.size(); ++yi)
      for (std::size_t zi = 0; zi < others.size(); ++zi)
        if (quasi(others[zi], others[yi]) <= quasi(others[zi], x)) covers[yi] |= Mask{1} << zi;
    const Mask universe = others.size() == 64 ? ~Mask{0} : (Mask{1} << others.size()) - 1;
    auto chosen = detail::greedy_set_cover(covers, universe);
    if (chosen.size() > 1) {
      if (auto smaller = detail::exact_set_cover(covers, universe, chosen.size() - 1)) {
        chosen = std::move(*smaller);
      }
    }
    result.minimum = true;
    result.guards = pick(others, chosen);
    std::sort(result.guards.begin(), result.guards.end());
    return result;
  }

  // Plain greedy on large spaces.
  std::vector<bool> covered(n, false);
  covered[x] = true;
  std::size_t open = others.size();
  while (open > 0) {
    NodeId best = n;
    std::size_t gain = 0;
    for (NodeId y : others) {
      std::size_t g = 0;
      for (NodeId z : others)
        if (!covered[z] && quasi(z, y) <= quasi(z, x)) ++g;
      if (g > gain) {
        gain = g;
        best = y;
      }
    }
    result.guards.push_back(best);
    for (NodeId z : others)
      if (!covered[z] && quasi(z, best) <= quasi(z, x)) {
        covered[z] = true;
        --open;
      }
  }
  std::sort(result.guards.begin(), result.guards.end());
  return result;
}

std::optional<std::size_t> ball_cover_number(const DecaySpace& space, const NodeSet& body, double t,
                                             std::size_t limit) {
  if (body.size() > detail::kMaxExactVertices) throw PreconditionError("ball_cover_number: body exceeds 64 nodes");
  std::vector<Mask> covers(space.size(), 0);
  for (NodeId c = 0; c < space.size(); ++c)
    for (std::size_t i = 0; i < body.size(); ++i)
      if (body[i] == c || space(body[i], c) < t) covers[c] |= Mask{1} << i;
  const Mask universe = body.size() == 64 ? ~Mask{0} : (Mask{1} << body.size()) - 1;
  if (auto cover = detail::exact_set_cover(covers, universe, limit)) return cover->size();
  return std::nullopt;
}

std::optional<DoublingViolation> find_doubling_violation(const DecaySpace& space, std::size_t balls) {
  std::vector<double> radii;
  for (double v : distinct_decays(space)) {
    radii.push_back(v);
    radii.push_back(std::nextafter(v, std::numeric_limits<double>::infinity()));
  }
  for (NodeId y = 0; y < space.size(); ++y) {
    for (double t : radii) {
      const auto body = ball(space, y, t);
      if (!ball_cover_number(space, body, t / 2.0, balls)) return DoublingViolation{y, t};
    }
  }
  return std::nullopt;
}

}  // namespace decaynet

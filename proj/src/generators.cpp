#include "decaynet/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace decaynet {

namespace {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

bool Graph::has_edge(std::size_t a, std::size_t b) const {
  return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

void Graph::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw ValidationError("graph edge references a vertex outside 0..n-1");
    if (a == b) throw ValidationError("graph has a self-loop at " + std::to_string(a));
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      throw ValidationError("graph has a duplicate edge");
  }
}

DecaySpace gen_euclidean(std::span<const Point> points, double alpha) {
  require(alpha >= 1.0, "gen_euclidean: alpha must be >= 1");
  const std::size_t n = points.size();
  SquareMatrix f(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) f(i, j) = std::pow(distance(points[i], points[j]), alpha);
  DecaySpace space(std::move(f));
  require_valid(space);
  return space;
}

DecaySpace gen_star(std::size_t k, double r) {
  require(k >= 1, "gen_star: k must be >= 1");
  require(r > 0.0, "gen_star: r must be positive");
  const std::size_t n = k + 2;
  const double arm = static_cast<double>(k) * static_cast<double>(k);
  // Every path runs through the hub x_0 (index 1).
  std::vector<double> to_hub(n, arm);
  to_hub[0] = r;
  to_hub[1] = 0.0;
  SquareMatrix f(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) f(i, j) = to_hub[i] + to_hub[j];
  std::vector<std::string> labels{"x-1", "x0"};
  for (std::size_t i = 1; i <= k; ++i) labels.push_back("x" + std::to_string(i));
  return DecaySpace(std::move(f), SpaceMode::node_space, std::move(labels));
}

DecaySpace gen_welzl(std::size_t n, double eps) {
  require(n >= 1, "gen_welzl: n must be >= 1");
  require(eps > 0.0 && eps <= 0.25, "gen_welzl: eps must lie in (0, 1/4]");
  const std::size_t size = n + 2;
  SquareMatrix f(size);
  for (std::size_t i = 0; i <= n; ++i) {
    const double d = std::ldexp(1.0, static_cast<int>(i)) - eps;
    f(0, i + 1) = f(i + 1, 0) = d;
    for (std::size_t j = 0; j < i; ++j) f(j + 1, i + 1) = f(i + 1, j + 1) = std::ldexp(1.0, static_cast<int>(i));
  }
  std::vector<std::string> labels{"v-1"};
  for (std::size_t i = 0; i <= n; ++i) labels.push_back("v" + std::to_string(i));
  return DecaySpace(std::move(f), SpaceMode::node_space, std::move(labels));
}

LinkSystem gen_equidecay_graph(const Graph& g) {
  g.validate();
  require(g.n >= 1, "gen_equidecay_graph: graph must have a vertex");
  const double n = static_cast<double>(g.n);
  SquareMatrix f(g.n, n);
  for (std::size_t i = 0; i < g.n; ++i) f(i, i) = 1.0;
  for (auto [a, b] : g.edges) f(a, b) = f(b, a) = 0.5;
  return LinkSystem::from_link_gain(DecaySpace(std::move(f), SpaceMode::link_gain), SinrParams{1.0, 0.0},
                                    PowerAssignment::uniform(1.0));
}

LinkSystem gen_twoline(const Graph& g, double alpha, double delta) {
  g.validate();
  require(g.n >= 1, "gen_twoline: graph must have a vertex");
  require(alpha >= 1.0, "gen_twoline: alpha must be >= 1");
  require(delta > 0.0 && delta < 0.5, "gen_twoline: delta must lie in (0, 1/2)");
  const std::size_t n = g.n;
  const double a = alpha - 1.0;
  const double own = std::pow(static_cast<double>(n), a);
  const double far = std::pow(static_cast<double>(n), a + 1.0);
  SquareMatrix f(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        const double line = std::pow(std::abs(static_cast<double>(i) - static_cast<double>(j)), a);
        f(i, j) = line;
        f(n + i, n + j) = line;
      }
      double cross = far;
      if (i == j) cross = own;
      else if (g.has_edge(i, j)) cross = own - delta;
      f(i, n + j) = cross;
      f(n + j, i) = cross;
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) labels.push_back("r" + std::to_string(i));
  std::vector<Link> links;
  for (std::size_t i = 0; i < n; ++i) links.push_back({i, n + i});
  return LinkSystem(DecaySpace(std::move(f), SpaceMode::node_space, std::move(labels)), std::move(links),
                    SinrParams{1.0, 0.0}, PowerAssignment::uniform(1.0));
}

DecaySpace gen_threepoint(double q) {
  require(q > 1.0, "gen_threepoint: q must exceed 1");
  SquareMatrix f(3);
  f(0, 1) = f(1, 0) = 1.0;
  f(1, 2) = f(2, 1) = q;
  f(0, 2) = f(2, 0) = 2.0 * q;
  return DecaySpace(std::move(f), SpaceMode::node_space, {"a", "b", "c"});
}

std::vector<Point> random_points(std::size_t n, Rng& rng, double side) {
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform(0.0, side);
    p.y = rng.uniform(0.0, side);
  }
  return pts;
}

std::vector<Point> random_points_with_collinear_triple(std::size_t n, Rng& rng, double side) {
  if (n < 3) throw PreconditionError("planted collinear triple needs at least 3 points");
  auto pts = random_points(n, rng, side);
  const double t = rng.uniform(0.25, 0.75);
  pts[1] = {pts[0].x + t * (pts[2].x - pts[0].x), pts[0].y + t * (pts[2].y - pts[0].y)};
  return pts;
}

Graph random_graph(std::size_t n, double p, Rng& rng) {
  Graph g;
  g.n = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < p) g.edges.emplace_back(i, j);
  return g;
}

LinkSystem random_planar_links(std::size_t links, double alpha, Rng& rng, double side, double min_len,
                               double max_len, SinrParams params, double power) {
  std::vector<Point> pts;
  pts.reserve(2 * links);
  for (std::size_t i = 0; i < links; ++i) {
    const Point s{rng.uniform(0.0, side), rng.uniform(0.0, side)};
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double len = rng.uniform(min_len, max_len);
    pts.push_back(s);
    pts.push_back({s.x + len * std::cos(angle), s.y + len * std::sin(angle)});
  }
  std::vector<Link> ls;
  for (std::size_t i = 0; i < links; ++i) ls.push_back({2 * i, 2 * i + 1});
  return LinkSystem(gen_euclidean(pts, alpha), std::move(ls), params, PowerAssignment::uniform(power));
}

const char* family_name(const GeneratorParams& params) {
  struct Visitor {
    const char* operator()(const EuclideanParams&) const { return "euclidean"; }
    const char* operator()(const StarParams&) const { return "star"; }
    const char* operator()(const WelzlParams&) const { return "welzl"; }
    const char* operator()(const EquidecayParams&) const { return "equidecay-graph"; }
    const char* operator()(const TwolineParams&) const { return "twoline"; }
    const char* operator()(const ThreepointParams&) const { return "threepoint"; }
  };
  return std::visit(Visitor{}, params);
}

void validate(const GeneratorSpec& spec) {
  struct Visitor {
    void operator()(const EuclideanParams& p) const {
      require(p.alpha >= 1.0, "euclidean: alpha must be >= 1");
      require(!p.points.empty() || p.random_count > 0, "euclidean: give points or a random count");
      require(!p.planted_collinear || p.points.size() >= 3 || p.random_count >= 3,
              "euclidean: planted collinear triple needs at least 3 points");
      require(p.side > 0.0, "euclidean: side must be positive");
    }
    void operator()(const StarParams& p) const {
      require(p.k >= 1, "star: k must be >= 1");
      require(p.r > 0.0, "star: r must be positive");
    }
    void operator()(const WelzlParams& p) const {
      require(p.n >= 1, "welzl: n must be >= 1");
      require(p.eps > 0.0 && p.eps <= 0.25, "welzl: eps must lie in (0, 1/4]");
    }
    void operator()(const EquidecayParams& p) const { p.graph.validate(); }
    void operator()(const TwolineParams& p) const {
      p.graph.validate();
      require(p.alpha >= 1.0, "twoline: alpha must be >= 1");
      require(p.delta > 0.0 && p.delta < 0.5, "twoline: delta must lie in (0, 1/2)");
    }
    void operator()(const ThreepointParams& p) const { require(p.q > 1.0, "threepoint: q must exceed 1"); }
  };
  std::visit(Visitor{}, spec.params);
}

Generated generate(const GeneratorSpec& spec) {
  validate(spec);
  struct Visitor {
    std::uint64_t seed;
    Generated operator()(const EuclideanParams& p) const {
      if (!p.points.empty()) return gen_euclidean(p.points, p.alpha);
      Rng rng(seed);
      auto pts = p.planted_collinear ? random_points_with_collinear_triple(p.random_count, rng, p.side)
                                     : random_points(p.random_count, rng, p.side);
      return gen_euclidean(pts, p.alpha);
    }
    Generated operator()(const StarParams& p) const { return gen_star(p.k, p.r); }
    Generated operator()(const WelzlParams& p) const { return gen_welzl(p.n, p.eps); }
    Generated operator()(const EquidecayParams& p) const { return gen_equidecay_graph(p.graph); }
    Generated operator()(const TwolineParams& p) const { return gen_twoline(p.graph, p.alpha, p.delta); }
    Generated operator()(const ThreepointParams& p) const { return gen_threepoint(p.q); }
  };
  return std::visit(Visitor{spec.seed.value_or(0)}, spec.params);
}

}  // namespace decaynet

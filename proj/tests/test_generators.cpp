#include <doctest.h>

#include <cmath>

#include "decaynet/generators.hpp"
#include "decaynet/space_analysis.hpp"
#include "oracles.hpp"

using namespace decaynet;

TEST_SUITE("gen_euclidean") {
  TEST_CASE("decay is distance to the alpha") {
    const std::vector<Point> pts{{0, 0}, {3, 4}, {1, 0}};
    const auto s = gen_euclidean(pts, 2.0);
    CHECK(s(0, 1) == doctest::Approx(25.0));
    CHECK(s(1, 0) == doctest::Approx(25.0));
    CHECK(s(0, 2) == doctest::Approx(1.0));
    CHECK(s(1, 1) == 0.0);
    CHECK(validate_space(s).ok());
  }

  TEST_CASE("duplicate points are rejected") {
    const std::vector<Point> pts{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(gen_euclidean(pts, 2.0), ValidationError);
  }

  TEST_CASE("alpha below 1 is rejected") {
    const std::vector<Point> pts{{0, 0}, {1, 1}};
    CHECK_THROWS_AS(gen_euclidean(pts, 0.5), ValidationError);
  }

  TEST_CASE("planted triple is collinear with the middle point strictly between") {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto pts = random_points_with_collinear_triple(10, rng);
      const double cross = (pts[1].x - pts[0].x) * (pts[2].y - pts[0].y) - (pts[1].y - pts[0].y) * (pts[2].x - pts[0].x);
      CHECK(std::abs(cross) < 1e-12);
      const double d01 = std::hypot(pts[1].x - pts[0].x, pts[1].y - pts[0].y);
      const double d12 = std::hypot(pts[2].x - pts[1].x, pts[2].y - pts[1].y);
      const double d02 = std::hypot(pts[2].x - pts[0].x, pts[2].y - pts[0].y);
      CHECK(d01 + d12 == doctest::Approx(d02));
      CHECK(d01 > 0);
      CHECK(d12 > 0);
    }
  }
}

TEST_SUITE("gen_star") {
  TEST_CASE("k = 16, r = 1: leaves at decay 257 from x_-1") {
    const auto s = gen_star(16, 1.0);
    CHECK(s.size() == 18);
    CHECK(s(0, 1) == 1.0);
    for (std::size_t leaf = 2; leaf < 18; ++leaf) {
      CHECK(s(leaf, 1) == 256.0);
      CHECK(s(leaf, 0) == 257.0);
    }
    CHECK(s(2, 3) == 512.0);
    CHECK(s.labels().front() == "x-1");
  }

  TEST_CASE("leaf-only interference at x_-1 is k / (k^2 + r)") {
    const auto s = gen_star(16, 1.0);
    NodeSet leaves;
    for (std::size_t i = 2; i < 18; ++i) leaves.push_back(i);
    CHECK(std::abs(interference_at(s, leaves, 0, 1.0) - 16.0 / 257) < 1e-12);
  }

  TEST_CASE("shortest-path decays are metric") {
    CHECK(compute_zeta(gen_star(5, 2.0)).zeta == doctest::Approx(1.0));
  }
}

TEST_SUITE("gen_welzl") {
  TEST_CASE("layout for n = 3, eps = 1/4") {
    const auto s = gen_welzl(3, 0.25);
    CHECK(s.size() == 5);
    for (int i = 0; i <= 3; ++i) {
      CHECK(s(0, static_cast<std::size_t>(i) + 1) == doctest::Approx(std::ldexp(1.0, i) - 0.25));
      for (int j = 0; j < i; ++j)
        CHECK(s(static_cast<std::size_t>(j) + 1, static_cast<std::size_t>(i) + 1) == std::ldexp(1.0, i));
    }
    CHECK(s.is_symmetric());
  }

  TEST_CASE("eps outside (0, 1/4] is rejected") {
    CHECK_THROWS_AS(gen_welzl(3, 0.3), ValidationError);
    CHECK_THROWS_AS(gen_welzl(3, 0.0), ValidationError);
  }
}

TEST_SUITE("gen_equidecay_graph") {
  TEST_CASE("unit own decay, 1/2 across edges, n elsewhere") {
    const Graph g{4, {{0, 1}, {2, 3}}};
    const auto sys = gen_equidecay_graph(g);
    CHECK(sys.link_gain_mode());
    CHECK(sys.size() == 4);
    CHECK(sys.own_decay(2) == 1.0);
    CHECK(sys.decay(0, 1) == 0.5);
    CHECK(sys.decay(1, 0) == 0.5);
    CHECK(sys.decay(0, 2) == 4.0);
    CHECK(affectance(sys, 0, 1) == 1.0);
    CHECK(raw_affectance(sys, 0, 1) == 2.0);
    CHECK(affectance(sys, 0, 2) == doctest::Approx(0.25));
  }

  TEST_CASE("empty graph on 5 vertices: everything feasible at (n-1)/n") {
    const auto sys = gen_equidecay_graph(Graph{5, {}});
    CHECK(in_affectance(sys, sys.all_links(), 0) == doctest::Approx(0.8));
    CHECK(is_feasible(sys, sys.all_links()));
  }

  TEST_CASE("feasible subsets are exactly the independent sets") {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = random_graph(2 + rng.below(8), 0.4, rng);
      const auto sys = gen_equidecay_graph(g);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n); ++mask)
        CHECK(oracle::sinr_feasible(sys, oracle::members(mask, g.n)) == oracle::independent(g, mask));
    }
  }

  TEST_CASE("malformed graphs are rejected") {
    CHECK_THROWS_AS(gen_equidecay_graph(Graph{3, {{0, 0}}}), ValidationError);
    CHECK_THROWS_AS(gen_equidecay_graph(Graph{3, {{0, 1}, {1, 0}}}), ValidationError);
    CHECK_THROWS_AS(gen_equidecay_graph(Graph{3, {{0, 3}}}), ValidationError);
  }
}

TEST_SUITE("gen_twoline") {
  TEST_CASE("decay layout") {
    const Graph g{3, {{0, 1}}};
    const auto sys = gen_twoline(g, 3.0, 0.25);
    const auto& f = sys.space();
    CHECK(f.size() == 6);
    CHECK(sys.own_decay(0) == doctest::Approx(9.0));
    CHECK(sys.decay(0, 1) == doctest::Approx(8.75));
    CHECK(sys.decay(1, 0) == doctest::Approx(8.75));
    CHECK(sys.decay(0, 2) == doctest::Approx(27.0));
    CHECK(f(0, 2) == doctest::Approx(4.0));
    CHECK(f(3, 5) == doctest::Approx(4.0));
    CHECK(f.is_symmetric());
  }

  TEST_CASE("non-edge affectance is 1/n") {
    const auto sys = gen_twoline(Graph{5, {{0, 1}}}, 2.0, 0.25);
    CHECK(affectance(sys, 2, 3) == doctest::Approx(0.2));
  }

  TEST_CASE("feasible subsets are exactly the independent sets, edges are certified") {
    Rng rng(4);
    for (int trial = 0; trial < 15; ++trial) {
      const auto g = random_graph(2 + rng.below(9), 0.4, rng);
      const auto sys = gen_twoline(g, 2.0 + trial % 3, 0.25);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n); ++mask)
        CHECK(oracle::sinr_feasible(sys, oracle::members(mask, g.n)) == oracle::independent(g, mask));
      for (auto [a, b] : g.edges) CHECK(pairwise_power_infeasible(sys, a, b).infeasible);
    }
  }

  TEST_CASE("n = 8: phi_mult at most 2n") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = random_graph(8, 0.5, rng);
      const auto sys = gen_twoline(g, 3.0, 0.25);
      CHECK(compute_phi(sys.space()).phi_mult <= 16.0);
      CHECK(compute_phi(sys.space()).phi_mult == doctest::Approx(oracle::phi_mult(sys.space())));
    }
  }
}

TEST_SUITE("gen_threepoint") {
  TEST_CASE("decays 1, q, 2q") {
    const auto s = gen_threepoint(16.0);
    CHECK(s(0, 1) == 1.0);
    CHECK(s(1, 2) == 16.0);
    CHECK(s(0, 2) == 32.0);
    CHECK(s.is_symmetric());
  }
  TEST_CASE("q must exceed 1") { CHECK_THROWS_AS(gen_threepoint(1.0), ValidationError); }
}

TEST_SUITE("generate") {
  TEST_CASE("same seed, same instance; different seed, different instance") {
    EuclideanParams p;
    p.random_count = 12;
    p.alpha = 2.5;
    p.planted_collinear = true;
    const auto a = std::get<DecaySpace>(generate({p, 7}));
    const auto b = std::get<DecaySpace>(generate({p, 7}));
    const auto c = std::get<DecaySpace>(generate({p, 8}));
    CHECK(a.matrix() == b.matrix());
    CHECK_FALSE(a.matrix() == c.matrix());
  }

  TEST_CASE("families produce the expected kinds") {
    CHECK(std::holds_alternative<DecaySpace>(generate({StarParams{3, 1.0}, std::nullopt})));
    CHECK(std::holds_alternative<LinkSystem>(generate({TwolineParams{Graph{3, {}}, 2.0, 0.25}, std::nullopt})));
    CHECK(std::string(family_name(WelzlParams{})) == "welzl");
  }

  TEST_CASE("invalid parameters are rejected before generation") {
    CHECK_THROWS_AS(validate({StarParams{0, 1.0}, std::nullopt}), ValidationError);
    CHECK_THROWS_AS(generate({ThreepointParams{0.5}, std::nullopt}), ValidationError);
    EuclideanParams none;
    CHECK_THROWS_AS(generate({none, 1}), ValidationError);
  }

  TEST_CASE("the RNG mapping is fixed") {
    // First draws of mt19937_64 seeded with 5489, top 53 bits scaled to [0, 1).
    Rng rng(5489);
    std::mt19937_64 ref(5489);
    for (int i = 0; i < 5; ++i) CHECK(rng.uniform() == static_cast<double>(ref() >> 11) / 9007199254740992.0);
  }
}

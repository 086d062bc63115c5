#include "decaynet/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "decaynet/capacity.hpp"
#include "decaynet/generators.hpp"
#include "decaynet/io.hpp"
#include "decaynet/space_analysis.hpp"

namespace decaynet {

namespace {

constexpr double kTol = 1e-9;

std::string fmt(double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << x;
  return ss.str();
}

std::string set_str(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string padded(const std::string& prefix, std::size_t k) {
  std::ostringstream ss;
  ss << prefix << std::setw(3) << std::setfill('0') << k;
  return ss.str();
}

// Collects verdicts. A check records the first failing witness and keeps
// counting cases so that the report shows how much was exercised.
class Recorder {
 public:
  explicit Recorder(VerifyReport& report) : report_(report) {}

  void check(const std::string& suite, const std::string& invariant, const std::string& item, bool ok,
             const std::function<std::string()>& witness) {
    Verdict& v = slot(suite, invariant, item);
    ++v.cases;
    if (!ok && v.passed) {
      v.passed = false;
      v.witness = witness();
    }
  }

  // Any exception escaping `body` fails the invariant with its message.
  void guard(const std::string& suite, const std::string& invariant, const std::string& item,
             const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(suite, invariant, item, false, [&] { return std::string("exception: ") + e.what(); });
    }
  }

  void observe(const std::string& item, const std::string& name, double value) {
    report_.observations.push_back({item, name, value});
  }

 private:
  Verdict& slot(const std::string& suite, const std::string& invariant, const std::string& item) {
    for (auto& v : report_.verdicts)
      if (v.suite == suite && v.invariant == invariant && v.item == item) return v;
    report_.verdicts.push_back({suite, invariant, item, true, 0, {}});
    return report_.verdicts.back();
  }

  VerifyReport& report_;
};

// SINR evaluated straight from decays and powers, independent of the
// affectance code path.
bool direct_sinr_feasible(const LinkSystem& sys, const LinkSet& set) {
  const auto& p = sys.params();
  for (LinkId v : set) {
    const double signal = sys.power(v) / sys.own_decay(v);
    double interference = p.noise;
    for (LinkId w : set)
      if (w != v) interference += sys.power(w) / sys.decay(w, v);
    if (signal < p.beta * interference * (1.0 - 1e-12)) return false;
  }
  return true;
}

std::size_t brute_force_mis(const Graph& g) {
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n); ++mask) {
    bool ok = true;
    for (auto [a, b] : g.edges)
      if ((mask >> a & 1) && (mask >> b & 1)) ok = false;
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
  }
  return best;
}

LinkSet mask_set(std::uint64_t mask, std::size_t n) {
  LinkSet s;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) s.push_back(i);
  return s;
}

// Greedy r-separated set containing the listener z, scanning nodes by index.
NodeSet separated_senders(const DecaySpace& space, NodeId z, double r) {
  NodeSet chosen{z};
  for (NodeId y = 0; y < space.size(); ++y) {
    if (y == z) continue;
    bool ok = std::all_of(chosen.begin(), chosen.end(),
                          [&](NodeId c) { return space(y, c) >= r && space(c, y) >= r; });
    if (ok) chosen.push_back(y);
  }
  chosen.erase(chosen.begin());
  return chosen;
}

// ---------------------------------------------------------------- spaces

void metricity_checks(Recorder& rec, const std::string& item, const DecaySpace& space, Rng& rng) {
  rec.guard("metricity", "quasi-triangle-at-zeta", item, [&] {
    const auto z = compute_zeta(space, kTol);
    const auto quasi = quasi_distances(space, z.zeta, 10 * kTol);
    const auto bad = find_triangle_violation(quasi.matrix(), 10 * kTol);
    rec.check("metricity", "quasi-triangle-at-zeta", item, !bad, [&] {
      return "triple (" + std::to_string(bad->from) + "," + std::to_string(bad->to) + "," +
             std::to_string(bad->via) + ") at zeta " + fmt(z.zeta);
    });
  });
  rec.guard("metricity", "zeta-within-upper-bound", item, [&] {
    if (space.size() < 2) return;
    const auto z = compute_zeta(space, kTol);
    const double z0 = zeta_upper_bound(space);
    if (z0 < 1.0) return;
    rec.check("metricity", "zeta-within-upper-bound", item, z.zeta_raw <= z0 + kTol,
              [&] { return "zeta_raw " + fmt(z.zeta_raw) + " > zeta0 " + fmt(z0); });
  });
  rec.guard("metricity", "triple-half-line", item, [&] {
    const std::size_t n = space.size();
    if (n < 3) return;
    for (int k = 0; k < 20; ++k) {
      const NodeId x = rng.below(n), y = rng.below(n), z = rng.below(n);
      if (x == y || y == z || x == z) continue;
      const double crit = triple_critical_zeta(space(x, y), space(x, z), space(z, y), kTol);
      for (double scale : {1.0 + 1e-6, 2.0, 10.0}) {
        const double t = 1.0 / (std::max(crit, 1e-3) * scale + 2 * kTol);
        const double lhs = std::pow(space(x, y), t);
        const double rhs = std::pow(space(x, z), t) + std::pow(space(z, y), t);
        rec.check("metricity", "triple-half-line", item, lhs <= rhs * (1 + 1e-9), [&] {
          return "triple (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ") fails at " +
                 fmt(1.0 / t) + " above critical " + fmt(crit);
        });
      }
    }
  });
}

void space_checks(Recorder& rec, const std::string& item, const DecaySpace& space) {
  if (space.size() < 2) return;
  const auto values = [&] {
    std::vector<double> v;
    for (NodeId p = 0; p < space.size(); ++p)
      for (NodeId q = 0; q < space.size(); ++q)
        if (p != q) v.push_back(space(p, q));
    std::sort(v.begin(), v.end());
    return v;
  }();
  const double median = values[values.size() / 2];

  rec.guard("space", "fading-witness-separated", item, [&] {
    const auto rep = fading_parameter(space, median);
    NodeSet all = rep.witness_set;
    if (rep.witness_node) all.push_back(*rep.witness_node);
    rec.check("space", "fading-witness-separated", item, is_r_separated(space, all, median),
              [&] { return "witness " + set_str(all) + " at r = " + fmt(median); });
  });
  rec.guard("space", "fading-greedy-below-exact", item, [&] {
    if (space.size() > kDefaultExactLimit) return;
    const auto exact = fading_parameter(space, median);
    const auto greedy = fading_parameter(space, median, 0);
    rec.check("space", "fading-greedy-below-exact", item, greedy.gamma <= exact.gamma * (1 + 1e-12),
              [&] { return "greedy " + fmt(greedy.gamma) + " > exact " + fmt(exact.gamma); });
  });
  rec.guard("space", "packing-nonincreasing", item, [&] {
    NodeSet all(space.size());
    for (NodeId i = 0; i < all.size(); ++i) all[i] = i;
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < values.size(); i += std::max<std::size_t>(1, values.size() / 12)) {
      const double t = values[i] / 2.0;
      const auto pack = packing_number(space, all, t);
      rec.check("space", "packing-nonincreasing", item, pack.count <= prev,
                [&] { return "packing grows to " + std::to_string(pack.count) + " at t = " + fmt(t); });
      prev = pack.count;
    }
  });
}

// Annulus bound: interference at a listener from an r-separated sender set
// is at most fading_bound(C, A) P / r.
void annulus_checks(Recorder& rec, const std::string& item, const DecaySpace& space) {
  rec.guard("space", "annulus-bound", item, [&] {
    const auto est = assouad_estimate(space, std::nullopt);
    rec.observe(item, "assouad", est.assouad);
    rec.observe(item, "assouad_C", est.C);
    if (!(est.assouad < 1.0)) {
      rec.check("space", "annulus-bound", item, false,
                [&] { return "estimated dimension " + fmt(est.assouad) + " is not below 1"; });
      return;
    }
    const double bound = fading_bound(est.C, est.assouad);
    for (std::size_t i = 0; i < est.r_grid.size(); i += std::max<std::size_t>(1, est.r_grid.size() / 8)) {
      const double r = est.r_grid[i];
      for (NodeId z = 0; z < space.size(); ++z) {
        const auto senders = separated_senders(space, z, r);
        const double I = interference_at(space, senders, z, 1.0);
        rec.check("space", "annulus-bound", item, I <= bound / r * (1 + 1e-12), [&] {
          return "listener " + std::to_string(z) + " r = " + fmt(r) + ": interference " + fmt(I) + " > " +
                 fmt(bound / r);
        });
      }
    }
  });
}

// ---------------------------------------------------------------- systems

void link_checks(Recorder& rec, const std::string& item, const LinkSystem& sys, Rng& rng) {
  const std::size_t n = sys.size();
  if (sys.params().noise == 0.0) {
    rec.guard("link", "affectance-scale-invariant", item, [&] {
      const auto scaled = sys.power().is_uniform() ? sys.with_power(PowerAssignment::uniform(sys.power(0) * 7.5))
                                                   : sys;
      for (LinkId w = 0; w < n; ++w)
        for (LinkId v = 0; v < n; ++v) {
          const double a = affectance(sys, w, v), b = affectance(scaled, w, v);
          rec.check("link", "affectance-scale-invariant", item, std::abs(a - b) <= 1e-12 * std::max(1.0, a),
                    [&] { return "a_" + std::to_string(w) + "(" + std::to_string(v) + ") changes"; });
        }
    });
  }
  rec.guard("link", "feasibility-agrees-with-sinr", item, [&] {
    for (int k = 0; k < 40; ++k) {
      LinkSet s;
      for (LinkId v = 0; v < n; ++v)
        if (rng.uniform() < 0.3) s.push_back(v);
      if (s.size() < 2) continue;
      const bool a = is_feasible(sys, s);
      bool b = true, boundary = false;
      for (LinkId v : s) {
        const double x = sinr(sys, s, v);
        if (std::abs(x - sys.params().beta) <= 1e-9 * sys.params().beta) boundary = true;
        if (x < sys.params().beta) b = false;
      }
      if (boundary) continue;
      rec.check("link", "feasibility-agrees-with-sinr", item, a == b, [&] { return "set " + set_str(s); });
    }
  });
  rec.guard("link", "feasibility-subset-monotone", item, [&] {
    if (!sys.power().is_uniform()) return;
    const auto quasi = metric_quasi_distances(sys.space());
    const auto cap = capacity_uniform(sys, quasi);
    const auto& S = cap.selected;
    for (std::size_t drop = 0; drop < S.size(); ++drop) {
      LinkSet sub;
      for (std::size_t i = 0; i < S.size(); ++i)
        if (i != drop) sub.push_back(S[i]);
      rec.check("link", "feasibility-subset-monotone", item, is_feasible(sys, sub),
                [&] { return "subset " + set_str(sub) + " of feasible " + set_str(S); });
    }
  });
  if (!sys.link_gain_mode() && sys.space().is_symmetric(1e-12) && sys.power().is_uniform()) {
    rec.guard("link", "receiver-interference-transfer", item, [&] {
      const auto quasi = metric_quasi_distances(sys.space());
      const double amp = std::pow(2.0, quasi.zeta());
      const auto& space = sys.space();
      for (LinkId v = 0; v < n; ++v) {
        const NodeId s = sys.link(v).sender, r = sys.link(v).receiver;
        const double R = link_length(sys, quasi, v) * (1 + 1e-9);
        NodeSet senders;
        for (NodeId y = 0; y < space.size(); ++y)
          if (y != s && y != r && quasi(y, s) >= 2 * R) senders.push_back(y);
        if (senders.empty()) continue;
        const double at_r = interference_at(space, senders, r, sys.power(v));
        const double at_s = interference_at(space, senders, s, sys.power(v));
        rec.check("link", "receiver-interference-transfer", item, at_r <= amp * at_s * (1 + 1e-9), [&] {
          return "link " + std::to_string(v) + ": " + fmt(at_r) + " > 2^zeta * " + fmt(at_s);
        });
      }
    });
  }
}

void capacity_checks(Recorder& rec, const std::string& item, const LinkSystem& sys) {
  if (!sys.power().is_uniform()) return;
  rec.guard("capacity", "selected-feasible", item, [&] {
    const auto quasi = metric_quasi_distances(sys.space());
    const auto cap = capacity_with_oracle(sys, quasi, 14);
    rec.check("capacity", "selected-feasible", item, direct_sinr_feasible(sys, cap.selected),
              [&] { return "S = " + set_str(cap.selected); });
    rec.check("capacity", "selected-at-least-half", item, 2 * cap.selected.size() >= cap.intermediate.size(),
              [&] { return "|S| = " + std::to_string(cap.selected.size()) + ", |X| = " +
                           std::to_string(cap.intermediate.size()); });
    if (cap.opt) {
      rec.check("capacity", "nonempty-when-optimum-positive", item, *cap.opt == 0 || !cap.selected.empty(),
                [&] { return "S empty but optimum " + std::to_string(*cap.opt); });
      if (cap.ratio) {
        rec.check("capacity", "ratio-at-least-one", item, *cap.ratio >= 1.0,
                  [&] { return "ratio " + fmt(*cap.ratio); });
        rec.observe(item, "ratio", *cap.ratio);
      }
    }
  });
}

void partition_checks(Recorder& rec, const std::string& item, const LinkSystem& sys, Rng& rng) {
  if (!sys.power().is_uniform()) return;
  const std::size_t n = sys.size();
  rec.guard("partition", "signal-strengthen-classes", item, [&] {
    const auto quasi = metric_quasi_distances(sys.space());
    const auto S = capacity_uniform(sys, quasi).selected;
    const auto part = signal_strengthen(sys, S, 1.0, 3.0);
    bool ok = part.classes.size() <= 36 && part.classes.size() <= part.bound;
    for (const auto& c : part.classes) ok = ok && is_feasible(sys, c, 3.0);
    rec.check("partition", "signal-strengthen-classes", item, ok,
              [&] { return std::to_string(part.classes.size()) + " classes for S = " + set_str(S); });
  });
  rec.guard("partition", "onezetasep", item, [&] {
    const auto quasi = metric_quasi_distances(sys.space());
    const double K = std::numbers::e * std::numbers::e / sys.params().beta;
    for (int trial = 0; trial < 10; ++trial) {
      LinkSet s;
      for (LinkId v = 0; v < n; ++v) {
        if (rng.uniform() < 0.5 || sys.is_drowned(v)) continue;
        s.push_back(v);
        if (!is_feasible(sys, s, K)) s.pop_back();
      }
      const auto check = check_onezetasep(sys, quasi, s);
      rec.check("partition", "onezetasep", item, check.status != OneZetaSepStatus::violation, [&] {
        return "set " + set_str(s) + " pair (" + std::to_string(check.witness->first) + "," +
               std::to_string(check.witness->second) + ")";
      });
      if (s.size() >= 2 && quasi.zeta() > 1.0 / quasi.zeta()) {
        const auto part = separation_strengthen(sys, quasi, s, 1.0 / quasi.zeta(), quasi.zeta());
        bool ok = part.classes.size() <= part.bound;
        for (const auto& c : part.classes) ok = ok && check_separation(sys, quasi, c, quasi.zeta()).separated;
        rec.check("partition", "separation-strengthen-classes", item, ok,
                  [&] { return std::to_string(part.classes.size()) + " classes for " + set_str(s); });
      }
    }
  });
  rec.guard("partition", "amicable-subset", item, [&] {
    const auto quasi = metric_quasi_distances(sys.space());
    const auto S = capacity_uniform(sys, quasi).selected;
    const auto am = amicable_subset(sys, quasi, S);
    bool ok = std::all_of(am.subset.begin(), am.subset.end(),
                          [&](LinkId v) { return std::find(S.begin(), S.end(), v) != S.end(); });
    for (LinkId v : am.subset) ok = ok && out_affectance(sys, v, am.subset) <= 2.0;
    rec.check("partition", "amicable-subset", item, ok, [&] { return "S' = " + set_str(am.subset); });
    rec.observe(item, "amicable_max_out_affectance", am.max_out_affectance);
  });
}

// ---------------------------------------------------------------- corpus

void builtin_corpus(Recorder& rec, std::uint64_t seed) {
  Rng rng(seed);

  for (double alpha : {1.0, 2.0, 3.0}) {
    for (std::size_t k = 0; k < 2; ++k) {
      const std::string item = padded("euclidean-a" + std::to_string(static_cast<int>(alpha)) + "-", k);
      const auto pts = random_points_with_collinear_triple(20, rng);
      const auto space = gen_euclidean(pts, alpha);
      rec.check("generators", "output-validates", item, validate_space(space).ok(), [] { return "axioms"; });
      const auto z = compute_zeta(space, kTol);
      rec.check("metricity", "zeta-recovers-alpha", item, std::abs(z.zeta - alpha) <= 1e-6,
                [&] { return "zeta " + fmt(z.zeta) + " for alpha " + fmt(alpha); });
      metricity_checks(rec, item, space, rng);
      space_checks(rec, item, space);
      if (alpha == 3.0) annulus_checks(rec, item, gen_euclidean(random_points(14, rng), alpha));
      rec.guard("space", "guard-set-at-most-six", item, [&] {
        const auto quasi = metric_quasi_distances(space);
        for (NodeId x = 0; x < space.size(); ++x) {
          const auto gs = guard_set(space, quasi, x);
          rec.check("space", "guard-set-at-most-six", item, gs.guards.size() <= 6,
                    [&] { return "node " + std::to_string(x) + " needs " + set_str(gs.guards); });
        }
      });
    }
  }

  {
    double prev = 0.0;
    for (double q : {16.0, 256.0, 65536.0, 4294967296.0}) {
      const std::string item = "threepoint-q" + fmt(q);
      const auto space = gen_threepoint(q);
      const auto m = analyze_metricity(space);
      rec.check("metricity", "threepoint-phi-below-two", item,
                m.phi_mult < 2.0 && std::abs(m.phi_mult - 2 * q / (1 + q)) <= 1e-12,
                [&] { return "phi_mult " + fmt(m.phi_mult); });
      rec.check("metricity", "threepoint-zeta-grows", "threepoint-family", m.zeta > prev,
                [&] { return "zeta " + fmt(m.zeta) + " at q " + fmt(q) + " not above " + fmt(prev); });
      if (q == 65536.0)
        rec.check("metricity", "threepoint-zeta-in-5-6", item, m.zeta > 5.0 && m.zeta < 6.0,
                  [&] { return "zeta " + fmt(m.zeta); });
      rec.observe(item, "zeta", m.zeta);
      rec.observe(item, "phi_mult", m.phi_mult);
      prev = m.zeta;
    }
  }

  {
    const auto space = gen_star(16, 1.0);
    NodeSet leaves;
    for (NodeId i = 2; i < space.size(); ++i) leaves.push_back(i);
    const double I = interference_at(space, leaves, 0, 1.0);
    rec.check("space", "star-leaf-interference", "star-k16", std::abs(I - 16.0 / 257.0) <= 1e-12,
              [&] { return "interference " + fmt(I); });
    space_checks(rec, "star-k16", space);
  }

  for (std::size_t n = 4; n <= 6; ++n) {
    const std::string item = "welzl-n" + std::to_string(n);
    const auto space = gen_welzl(n, 0.25);
    rec.guard("space", "welzl-two-ball-doubling", item, [&] {
      const auto bad = find_doubling_violation(space, 2);
      rec.check("space", "welzl-two-ball-doubling", item, !bad,
                [&] { return "ball at " + std::to_string(bad->center) + " radius " + fmt(bad->radius); });
    });
    rec.guard("space", "welzl-independence", item, [&] {
      const auto quasi = metric_quasi_distances(space);
      const auto ind = independent_set_about(quasi, 0);
      rec.check("space", "welzl-independence", item, ind.dimension == n + 1,
                [&] { return "independent set " + set_str(ind.set); });
    });
  }

  {
    SquareMatrix f(6, 1.0);
    for (std::size_t i = 0; i < 6; ++i) f(i, i) = 0.0;
    const DecaySpace space(std::move(f));
    rec.guard("space", "uniform-independence-one", "uniform-n6", [&] {
      const auto ind = independence_dimension(space, metric_quasi_distances(space));
      rec.check("space", "uniform-independence-one", "uniform-n6", ind.dimension == 1,
                [&] { return "dimension " + std::to_string(ind.dimension); });
    });
  }

  rec.check("space", "zeta-hat-basel", "constants", std::abs(riemann_zeta_hat(2.0) - std::numbers::pi * std::numbers::pi / 6) <= 1e-9,
            [] { return "zeta_hat(2) = " + fmt(riemann_zeta_hat(2.0)); });
  rec.check("space", "fading-bound-reference", "constants", std::abs(fading_bound(1.0, 0.5) - 4.560) <= 1e-3,
            [] { return "fading_bound(1, 0.5) = " + fmt(fading_bound(1.0, 0.5)); });

  for (std::size_t k = 0; k < 4; ++k) {
    const std::string item = padded("equidecay-", k);
    const Graph g = random_graph(5 + k, 0.4, rng);
    rec.guard("capacity", "equidecay-oracle-equals-mis", item, [&] {
      const auto sys = gen_equidecay_graph(g);
      const auto oracle = capacity_oracle(sys);
      const auto mis = brute_force_mis(g);
      rec.check("capacity", "equidecay-oracle-equals-mis", item, oracle.size == mis,
                [&] { return "oracle " + std::to_string(oracle.size) + " vs MIS " + std::to_string(mis); });
      const double expected = std::log2(2.0 * static_cast<double>(g.n));
      const double z0 = zeta_upper_bound(sys.space());
      rec.check("generators", "equidecay-zeta0", item, g.edges.empty() || std::abs(z0 - expected) <= 1e-12,
                [&] { return "zeta0 " + fmt(z0) + " vs lg(2n) " + fmt(expected); });
    });
  }

  for (std::size_t k = 0; k < 3; ++k) {
    const std::string item = padded("twoline-", k);
    const Graph g = random_graph(4 + k, 0.4, rng);
    rec.guard("capacity", "twoline-feasible-iff-independent", item, [&] {
      const auto sys = gen_twoline(g, 3.0, 0.25);
      rec.check("generators", "output-validates", item, validate_space(sys.space()).ok(), [] { return "axioms"; });
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n); ++mask) {
        const auto s = mask_set(mask, g.n);
        bool independent = true;
        for (auto [a, b] : g.edges)
          if ((mask >> a & 1) && (mask >> b & 1)) independent = false;
        rec.check("capacity", "twoline-feasible-iff-independent", item, is_feasible(sys, s) == independent,
                  [&] { return "set " + set_str(s); });
      }
      for (auto [a, b] : g.edges)
        rec.check("capacity", "twoline-edge-pairs-certified", item, pairwise_power_infeasible(sys, a, b).infeasible,
                  [&] { return "edge (" + std::to_string(a) + "," + std::to_string(b) + ")"; });
      const auto bad = find_doubling_violation(sys.space(), 4);
      rec.check("space", "twoline-four-ball-doubling", item, !bad,
                [&] { return "ball at " + std::to_string(bad->center) + " radius " + fmt(bad->radius); });
      const auto ind = independence_dimension(sys.space(), metric_quasi_distances(sys.space()));
      rec.observe(item, "independence_dimension", static_cast<double>(ind.dimension));
    });
  }

  for (double alpha : {2.0, 3.0}) {
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string item = padded("planar-a" + std::to_string(static_cast<int>(alpha)) + "-", k);
      const SinrParams params{1.0 + (k % 2), k >= 2 ? 1e-4 : 0.0};
      const auto sys = random_planar_links(12, alpha, rng, 1.0, 0.02, 0.15, params);
      rec.check("generators", "output-validates", item, validate_space(sys.space()).ok(), [] { return "axioms"; });
      const auto z = compute_zeta(sys.space(), kTol);
      rec.check("generators", "euclidean-zeta-at-most-alpha", item, z.zeta <= alpha + 1e-6,
                [&] { return "zeta " + fmt(z.zeta); });
      link_checks(rec, item, sys, rng);
      capacity_checks(rec, item, sys);
      partition_checks(rec, item, sys, rng);
    }
  }
}

void file_corpus(Recorder& rec, const std::vector<std::filesystem::path>& files, std::uint64_t seed) {
  std::vector<std::filesystem::path> sorted = files;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& path : sorted) {
    Rng rng(seed);
    const std::string item = path.string();
    bool is_system = false;
    if (path.extension() != ".csv") {
      const auto doc = io::read_json_file(path);
      is_system = doc.is_object() && doc.contains("space");
    }
    if (is_system) {
      const auto sys = io::load_system(path);
      rec.check("generators", "output-validates", item, validate_space(sys.space()).ok(), [] { return "axioms"; });
      link_checks(rec, item, sys, rng);
      capacity_checks(rec, item, sys);
      partition_checks(rec, item, sys, rng);
    } else {
      const auto space = io::load_space(path);
      const auto val = validate_space(space);
      rec.check("generators", "output-validates", item, val.ok(), [&] {
        const auto& v = val.violations.front();
        return std::string(to_string(v.kind)) + " at (" + std::to_string(v.row) + "," + std::to_string(v.col) + ")";
      });
      if (!val.ok()) continue;
      metricity_checks(rec, item, space, rng);
      space_checks(rec, item, space);
    }
  }
}

}  // namespace

bool VerifyReport::all_passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.passed; }));
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.seed = options.seed;
  report.corpus = options.files.empty() ? "builtin" : "files";
  Recorder rec(report);
  if (options.files.empty())
    builtin_corpus(rec, options.seed);
  else
    file_corpus(rec, options.files, options.seed);

  std::sort(report.verdicts.begin(), report.verdicts.end(), [](const Verdict& a, const Verdict& b) {
    return std::tie(a.suite, a.invariant, a.item) < std::tie(b.suite, b.invariant, b.item);
  });
  std::stable_sort(report.observations.begin(), report.observations.end(), [](const Observation& a, const Observation& b) {
    return std::tie(a.item, a.name) < std::tie(b.item, b.name);
  });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : report.verdicts) {
    nlohmann::json j{{"suite", v.suite}, {"invariant", v.invariant}, {"item", v.item}, {"passed", v.passed},
                     {"cases", v.cases}};
    if (!v.passed) j["witness"] = v.witness;
    verdicts.push_back(std::move(j));
  }
  nlohmann::json observations = nlohmann::json::array();
  for (const auto& o : report.observations)
    observations.push_back({{"item", o.item}, {"name", o.name}, {"value", std::isfinite(o.value) ? nlohmann::json(o.value) : nlohmann::json(nullptr)}});
  return {{"corpus", report.corpus},
          {"seed", report.seed},
          {"passed", report.all_passed()},
          {"failures", report.failures()},
          {"verdicts", std::move(verdicts)},
          {"observations", std::move(observations)}};
}

}  // namespace decaynet

// Acceptance criteria, one PASS/FAIL line each; exits 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "decaynet/capacity.hpp"
#include "decaynet/generators.hpp"
#include "decaynet/io.hpp"
#include "decaynet/space_analysis.hpp"
#include "decaynet/verify.hpp"
#include "oracles.hpp"

using namespace decaynet;
using Clock = std::chrono::steady_clock;

namespace {

int failed = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " -- " << detail << std::endl;
  if (!ok) ++failed;
}

// Runs a criterion; an escaping exception is a failure with its message.
template <class F>
void criterion(int id, const std::string& title, F&& body) {
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  report(id, title, ok, detail.str());
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// t with q^t (2^t - 1) = 1, by bisection; the left side increases in t.
double threepoint_zeta(double q) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::pow(q, mid) * (std::pow(2.0, mid) - 1.0) < 1.0 ? lo : hi) = mid;
  }
  return 1.0 / (0.5 * (lo + hi));
}

LinkSystem planar(const std::vector<std::pair<Point, Point>>& links, double alpha) {
  std::vector<Point> pts;
  std::vector<Link> ls;
  for (const auto& [s, r] : links) {
    ls.push_back({pts.size(), pts.size() + 1});
    pts.push_back(s);
    pts.push_back(r);
  }
  return LinkSystem(gen_euclidean(pts, alpha), ls, {}, PowerAssignment::uniform(1.0));
}

LinkSet thin(const LinkSystem& sys, double K) {
  LinkSet s;
  for (LinkId v = 0; v < sys.size(); ++v) {
    s.push_back(v);
    if (!oracle::sinr_feasible(sys, s, K)) s.pop_back();
  }
  return s;
}

std::string run_cli(const std::string& args, int& status) {
  const std::string cmd = std::string(DECAYNET_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start " + cmd);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

std::string without_timing(const std::string& text) {
  auto doc = io::json::parse(text);
  doc.erase("timing");
  return io::dump(doc);
}

}  // namespace

int main() {
  criterion(1, "metricity recovers the path-loss exponent", [](std::ostream& out) {
    Rng rng(101);
    bool ok = true;
    double worst_err = 0.0, worst_time = 0.0;
    for (double alpha : {1.0, 2.0, 3.0, 6.0}) {
      for (int cloud = 0; cloud < 20; ++cloud) {
        const auto space = gen_euclidean(random_points_with_collinear_triple(50, rng), alpha);
        const auto t0 = Clock::now();
        const double zeta = compute_zeta(space).zeta;
        const double dt = seconds_since(t0);
        worst_err = std::max(worst_err, std::abs(zeta - alpha));
        worst_time = std::max(worst_time, dt);
        ok = ok && std::abs(zeta - alpha) <= 1e-6 && dt < 5.0;
      }
    }
    out << "80 clouds of 50 points, max |zeta - alpha| = " << worst_err << ", slowest " << worst_time << " s";
    return ok;
  });

  criterion(2, "phi and zeta separate on the three-point family", [](std::ostream& out) {
    const double q16 = 65536.0;
    const auto m = analyze_metricity(gen_threepoint(q16));
    bool ok = m.phi_mult < 2.0 && m.zeta > 5.0 && m.zeta < 6.0;
    ok = ok && std::abs(m.zeta - threepoint_zeta(q16)) < 1e-6;
    double prev = 0.0;
    out << "q=2^16: phi_mult " << m.phi_mult << ", zeta " << m.zeta << " (bisection " << threepoint_zeta(q16)
        << "); zeta over q=2^4,2^8,2^16,2^32:";
    for (int e : {4, 8, 16, 32}) {
      const double z = compute_zeta(gen_threepoint(std::ldexp(1.0, e))).zeta;
      out << " " << z;
      ok = ok && z > prev && std::abs(z - threepoint_zeta(std::ldexp(1.0, e))) < 1e-6;
      prev = z;
    }
    return ok;
  });

  // Shared by criteria 3 and 4.
  std::size_t instances = 0, oracle_runs = 0;
  double min_ratio = INFINITY, max_ratio = 0.0;
  bool sound = true, half = true, ratio_ok = true;
  {
    Rng rng(303);
    for (int i = 0; i < 1200; ++i) {
      const double alpha = i % 2 ? 3.0 : 2.0;
      const std::size_t n = 2 + rng.below(29);
      const double side = 1.0 + rng.uniform(0, 2);
      const auto sys = random_planar_links(n, alpha, rng, side, 0.02, 0.3);
      const auto quasi = metric_quasi_distances(sys.space());
      const auto r = capacity_uniform(sys, quasi);
      ++instances;
      sound = sound && oracle::sinr_feasible(sys, r.selected);
      half = half && 2 * r.selected.size() >= r.intermediate.size();
      if (n <= 14) {
        const auto opt = capacity_oracle(sys, 14);
        ++oracle_runs;
        const double ratio = static_cast<double>(opt.size) / static_cast<double>(r.selected.size());
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
        ratio_ok = ratio_ok && ratio >= 1.0 && opt.size == oracle::max_feasible(sys);
      }
    }
  }
  {
    std::ostringstream d;
    d << instances << " instances, alpha in {2,3}, n <= 30; selected sets feasible: " << (sound ? "all" : "NOT all")
      << "; |S| >= |X|/2: " << (half ? "all" : "NOT all");
    report(3, "greedy capacity output is feasible and keeps half of X", sound && half && instances >= 1000, d.str());
  }
  criterion(4, "approximation ratio tracking", [&](std::ostream& out) {
    const auto sys = planar({{{0, 0}, {1, 0}}, {{0, 0.5}, {1, 0.5}}, {{100, 0}, {101, 0}}}, 2.0);
    const auto r = capacity_with_oracle(sys, metric_quasi_distances(sys.space()));
    const bool hand = r.selected == LinkSet{0, 2} && r.opt == std::size_t{3} && r.ratio &&
                      std::abs(*r.ratio - 1.5) < 1e-12 && oracle::max_feasible(sys) == 3;
    out << oracle_runs << " oracle runs with n <= 14, OPT/|S| in [" << min_ratio << ", " << max_ratio
        << "]; hand-traced instance S = {";
    for (std::size_t i = 0; i < r.selected.size(); ++i) out << (i ? "," : "") << "l" << r.selected[i] + 1;
    out << "}, OPT " << (r.opt ? std::to_string(*r.opt) : "-") << ", ratio " << (r.ratio ? *r.ratio : 0.0);
    return ratio_ok && hand && oracle_runs > 0;
  });

  criterion(5, "hardness constructions match independent sets", [](std::ostream& out) {
    Rng rng(505);
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
      const auto g = random_graph(1 + rng.below(12), 0.1 + 0.6 * rng.uniform(), rng);
      ok = ok && capacity_oracle(gen_equidecay_graph(g)).size == oracle::max_independent_set(g);
    }
    std::size_t subsets = 0, edges = 0;
    for (int i = 0; i < 30; ++i) {
      const auto g = random_graph(1 + rng.below(10), 0.1 + 0.6 * rng.uniform(), rng);
      const auto sys = gen_twoline(g, 2.0 + i % 4, 0.25);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n); ++mask) {
        const auto s = oracle::members(mask, g.n);
        const bool independent = oracle::independent(g, mask);
        ok = ok && is_feasible(sys, s) == independent && oracle::sinr_feasible(sys, s) == independent;
        ++subsets;
      }
      for (auto [a, b] : g.edges) {
        ok = ok && pairwise_power_infeasible(sys, a, b).infeasible;
        ++edges;
      }
    }
    out << "50 equi-decay graphs (n <= 12) match maximum independent sets; 30 two-line graphs (n <= 10): "
        << subsets << " subsets compared, " << edges << " edge pairs certified";
    return ok;
  });

  criterion(6, "signal and separation partitions", [](std::ostream& out) {
    Rng rng(606);
    bool ok = true;
    std::size_t signal_sets = 0, max_classes = 0, sep_sets = 0, sep_classes = 0;
    for (int i = 0; i < 200; ++i) {
      const auto sys = random_planar_links(12 + rng.below(8), 2.0 + (i % 3) * 0.5, rng, 1.0, 0.03, 0.3);
      const auto set = thin(sys, 1.0);
      const auto part = signal_strengthen(sys, set, 1.0, 3.0);
      ++signal_sets;
      max_classes = std::max(max_classes, part.classes.size());
      ok = ok && part.classes.size() <= 36;
      std::size_t covered = 0;
      for (const auto& c : part.classes) {
        ok = ok && oracle::sinr_feasible(sys, c, 3.0);
        covered += c.size();
      }
      ok = ok && covered == set.size();

      const auto quasi = metric_quasi_distances(sys.space());
      LinkSet separated;
      for (LinkId v = 0; v < sys.size(); ++v) {
        separated.push_back(v);
        if (!check_separation(sys, quasi, separated, 0.5).separated) separated.pop_back();
      }
      const auto sp = separation_strengthen(sys, quasi, separated, 0.5, 2.0);
      ++sep_sets;
      sep_classes = std::max(sep_classes, sp.classes.size());
      for (const auto& c : sp.classes) ok = ok && check_separation(sys, quasi, c, 2.0).separated;
    }
    std::size_t violations = 0;
    for (int i = 0; i < 500; ++i) {
      const SinrParams params{1.0 + (i % 3), 0.0};
      const auto sys = random_planar_links(10, 2.0 + (i % 5) * 0.5, rng, 1.0, 0.02, 0.3, params);
      const auto set = thin(sys, std::numbers::e * std::numbers::e / params.beta);
      const auto check = check_onezetasep(sys, metric_quasi_distances(sys.space()), set);
      violations += check.status != OneZetaSepStatus::ok;
    }
    out << signal_sets << " 1-feasible sets split into at most " << max_classes << " 3-feasible classes; " << sep_sets
        << " separation partitions (at most " << sep_classes << " classes) re-verified at eta = 2; " << violations
        << " 1/zeta-separation violations over 500 e^2/beta-feasible sets";
    return ok && violations == 0;
  });

  criterion(7, "fading bound", [](std::ostream& out) {
    bool ok = true;
    out << "alpha = 3, 64 points:";
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      Rng rng(seed);
      const auto space = gen_euclidean(random_points(64, rng), 3.0);
      const auto dim = assouad_estimate(space, std::nullopt, default_q_grid(), 64);
      const bool near = std::abs(dim.assouad - 2.0 / 3.0) <= 0.3;
      ok = ok && near && dim.assouad < 1.0;
      if (dim.assouad >= 1.0) {
        out << " A " << dim.assouad << " (not a fading estimate)";
        continue;
      }
      const double bound = fading_bound(dim.C, dim.assouad);
      double worst = 0.0;
      // The exact fading parameter is the largest normalized interference over
      // every r-separated sender set, so bounding it covers them all.
      for (double r : {1e-4, 1e-3, 1e-2, 0.05, 0.2}) {
        const auto fading = fading_parameter(space, r, 64);
        ok = ok && fading.exact;
        worst = std::max(worst, fading.gamma);
        for (int trial = 0; trial < 20; ++trial) {
          const NodeId x = rng.below(space.size());
          NodeSet senders{x};
          for (std::size_t k = 0; k < space.size(); ++k) {
            const NodeId y = rng.below(space.size());
            if (std::find(senders.begin(), senders.end(), y) != senders.end()) continue;
            senders.push_back(y);
            if (!is_r_separated(space, senders, r)) senders.pop_back();
          }
          senders.erase(senders.begin());
          const double P = 1.0 + trial;
          ok = ok && interference_at(space, senders, x, P) <= bound * P / r;
        }
      }
      ok = ok && worst <= bound;
      out << " [seed " << seed << ": A " << dim.assouad << ", C " << dim.C << ", max gamma " << worst << " <= bound "
          << bound << "]";
    }
    const double b05 = fading_bound(1.0, 0.5);
    const double b0 = fading_bound(1.0, 0.0);
    const double expect0 = 2.0 * (std::numbers::pi * std::numbers::pi / 6.0 - 1.0);
    ok = ok && std::abs(b05 - 4.560) <= 1e-3 && std::abs(b0 - expect0) <= 1e-9;
    out << "; fading_bound(1, 0.5) = " << b05 << ", fading_bound(1, 0) = " << b0;
    return ok;
  });

  criterion(8, "dimension examples", [](std::ostream& out) {
    SquareMatrix u(9, 1.0);
    for (std::size_t i = 0; i < 9; ++i) u(i, i) = 0.0;
    const DecaySpace uniform(u);
    const auto ind = independence_dimension(uniform, metric_quasi_distances(uniform)).dimension;
    bool ok = ind == 1;
    out << "uniform n=9 independence " << ind << "; Welzl:";
    for (std::size_t n = 4; n <= 8; ++n) {
      const auto s = gen_welzl(n, 0.25);
      const auto about = independent_set_about(metric_quasi_distances(s), 0).dimension;
      const bool doubling = !find_doubling_violation(s, 2).has_value();
      ok = ok && about == n + 1 && doubling;
      out << " n=" << n << " -> " << about << (doubling ? " (2-ball doubling)" : " (doubling FAILS)");
    }
    Rng rng(808);
    std::size_t most = 0;
    for (int i = 0; i < 100; ++i) {
      const auto s = gen_euclidean(random_points(12 + rng.below(30), rng), 1.0 + rng.uniform(0, 3));
      const auto quasi = metric_quasi_distances(s);
      const auto g = guard_set(s, quasi, rng.below(s.size()));
      most = std::max(most, g.guards.size());
    }
    ok = ok && most <= 6;
    out << "; largest planar guard set over 100 clouds: " << most;
    return ok;
  });

  criterion(9, "star example interference", [](std::ostream& out) {
    const auto s = gen_star(16, 1.0);
    NodeSet leaves;
    for (std::size_t i = 2; i < 18; ++i) leaves.push_back(i);
    const double I = interference_at(s, leaves, 0, 1.0);
    out << "leaf interference at x-1 = " << I << " (16/257 = " << 16.0 / 257.0 << ", 1/k = " << 1.0 / 16 << ")";
    return std::abs(I - 16.0 / 257.0) <= 1e-12;
  });

  criterion(10, "verify is deterministic", [](std::ostream& out) {
    int s1 = -1, s2 = -1;
    const auto a = run_cli("verify --corpus builtin --seed 1", s1);
    const auto b = run_cli("verify --corpus builtin --seed 1", s2);
    const bool cli_same = without_timing(a) == without_timing(b);
    const auto ra = to_json(run_verify({}));
    const auto rb = to_json(run_verify({}));
    const bool lib_same = io::dump(ra) == io::dump(rb);
    out << "CLI exit " << s1 << "/" << s2 << ", reports " << (cli_same ? "identical" : "DIFFER") << " ("
        << without_timing(a).size() << " bytes); library reports " << (lib_same ? "identical" : "DIFFER");
    return s1 == 0 && s2 == 0 && cli_same && lib_same;
  });

  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}

#include "decaynet/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace decaynet {

namespace {

constexpr double kSlack = 1e-12;

void require_uniform(const LinkSystem& sys, const char* what) {
  if (!sys.power().is_uniform()) throw PreconditionError(std::string(what) + " requires uniform power");
}

// raw[w][v] = uncapped a_w(v); rows/cols of drowned receivers are unused.
std::vector<std::vector<double>> raw_affectance_matrix(const LinkSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (LinkId v = 0; v < n; ++v) {
    if (sys.is_drowned(v)) continue;
    for (LinkId w = 0; w < n; ++w) a[w][v] = raw_affectance(sys, w, v);
  }
  return a;
}

class OracleSearch {
 public:
  OracleSearch(const std::vector<std::vector<double>>& raw, std::vector<LinkId> candidates)
      : raw_(raw), candidates_(std::move(candidates)), sums_(raw.size(), 0.0) {}

  OracleResult run() {
    dfs(0);
    return {best_.size(), best_};
  }

 private:
  bool fits(LinkId v) const {
    if (sums_[v] > 1.0 + kSlack) return false;
    return std::all_of(current_.begin(), current_.end(),
                       [&](LinkId u) { return sums_[u] + raw_[v][u] <= 1.0 + kSlack; });
  }

  void dfs(std::size_t i) {
    if (current_.size() + (candidates_.size() - i) <= best_.size()) return;
    if (i == candidates_.size()) {
      best_ = current_;
      return;
    }
    const LinkId v = candidates_[i];
    if (fits(v)) {
      for (std::size_t u = 0; u < sums_.size(); ++u) sums_[u] += raw_[v][u];
      current_.push_back(v);
      dfs(i + 1);
      current_.pop_back();
      for (std::size_t u = 0; u < sums_.size(); ++u) sums_[u] -= raw_[v][u];
    }
    dfs(i + 1);
  }

  const std::vector<std::vector<double>>& raw_;
  std::vector<LinkId> candidates_;
  std::vector<double> sums_;
  LinkSet current_;
  LinkSet best_;
};

LinkSet by_decreasing_decay(const LinkSystem& sys, const LinkSet& set) {
  LinkSet order = set;
  std::stable_sort(order.begin(), order.end(), [&](LinkId a, LinkId b) {
    if (sys.own_decay(a) != sys.own_decay(b)) return sys.own_decay(a) > sys.own_decay(b);
    return a < b;
  });
  return order;
}

// Places each link of `order` into the first class whose already-placed
// members contribute at most `cap` raw in-affectance to it.
std::optional<std::vector<LinkSet>> first_fit_by_in_affectance(const std::vector<std::vector<double>>& raw,
                                                              const LinkSet& order, std::size_t classes, double cap) {
  std::vector<LinkSet> out(classes);
  for (LinkId v : order) {
    bool placed = false;
    for (auto& cls : out) {
      double sum = 0.0;
      for (LinkId u : cls) sum += raw[u][v];
      if (sum <= cap + kSlack) {
        cls.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  return out;
}

// Backtracking assignment of links to at most `limit` q-feasible classes.
bool exhaustive_partition(const LinkSystem& sys, const LinkSet& order, std::size_t index, double q,
                          std::size_t limit, std::vector<LinkSet>& classes) {
  if (index == order.size()) return true;
  const LinkId v = order[index];
  for (std::size_t c = 0; c <= classes.size() && c < limit; ++c) {
    if (c == classes.size()) classes.emplace_back();
    classes[c].push_back(v);
    if (is_feasible(sys, classes[c], q) && exhaustive_partition(sys, order, index + 1, q, limit, classes)) return true;
    classes[c].pop_back();
    if (classes[c].empty()) {
      classes.pop_back();
      break;
    }
  }
  return false;
}

void drop_empty(std::vector<LinkSet>& classes) {
  classes.erase(std::remove_if(classes.begin(), classes.end(), [](const LinkSet& c) { return c.empty(); }),
                classes.end());
  for (auto& c : classes) std::sort(c.begin(), c.end());
}

const LinkSet& largest(const std::vector<LinkSet>& classes) {
  return *std::max_element(classes.begin(), classes.end(),
                           [](const LinkSet& a, const LinkSet& b) { return a.size() < b.size(); });
}

}  // namespace

const char* to_string(SeparationBasis basis) {
  return basis == SeparationBasis::node_quasi ? "node-quasi" : "link-decay";
}

CapacityResult capacity_uniform(const LinkSystem& sys, const QuasiMetric& quasi) {
  require_uniform(sys, "capacity_uniform");
  if (quasi.zeta() < 1.0) throw PreconditionError("capacity_uniform requires zeta >= 1");
  if (quasi.size() != sys.space().size()) throw PreconditionError("quasi-metric does not match the link system");
  CapacityResult result;
  result.basis = sys.link_gain_mode() ? SeparationBasis::link_decay : SeparationBasis::node_quasi;
  const double half_zeta = quasi.zeta() / 2.0;

  LinkSet& X = result.intermediate;
  for (LinkId v : sys.order()) {
    if (sys.is_drowned(v)) {
      result.drowned.push_back(v);
      continue;
    }
    if (!is_separated(sys, quasi, v, X, half_zeta)) continue;
    if (out_affectance(sys, v, X) + in_affectance(sys, X, v) <= 0.5) X.push_back(v);
  }
  for (LinkId v : X)
    if (in_affectance(sys, X, v) <= 1.0) result.selected.push_back(v);
  std::sort(result.selected.begin(), result.selected.end());
  std::sort(X.begin(), X.end());
  std::sort(result.drowned.begin(), result.drowned.end());
  return result;
}

OracleResult capacity_oracle(const LinkSystem& sys, std::size_t max_n) {
  if (sys.size() > max_n) {
    std::ostringstream msg;
    msg << "capacity_oracle: " << sys.size() << " links exceed the exhaustive limit of " << max_n
        << "; sample a subset of links instead";
    throw PreconditionError(msg.str());
  }
  const auto raw = raw_affectance_matrix(sys);
  std::vector<LinkId> candidates;
  for (LinkId v = 0; v < sys.size(); ++v)
    if (!sys.is_drowned(v)) candidates.push_back(v);
  return OracleSearch(raw, std::move(candidates)).run();
}

CapacityResult capacity_with_oracle(const LinkSystem& sys, const QuasiMetric& quasi, std::size_t oracle_limit) {
  auto result = capacity_uniform(sys, quasi);
  if (sys.size() <= oracle_limit) {
    const auto oracle = capacity_oracle(sys, oracle_limit);
    result.opt = oracle.size;
    result.opt_witness = oracle.witness;
    if (!result.selected.empty())
      result.ratio = static_cast<double>(oracle.size) / static_cast<double>(result.selected.size());
  }
  return result;
}

Partition signal_strengthen(const LinkSystem& sys, const LinkSet& set, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw PreconditionError("signal_strengthen: p and q must be positive");
  if (q < p) throw PreconditionError("signal_strengthen: q must be at least p");
  if (!is_feasible(sys, set, p)) throw PreconditionError("signal_strengthen: input set is not p-feasible");
  Partition part;
  part.kind = CertificateKind::feasibility;
  part.level = q;
  const auto per_phase = static_cast<std::size_t>(std::ceil(2.0 * q / p));
  part.bound = per_phase * per_phase;

  if (set.empty()) {
    part.verified = true;
    return part;
  }
  if (is_feasible(sys, set, q)) {
    part.classes.push_back(set);
    std::sort(part.classes.front().begin(), part.classes.front().end());
    part.verified = true;
    return part;
  }

  const auto raw = raw_affectance_matrix(sys);
  const double cap = 1.0 / (2.0 * q);
  std::vector<LinkSet> classes;
  bool ok = false;
  if (auto phase1 = first_fit_by_in_affectance(raw, by_decreasing_decay(sys, set), per_phase, cap)) {
    ok = true;
    for (auto& cls : *phase1) {
      if (cls.empty()) continue;
      LinkSet reversed(cls.rbegin(), cls.rend());
      auto phase2 = first_fit_by_in_affectance(raw, reversed, per_phase, cap);
      if (!phase2) {
        ok = false;
        break;
      }
      for (auto& sub : *phase2) classes.push_back(std::move(sub));
    }
  }
  if (!ok) {
    classes.clear();
    part.used_fallback = true;
    if (set.size() > 20 || !exhaustive_partition(sys, by_decreasing_decay(sys, set), 0, q, part.bound, classes)) {
      throw Error("signal_strengthen: no partition within the class bound; input may violate the preconditions");
    }
  }
  drop_empty(classes);
  part.classes = std::move(classes);
  part.verified = std::all_of(part.classes.begin(), part.classes.end(),
                              [&](const LinkSet& c) { return is_feasible(sys, c, q); });
  if (!part.verified) throw Error("signal_strengthen: produced a class that fails q-feasibility");
  return part;
}

Partition separation_strengthen(const LinkSystem& sys, const QuasiMetric& quasi, const LinkSet& set, double tau,
                                double eta) {
  if (!(tau > 0.0) || !(eta > tau)) throw PreconditionError("separation_strengthen: need 0 < tau < eta");
  if (auto check = check_separation(sys, quasi, set, tau); !check.separated) {
    std::ostringstream msg;
    msg << "separation_strengthen: input is not tau-separated, witness (" << check.witness->first << ","
        << check.witness->second << ")";
    throw PreconditionError(msg.str());
  }
  Partition part;
  part.kind = CertificateKind::separation;
  part.level = eta;

  LinkSet order = set;
  std::stable_sort(order.begin(), order.end(), [&](LinkId a, LinkId b) {
    const double la = link_length(sys, quasi, a);
    const double lb = link_length(sys, quasi, b);
    if (la != lb) return la > lb;
    return a < b;
  });
  auto conflict = [&](LinkId v, LinkId w) {
    const double d = link_distance(sys, quasi, v, w);
    return d < eta * link_length(sys, quasi, v) || d < eta * link_length(sys, quasi, w);
  };

  std::vector<LinkSet> classes;
  std::size_t max_prior = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const LinkId v = order[i];
    std::size_t prior = 0;
    for (std::size_t j = 0; j < i; ++j) prior += conflict(v, order[j]) ? 1 : 0;
    max_prior = std::max(max_prior, prior);
    bool placed = false;
    for (auto& cls : classes) {
      if (std::none_of(cls.begin(), cls.end(), [&](LinkId u) { return conflict(v, u); })) {
        cls.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({v});
  }
  part.bound = order.empty() ? 0 : max_prior + 1;
  drop_empty(classes);
  part.classes = std::move(classes);
  part.verified = std::all_of(part.classes.begin(), part.classes.end(),
                              [&](const LinkSet& c) { return check_separation(sys, quasi, c, eta).separated; });
  if (!part.verified) throw Error("separation_strengthen: produced a class that fails eta-separation");
  return part;
}

const char* to_string(OneZetaSepStatus status) {
  switch (status) {
    case OneZetaSepStatus::ok: return "ok";
    case OneZetaSepStatus::violation: return "violation";
    case OneZetaSepStatus::inapplicable: return "inapplicable";
  }
  return "unknown";
}

OneZetaSepCheck check_onezetasep(const LinkSystem& sys, const QuasiMetric& quasi, const LinkSet& set) {
  require_uniform(sys, "check_onezetasep");
  if (quasi.zeta() < 1.0) throw PreconditionError("check_onezetasep requires zeta >= 1");
  OneZetaSepCheck check;
  const double K = std::numbers::e * std::numbers::e / sys.params().beta;
  if (!is_feasible(sys, set, K)) {
    check.status = OneZetaSepStatus::inapplicable;
    return check;
  }
  const auto sep = check_separation(sys, quasi, set, 1.0 / quasi.zeta());
  if (!sep.separated) {
    check.status = OneZetaSepStatus::violation;
    check.witness = sep.witness;
  }
  return check;
}

AmicableResult amicable_subset(const LinkSystem& sys, const QuasiMetric& quasi, const LinkSet& set) {
  require_uniform(sys, "amicable_subset");
  if (!is_feasible(sys, set)) throw PreconditionError("amicable_subset: input set is not feasible");
  AmicableResult result;
  if (set.empty()) return result;

  const double K = std::numbers::e * std::numbers::e / sys.params().beta;
  const auto signal = signal_strengthen(sys, set, 1.0, std::max(1.0, K));
  result.signal_classes = signal.classes.size();
  result.strengthened = largest(signal.classes);

  const double zeta = quasi.zeta();
  if (result.strengthened.size() > 1 && zeta > 1.0 / zeta) {
    const auto sep = separation_strengthen(sys, quasi, result.strengthened, 1.0 / zeta, zeta);
    result.separation_classes = sep.classes.size();
    result.separated = largest(sep.classes);
  } else {
    result.separation_classes = 1;
    result.separated = result.strengthened;
  }

  for (LinkId v : result.separated)
    if (out_affectance(sys, v, result.separated) <= 2.0) result.subset.push_back(v);

  for (LinkId v = 0; v < sys.size(); ++v)
    result.max_out_affectance = std::max(result.max_out_affectance, out_affectance(sys, v, result.subset));
  result.shrink = result.subset.empty() ? std::numeric_limits<double>::infinity()
                                        : static_cast<double>(set.size()) / static_cast<double>(result.subset.size());
  return result;
}

}  // namespace decaynet

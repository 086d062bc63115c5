#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "decaynet/decay_space.hpp"

namespace decaynet {

using LinkId = std::size_t;
using LinkSet = std::vector<LinkId>;

struct Link {
  NodeId sender;
  NodeId receiver;
  friend bool operator==(const Link&, const Link&) = default;
};

struct SinrParams {
  double beta = 1.0;   ///< SINR threshold, >= 1
  double noise = 0.0;  ///< ambient noise N, >= 0
};

class PowerAssignment {
 public:
  static PowerAssignment uniform(double power);
  static PowerAssignment explicit_powers(std::vector<double> powers);

  bool is_uniform() const noexcept { return uniform_; }
  /// Uniform level; only meaningful when is_uniform().
  double level() const noexcept { return level_; }
  const std::vector<double>& powers() const noexcept { return powers_; }
  double operator[](LinkId v) const { return uniform_ ? level_ : powers_.at(v); }

 private:
  bool uniform_ = true;
  double level_ = 1.0;
  std::vector<double> powers_;
};

/// Links over a decay space with SINR parameters and a power assignment.
///
/// In link-gain mode the space is the n x n link matrix itself and link i is
/// the pseudo-pair (i, i), so decay(w, v) = f[w][v] in both modes.
class LinkSystem {
 public:
  LinkSystem(DecaySpace space, std::vector<Link> links, SinrParams params, PowerAssignment power);

  /// One link per row of a link-gain matrix.
  static LinkSystem from_link_gain(DecaySpace link_matrix, SinrParams params, PowerAssignment power);

  const DecaySpace& space() const noexcept { return space_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  const Link& link(LinkId v) const { return links_.at(v); }
  std::size_t size() const noexcept { return links_.size(); }
  const SinrParams& params() const noexcept { return params_; }
  const PowerAssignment& power() const noexcept { return power_; }
  double power(LinkId v) const { return power_[v]; }
  bool link_gain_mode() const noexcept { return space_.mode() == SpaceMode::link_gain; }

  /// f(s_w, r_v).
  double decay(LinkId w, LinkId v) const { return space_(links_[w].sender, links_[v].receiver); }
  double own_decay(LinkId v) const { return decay(v, v); }
  /// G_wv = 1 / f(s_w, r_v).
  double gain(LinkId w, LinkId v) const { return 1.0 / decay(w, v); }

  /// P_v G_vv <= beta N.
  bool is_drowned(LinkId v) const;
  /// c_v = beta / (1 - beta N / (P_v G_vv)); throws DrownedLinkError.
  double noise_constant(LinkId v) const;

  /// Links sorted by increasing own decay, ties by index.
  const std::vector<LinkId>& order() const noexcept { return order_; }

  /// The same system with a different power assignment.
  LinkSystem with_power(PowerAssignment power) const;
  /// Restriction to a subset of links (renumbered in the given order).
  LinkSystem restricted(std::span<const LinkId> subset) const;

  LinkSet all_links() const;

 private:
  DecaySpace space_;
  std::vector<Link> links_;
  SinrParams params_;
  PowerAssignment power_;
  std::vector<LinkId> order_;
};

/// a_w(v) = min(1, c_v (P_w/P_v)(f_vv/f_wv)); 0 when w == v.
double affectance(const LinkSystem& sys, LinkId w, LinkId v);
/// Same without the cap at 1.
double raw_affectance(const LinkSystem& sys, LinkId w, LinkId v);

enum class Direction { in, out };

/// in: a_S(v) = sum_w a_w(v); out: a_v(S) = sum_w a_v(w). Capped terms.
double aggregate_affectance(const LinkSystem& sys, std::span<const LinkId> set, LinkId v, Direction dir);
double in_affectance(const LinkSystem& sys, std::span<const LinkId> set, LinkId v);
double out_affectance(const LinkSystem& sys, LinkId v, std::span<const LinkId> set);

struct FeasibilityResult {
  bool feasible = true;
  std::optional<LinkId> worst;  ///< member with the largest in-affectance
  double worst_affectance = 0.0;
  bool drowned = false;  ///< worst is drowned by noise
};

/// K-feasibility: every member has in-affectance at most 1/K. Terms are
/// summed uncapped so that the test agrees exactly with the SINR threshold
/// (a capped term would let a single overwhelming interferer pass).
FeasibilityResult check_feasible(const LinkSystem& sys, std::span<const LinkId> set, double K = 1.0);
bool is_feasible(const LinkSystem& sys, std::span<const LinkId> set, double K = 1.0);

/// SINR_v when exactly the links of `set` transmit (v's own term excluded).
double sinr(const LinkSystem& sys, std::span<const LinkId> set, LinkId v);

/// Link distance: min(d(s_v,r_w), d(s_w,r_v), d(s_v,s_w), d(r_v,r_w)).
/// Over link-gain systems only the two cross terms exist.
double link_distance(const LinkSystem& sys, const QuasiMetric& quasi, LinkId v, LinkId w);
/// d_vv = d(s_v, r_v).
double link_length(const LinkSystem& sys, const QuasiMetric& quasi, LinkId v);

/// l_v is eta-separated from every w in L (w == v skipped).
bool is_separated(const LinkSystem& sys, const QuasiMetric& quasi, LinkId v, std::span<const LinkId> others,
                  double eta);

struct SeparationCheck {
  bool separated = true;
  std::optional<std::pair<LinkId, LinkId>> witness;  ///< (v, w) with d(l_v,l_w) < eta d_vv
};

/// Every member of `set` is eta-separated from the rest.
SeparationCheck check_separation(const LinkSystem& sys, const QuasiMetric& quasi, std::span<const LinkId> set,
                                 double eta);

struct MonotoneCheck {
  bool monotone = true;
  std::optional<std::pair<LinkId, LinkId>> witness;  ///< (v, w), v before w in the order
};

MonotoneCheck is_monotone_power(const LinkSystem& sys);

struct PairwiseCertificate {
  bool infeasible = false;
  bool conservative = false;  ///< nonzero noise: sufficient but not necessary
  double product = 0.0;       ///< beta^2 f_vv f_ww / (f_vw f_wv)
};

/// No power assignment can make {v, w} feasible when the product exceeds 1.
PairwiseCertificate pairwise_power_infeasible(const LinkSystem& sys, LinkId v, LinkId w);

/// sum_{y in senders} P / f(y, target).
double interference_at(const DecaySpace& space, std::span<const NodeId> senders, NodeId target, double power);
/// Uniform-power variant using the system's power level.
double interference_at(const LinkSystem& sys, std::span<const NodeId> senders, NodeId target);

}  // namespace decaynet

#include "decaynet/link_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace decaynet {

namespace {

// Absolute slack on feasibility thresholds; absorbs summation rounding only.
constexpr double kFeasibilitySlack = 1e-12;

}  // namespace

PowerAssignment PowerAssignment::uniform(double power) {
  if (!(power > 0.0) || !std::isfinite(power)) throw ValidationError("uniform power must be positive");
  PowerAssignment p;
  p.uniform_ = true;
  p.level_ = power;
  return p;
}

PowerAssignment PowerAssignment::explicit_powers(std::vector<double> powers) {
  for (std::size_t i = 0; i < powers.size(); ++i)
    if (!(powers[i] > 0.0) || !std::isfinite(powers[i]))
      throw ValidationError("power of link " + std::to_string(i) + " must be positive");
  PowerAssignment p;
  p.uniform_ = false;
  p.powers_ = std::move(powers);
  return p;
}

LinkSystem::LinkSystem(DecaySpace space, std::vector<Link> links, SinrParams params, PowerAssignment power)
    : space_(std::move(space)), links_(std::move(links)), params_(params), power_(std::move(power)) {
  require_valid(space_);
  if (!(params_.beta >= 1.0)) throw ValidationError("beta must be >= 1");
  if (!(params_.noise >= 0.0)) throw ValidationError("noise must be >= 0");
  if (!power_.is_uniform() && power_.powers().size() != links_.size())
    throw StructuralError("explicit power vector length does not match link count");
  const std::size_t n = space_.size();
  for (std::size_t v = 0; v < links_.size(); ++v) {
    const auto& l = links_[v];
    if (l.sender >= n || l.receiver >= n) throw StructuralError("link " + std::to_string(v) + " references unknown node");
    if (space_.mode() == SpaceMode::node_space && l.sender == l.receiver)
      throw ValidationError("link " + std::to_string(v) + " has identical sender and receiver");
    if (!(own_decay(v) > 0.0)) throw ValidationError("link " + std::to_string(v) + " has non-positive own decay");
  }
  order_.resize(links_.size());
  std::iota(order_.begin(), order_.end(), LinkId{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [this](LinkId a, LinkId b) { return own_decay(a) < own_decay(b); });
}

LinkSystem LinkSystem::from_link_gain(DecaySpace link_matrix, SinrParams params, PowerAssignment power) {
  if (link_matrix.mode() != SpaceMode::link_gain) throw ValidationError("from_link_gain expects a link-gain space");
  std::vector<Link> links(link_matrix.size());
  for (std::size_t i = 0; i < links.size(); ++i) links[i] = {i, i};
  return LinkSystem(std::move(link_matrix), std::move(links), params, std::move(power));
}

bool LinkSystem::is_drowned(LinkId v) const {
  return power(v) * gain(v, v) <= params_.beta * params_.noise;
}

double LinkSystem::noise_constant(LinkId v) const {
  const double signal = power(v) * gain(v, v);
  if (signal <= params_.beta * params_.noise) throw DrownedLinkError(v);
  return params_.beta / (1.0 - params_.beta * params_.noise / signal);
}

LinkSystem LinkSystem::with_power(PowerAssignment power) const {
  return LinkSystem(space_, links_, params_, std::move(power));
}

LinkSystem LinkSystem::restricted(std::span<const LinkId> subset) const {
  if (link_gain_mode()) {
    SquareMatrix m(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = 0; j < subset.size(); ++j) m(i, j) = decay(subset[i], subset[j]);
    std::vector<double> powers;
    for (LinkId v : subset) powers.push_back(power(v));
    auto p = power_.is_uniform() ? power_ : PowerAssignment::explicit_powers(std::move(powers));
    return from_link_gain(DecaySpace(std::move(m), SpaceMode::link_gain), params_, std::move(p));
  }
  std::vector<Link> links;
  std::vector<double> powers;
  for (LinkId v : subset) {
    links.push_back(link(v));
    powers.push_back(power(v));
  }
  auto p = power_.is_uniform() ? power_ : PowerAssignment::explicit_powers(std::move(powers));
  return LinkSystem(space_, std::move(links), params_, std::move(p));
}

LinkSet LinkSystem::all_links() const {
  LinkSet all(links_.size());
  std::iota(all.begin(), all.end(), LinkId{0});
  return all;
}

double raw_affectance(const LinkSystem& sys, LinkId w, LinkId v) {
  if (w == v) return 0.0;
  const double c = sys.noise_constant(v);
  return c * (sys.power(w) / sys.power(v)) * (sys.own_decay(v) / sys.decay(w, v));
}

double affectance(const LinkSystem& sys, LinkId w, LinkId v) {
  return std::min(1.0, raw_affectance(sys, w, v));
}

double aggregate_affectance(const LinkSystem& sys, std::span<const LinkId> set, LinkId v, Direction dir) {
  double sum = 0.0;
  for (LinkId w : set) sum += dir == Direction::in ? affectance(sys, w, v) : affectance(sys, v, w);
  return sum;
}

double in_affectance(const LinkSystem& sys, std::span<const LinkId> set, LinkId v) {
  return aggregate_affectance(sys, set, v, Direction::in);
}

double out_affectance(const LinkSystem& sys, LinkId v, std::span<const LinkId> set) {
  return aggregate_affectance(sys, set, v, Direction::out);
}

FeasibilityResult check_feasible(const LinkSystem& sys, std::span<const LinkId> set, double K) {
  if (!(K > 0.0)) throw PreconditionError("feasibility level K must be positive");
  FeasibilityResult result;
  const double threshold = 1.0 / K + kFeasibilitySlack;
  double worst = -1.0;
  for (LinkId v : set) {
    if (sys.is_drowned(v)) {
      result.feasible = false;
      result.worst = v;
      result.worst_affectance = std::numeric_limits<double>::infinity();
      result.drowned = true;
      return result;
    }
    double sum = 0.0;
    for (LinkId w : set) sum += raw_affectance(sys, w, v);
    if (sum > worst) {
      worst = sum;
      result.worst = v;
    }
  }
  result.worst_affectance = std::max(worst, 0.0);
  result.feasible = worst <= threshold;
  return result;
}

bool is_feasible(const LinkSystem& sys, std::span<const LinkId> set, double K) {
  return check_feasible(sys, set, K).feasible;
}

double sinr(const LinkSystem& sys, std::span<const LinkId> set, LinkId v) {
  double interference = sys.params().noise;
  for (LinkId w : set)
    if (w != v) interference += sys.power(w) * sys.gain(w, v);
  return sys.power(v) * sys.gain(v, v) / interference;
}

double link_distance(const LinkSystem& sys, const QuasiMetric& quasi, LinkId v, LinkId w) {
  const Link& a = sys.link(v);
  const Link& b = sys.link(w);
  if (sys.link_gain_mode()) {
    if (v == w) return 0.0;
    return std::min(quasi(a.sender, b.receiver), quasi(b.sender, a.receiver));
  }
  return std::min({quasi(a.sender, b.receiver), quasi(b.sender, a.receiver), quasi(a.sender, b.sender),
                   quasi(a.receiver, b.receiver)});
}

double link_length(const LinkSystem& sys, const QuasiMetric& quasi, LinkId v) {
  return quasi(sys.link(v).sender, sys.link(v).receiver);
}

bool is_separated(const LinkSystem& sys, const QuasiMetric& quasi, LinkId v, std::span<const LinkId> others,
                  double eta) {
  const double need = eta * link_length(sys, quasi, v);
  return std::all_of(others.begin(), others.end(),
                     [&](LinkId w) { return w == v || link_distance(sys, quasi, v, w) >= need; });
}

SeparationCheck check_separation(const LinkSystem& sys, const QuasiMetric& quasi, std::span<const LinkId> set,
                                 double eta) {
  SeparationCheck check;
  for (LinkId v : set) {
    const double need = eta * link_length(sys, quasi, v);
    for (LinkId w : set) {
      if (w == v) continue;
      if (link_distance(sys, quasi, v, w) < need) {
        check.separated = false;
        check.witness = std::make_pair(v, w);
        return check;
      }
    }
  }
  return check;
}

MonotoneCheck is_monotone_power(const LinkSystem& sys) {
  MonotoneCheck check;
  const auto& order = sys.order();
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const LinkId v = order[i];
      const LinkId w = order[j];
      const bool grows = sys.power(v) <= sys.power(w);
      const bool fades = sys.power(w) / sys.own_decay(w) <= sys.power(v) / sys.own_decay(v);
      if (!grows || !fades) {
        check.monotone = false;
        check.witness = std::make_pair(v, w);
        return check;
      }
    }
  }
  return check;
}

PairwiseCertificate pairwise_power_infeasible(const LinkSystem& sys, LinkId v, LinkId w) {
  PairwiseCertificate cert;
  if (v == w) return cert;
  const double beta = sys.params().beta;
  cert.product = beta * beta * (sys.own_decay(v) * sys.own_decay(w)) / (sys.decay(v, w) * sys.decay(w, v));
  cert.infeasible = cert.product > 1.0;
  cert.conservative = sys.params().noise > 0.0;
  return cert;
}

double interference_at(const DecaySpace& space, std::span<const NodeId> senders, NodeId target, double power) {
  double total = 0.0;
  for (NodeId y : senders) {
    if (y == target) throw PreconditionError("interference_at: target is among the senders");
    total += power / space(y, target);
  }
  return total;
}

double interference_at(const LinkSystem& sys, std::span<const NodeId> senders, NodeId target) {
  if (!sys.power().is_uniform()) throw PreconditionError("interference_at requires uniform power");
  return interference_at(sys.space(), senders, target, sys.power().level());
}

}  // namespace decaynet

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decaynet/link_system.hpp"

namespace decaynet {

/// How link distances are obtained for the separation test.
enum class SeparationBasis {
  node_quasi,  ///< all four node-pair quasi-distances
  link_decay,  ///< link-gain systems: only the cross decays f(s_v,r_w), f(s_w,r_v)
};

const char* to_string(SeparationBasis basis);

struct CapacityResult {
  LinkSet selected;      ///< S = {l_v in X : a_X(v) <= 1}
  LinkSet intermediate;  ///< X
  LinkSet drowned;       ///< links skipped because they cannot beat the noise
  std::optional<std::size_t> opt;
  LinkSet opt_witness;
  std::optional<double> ratio;  ///< opt / |S|
  SeparationBasis basis = SeparationBasis::node_quasi;
};

/// Greedy uniform-power capacity approximation. Links are scanned by
/// increasing own decay; l_v joins X when it is (zeta/2)-separated from X and
/// a_v(X) + a_X(v) <= 1/2. The exponent is taken from `quasi`.
CapacityResult capacity_uniform(const LinkSystem& sys, const QuasiMetric& quasi);

struct OracleResult {
  std::size_t size = 0;
  LinkSet witness;  ///< lexicographically least maximum feasible set
};

inline constexpr std::size_t kDefaultOracleLimit = 20;

/// Exhaustive maximum feasible subset (branch and bound over index order,
/// pruned by monotonicity of infeasibility). Throws PreconditionError above
/// `max_n` links.
OracleResult capacity_oracle(const LinkSystem& sys, std::size_t max_n = kDefaultOracleLimit);

/// Runs capacity_uniform and, when the system is small enough, the oracle.
CapacityResult capacity_with_oracle(const LinkSystem& sys, const QuasiMetric& quasi,
                                    std::size_t oracle_limit = kDefaultOracleLimit);

enum class CertificateKind { feasibility, separation };

struct Partition {
  CertificateKind kind = CertificateKind::feasibility;
  double level = 1.0;  ///< K for feasibility classes, eta for separation classes
  std::vector<LinkSet> classes;
  std::size_t bound = 0;  ///< class-count bound guaranteed by the construction
  bool verified = false;  ///< every class re-checked against its certificate
  bool used_fallback = false;
};

/// Splits a p-feasible set into at most ceil(2q/p)^2 q-feasible classes.
/// Two first-fit passes: the first (decreasing own decay) caps in-affectance
/// from earlier links of a class at 1/(2q), the second (reverse order inside
/// each class) caps in-affectance from later links at 1/(2q).
Partition signal_strengthen(const LinkSystem& sys, const LinkSet& set, double p, double q);

/// Splits a tau-separated set into eta-separated classes by first-fit
/// coloring of the separation conflict graph in order of non-increasing link
/// length. `bound` is one more than the largest number of already-colored
/// neighbours any link had when it was colored.
Partition separation_strengthen(const LinkSystem& sys, const QuasiMetric& quasi, const LinkSet& set, double tau,
                                double eta);

enum class OneZetaSepStatus { ok, violation, inapplicable };

const char* to_string(OneZetaSepStatus status);

struct OneZetaSepCheck {
  OneZetaSepStatus status = OneZetaSepStatus::ok;
  std::optional<std::pair<LinkId, LinkId>> witness;
};

/// If `set` is (e^2/beta)-feasible under uniform power, checks that it is
/// (1/zeta)-separated, zeta taken from `quasi`.
OneZetaSepCheck check_onezetasep(const LinkSystem& sys, const QuasiMetric& quasi, const LinkSet& set);

struct AmicableResult {
  LinkSet subset;                    ///< S'
  LinkSet strengthened;              ///< largest (e^2/beta)-feasible class
  LinkSet separated;                 ///< largest zeta-separated class, S-hat
  std::size_t signal_classes = 0;
  std::size_t separation_classes = 0;
  double max_out_affectance = 0.0;   ///< max over every link of a_v(S')
  double shrink = 0.0;               ///< |S| / |S'|
};

/// Feasible set -> large subset with bounded out-affectance from every link.
AmicableResult amicable_subset(const LinkSystem& sys, const QuasiMetric& quasi, const LinkSet& set);

}  // namespace decaynet

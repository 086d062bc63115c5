#include "decaynet/decay_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace decaynet {

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      std::ostringstream msg;
      msg << "matrix is not square: row " << i << " has " << rows[i].size() << " entries, expected " << n;
      throw StructuralError(msg.str());
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> SquareMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

const char* to_string(SpaceMode mode) {
  return mode == SpaceMode::node_space ? "node-space" : "link-gain";
}

SpaceMode space_mode_from_string(const std::string& name) {
  if (name == "node-space") return SpaceMode::node_space;
  if (name == "link-gain" || name == "link-gain-matrix") return SpaceMode::link_gain;
  throw StructuralError("unknown space mode '" + name + "'");
}

DecaySpace::DecaySpace(SquareMatrix decay, SpaceMode mode, std::vector<std::string> labels)
    : decay_(std::move(decay)), mode_(mode), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != decay_.size())
    throw StructuralError("label count does not match node count");
}

bool DecaySpace::is_symmetric(double rel_tol) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = decay_(i, j);
      const double b = decay_(j, i);
      if (std::abs(a - b) > rel_tol * std::max(std::abs(a), std::abs(b))) return false;
    }
  }
  return true;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::non_negativity: return "non-negativity";
    case ViolationKind::indiscernibles: return "indiscernibles";
    case ViolationKind::nonzero_diagonal: return "nonzero-diagonal";
    case ViolationKind::nonpositive_diagonal: return "nonpositive-diagonal";
  }
  return "unknown";
}

ValidationResult validate_space(const DecaySpace& space) {
  ValidationResult result;
  const std::size_t n = space.size();
  for (NodeId p = 0; p < n; ++p) {
    for (NodeId q = 0; q < n; ++q) {
      const double v = space(p, q);
      if (!(v >= 0.0) || std::isnan(v)) {
        result.violations.push_back({ViolationKind::non_negativity, p, q, v});
        continue;
      }
      if (space.mode() == SpaceMode::node_space) {
        if (p == q && v != 0.0) result.violations.push_back({ViolationKind::nonzero_diagonal, p, q, v});
        if (p != q && v == 0.0) result.violations.push_back({ViolationKind::indiscernibles, p, q, v});
      } else if (p == q && v == 0.0) {
        result.violations.push_back({ViolationKind::nonpositive_diagonal, p, q, v});
      }
    }
  }
  return result;
}

void require_valid(const DecaySpace& space) {
  const auto result = validate_space(space);
  if (result.ok()) return;
  const auto& v = result.violations.front();
  std::ostringstream msg;
  msg << "decay space violates " << to_string(v.kind) << " at (" << v.row << "," << v.col << ") value " << v.value;
  if (result.violations.size() > 1) msg << " (+" << result.violations.size() - 1 << " more)";
  throw ValidationError(msg.str());
}

double triple_critical_zeta(double direct, double first, double second, double tol) {
  if (direct <= std::max(first, second)) return 0.0;
  if (first <= 0.0 || second <= 0.0) return std::numeric_limits<double>::infinity();
  const double a = first / direct;
  const double b = second / direct;
  // a^t + b^t is strictly decreasing in t; feasible t form (0, t*].
  auto holds = [&](double t) { return std::pow(a, t) + std::pow(b, t) >= 1.0; };
  double lo = 0.0;
  double hi = 1.0;
  while (holds(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    if (lo > 0.0 && 1.0 / lo - 1.0 / hi <= tol) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (holds(mid) ? lo : hi) = mid;
  }
  return 1.0 / lo;
}

ZetaResult compute_zeta(const DecaySpace& space, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("compute_zeta: tol must be positive");
  require_valid(space);
  ZetaResult result;
  const std::size_t n = space.size();
  if (n < 3) return result;

  double best = 0.0;
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (y == x) continue;
      const double direct = space(x, y);
      for (NodeId z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const double first = space(x, z);
        const double second = space(z, y);
        if (direct <= std::max(first, second)) continue;
        if (best > 0.0 && first > 0.0 && second > 0.0) {
          const double t = 1.0 / best;
          if (std::pow(first / direct, t) + std::pow(second / direct, t) >= 1.0) continue;
        }
        const double crit = triple_critical_zeta(direct, first, second, tol);
        if (crit > best) {
          best = crit;
          result.witness = Triple{x, y, z};
        }
      }
    }
  }
  result.zeta_raw = best;
  result.zeta = std::max(1.0, best);
  return result;
}

PhiResult compute_phi(const DecaySpace& space) {
  require_valid(space);
  PhiResult result;
  const std::size_t n = space.size();
  if (n < 3) {
    result.phi = -std::numeric_limits<double>::infinity();
    return result;
  }
  result.has_triples = true;
  double best = -1.0;
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = 0; y < n; ++y) {
      if (y == x) continue;
      for (NodeId z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const double ratio = space(x, z) / (space(x, y) + space(y, z));
        if (ratio > best) {
          best = ratio;
          result.witness = Triple{x, z, y};
        }
      }
    }
  }
  result.phi_mult = best;
  result.phi = std::log2(best);
  return result;
}

double zeta_upper_bound(const DecaySpace& space) {
  const std::size_t n = space.size();
  if (n < 2) throw PreconditionError("zeta_upper_bound: need at least one off-diagonal entry");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (NodeId p = 0; p < n; ++p) {
    for (NodeId q = 0; q < n; ++q) {
      if (p == q) continue;
      lo = std::min(lo, space(p, q));
      hi = std::max(hi, space(p, q));
    }
  }
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(hi / lo);
}

MetricityReport analyze_metricity(const DecaySpace& space, double tol) {
  MetricityReport report;
  const auto zeta = compute_zeta(space, tol);
  report.zeta = zeta.zeta;
  report.zeta_raw = zeta.zeta_raw;
  report.witness_zeta = zeta.witness;
  const auto phi = compute_phi(space);
  report.phi_mult = phi.phi_mult;
  report.phi = phi.phi;
  report.witness_phi = phi.witness;
  report.zeta0 = space.size() >= 2 ? zeta_upper_bound(space) : 0.0;
  return report;
}

bool QuasiMetric::is_symmetric() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d_(i, j) != d_(j, i)) return false;
  return true;
}

namespace {

std::string describe_violation(const Triple& t, double excess) {
  std::ostringstream msg;
  msg << "triangle inequality fails at (from=" << t.from << ", to=" << t.to << ", via=" << t.via
      << ") by " << excess;
  return msg.str();
}

}  // namespace

TriangleViolationError::TriangleViolationError(Triple witness, double excess)
    : Error(describe_violation(witness, excess)), witness_(witness), excess_(excess) {}

std::optional<Triple> find_triangle_violation(const SquareMatrix& d, double tol) {
  const std::size_t n = d.size();
  for (NodeId x = 0; x < n; ++x)
    for (NodeId y = 0; y < n; ++y) {
      if (y == x) continue;
      for (NodeId z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (d(x, y) > d(x, z) + d(z, y) + tol * std::max(1.0, d(x, y))) return Triple{x, y, z};
      }
    }
  return std::nullopt;
}

QuasiMetric quasi_distances(const DecaySpace& space, double zeta, double tol) {
  if (!(zeta > 0.0)) throw PreconditionError("quasi_distances: zeta must be positive");
  require_valid(space);
  const std::size_t n = space.size();
  SquareMatrix d(n);
  for (NodeId p = 0; p < n; ++p)
    for (NodeId q = 0; q < n; ++q) d(p, q) = std::pow(space(p, q), 1.0 / zeta);
  if (auto bad = find_triangle_violation(d, tol)) {
    const double excess = d(bad->from, bad->to) - d(bad->from, bad->via) - d(bad->via, bad->to);
    throw TriangleViolationError(*bad, excess);
  }
  return QuasiMetric(std::move(d), zeta, space.mode());
}

QuasiMetric metric_quasi_distances(const DecaySpace& space, double tol) {
  return quasi_distances(space, compute_zeta(space, tol).zeta, std::max(10.0 * tol, 1e-9));
}

}  // namespace decaynet

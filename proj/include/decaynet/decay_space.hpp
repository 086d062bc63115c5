#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "decaynet/errors.hpp"

namespace decaynet {

using NodeId = std::size_t;

/// Dense square matrix of doubles, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  /// Throws StructuralError unless `rows` is square.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

enum class SpaceMode {
  node_space,  ///< f over nodes; zero diagonal, positive off-diagonal
  link_gain,   ///< f[w][v] = decay from the sender of link w to the receiver of link v
};

const char* to_string(SpaceMode mode);
SpaceMode space_mode_from_string(const std::string& name);

/// A node set together with its decay matrix. Axioms are not enforced on
/// construction; call validate_space().
class DecaySpace {
 public:
  DecaySpace() = default;
  explicit DecaySpace(SquareMatrix decay, SpaceMode mode = SpaceMode::node_space,
                      std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return decay_.size(); }
  SpaceMode mode() const noexcept { return mode_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const SquareMatrix& matrix() const noexcept { return decay_; }

  double operator()(NodeId p, NodeId q) const { return decay_(p, q); }

  /// Exact symmetry unless `rel_tol` > 0.
  bool is_symmetric(double rel_tol = 0.0) const;

 private:
  SquareMatrix decay_;
  SpaceMode mode_ = SpaceMode::node_space;
  std::vector<std::string> labels_;
};

enum class ViolationKind { non_negativity, indiscernibles, nonzero_diagonal, nonpositive_diagonal };

const char* to_string(ViolationKind kind);

struct AxiomViolation {
  ViolationKind kind;
  NodeId row;
  NodeId col;
  double value;
};

struct ValidationResult {
  std::vector<AxiomViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationResult validate_space(const DecaySpace& space);

/// Throws ValidationError describing the first violation.
void require_valid(const DecaySpace& space);

/// Ordered node triple. For metricity, the constraint is on the pair
/// (from, to) routed through `via`.
struct Triple {
  NodeId from;
  NodeId to;
  NodeId via;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct ZetaResult {
  double zeta_raw = 1.0;  ///< 0 when no triple constrains the exponent
  double zeta = 1.0;      ///< max(1, zeta_raw)
  std::optional<Triple> witness;
};

inline constexpr double kDefaultZetaTol = 1e-9;

/// Smallest zeta with f(x,y)^(1/zeta) <= f(x,z)^(1/zeta) + f(z,y)^(1/zeta)
/// over all ordered triples of distinct nodes, to absolute tolerance `tol`.
ZetaResult compute_zeta(const DecaySpace& space, double tol = kDefaultZetaTol);

/// Critical exponent of a single triple with decays f_xy (direct),
/// f_xz and f_zy (detour). Returns 0 when the triple holds for every zeta > 0.
double triple_critical_zeta(double direct, double first, double second, double tol = kDefaultZetaTol);

struct PhiResult {
  double phi_mult = 0.0;
  double phi = 0.0;  ///< lg(phi_mult); -inf when there are no triples
  bool has_triples = false;
  std::optional<Triple> witness;  ///< f(from,to) <= phi_mult (f(from,via) + f(via,to))
};

PhiResult compute_phi(const DecaySpace& space);

/// lg(max off-diagonal / min off-diagonal).
double zeta_upper_bound(const DecaySpace& space);

struct MetricityReport {
  double zeta = 1.0;
  double zeta_raw = 1.0;
  double phi_mult = 0.0;
  double phi = 0.0;
  double zeta0 = 0.0;
  std::optional<Triple> witness_zeta;
  std::optional<Triple> witness_phi;
};

MetricityReport analyze_metricity(const DecaySpace& space, double tol = kDefaultZetaTol);

/// d(p,q) = f(p,q)^(1/zeta).
class QuasiMetric {
 public:
  QuasiMetric() = default;
  QuasiMetric(SquareMatrix d, double zeta, SpaceMode mode) : d_(std::move(d)), zeta_(zeta), mode_(mode) {}

  std::size_t size() const noexcept { return d_.size(); }
  double operator()(NodeId p, NodeId q) const { return d_(p, q); }
  double zeta() const noexcept { return zeta_; }
  SpaceMode mode() const noexcept { return mode_; }
  const SquareMatrix& matrix() const noexcept { return d_; }
  bool is_symmetric() const;

 private:
  SquareMatrix d_;
  double zeta_ = 1.0;
  SpaceMode mode_ = SpaceMode::node_space;
};

/// Raised when quasi-distances built with too small an exponent break the
/// triangle inequality.
class TriangleViolationError : public Error {
 public:
  TriangleViolationError(Triple witness, double excess);
  const Triple& witness() const noexcept { return witness_; }
  double excess() const noexcept { return excess_; }

 private:
  Triple witness_;
  double excess_;
};

/// Returns the first triple (lexicographic) where d(from,to) exceeds
/// d(from,via) + d(via,to) by more than tol * max(1, d(from,to)).
std::optional<Triple> find_triangle_violation(const SquareMatrix& d, double tol);

/// Builds the quasi-metric and checks the triangle inequality; throws
/// TriangleViolationError if `zeta` is below the metricity of the space.
QuasiMetric quasi_distances(const DecaySpace& space, double zeta, double tol = 1e-9);

/// Convenience: quasi_distances(space, compute_zeta(space).zeta).
QuasiMetric metric_quasi_distances(const DecaySpace& space, double tol = kDefaultZetaTol);

}  // namespace decaynet

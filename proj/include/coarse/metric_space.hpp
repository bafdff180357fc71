#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace coarse {

/// A finite metric space: labelled points plus a dense symmetric distance
/// table. Immutable after construction; every operation in the library is a
/// pure function of one or more of these.
///
/// Point identity is the index into the label list (the canonical order used
/// by every greedy procedure and tie-break). Labels are only used at the
/// file-format boundary.
class MetricSpace {
 public:
  /// table is row-major, size n*n. Throws std::invalid_argument on a
  /// dimension mismatch or duplicate label. Metric axioms are NOT enforced
  /// here; use validate_metric.
  MetricSpace(std::vector<std::string> labels, std::vector<double> table);

  static MetricSpace from_rows(std::vector<std::string> labels,
                               const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& table() const { return dist_; }

  double dist(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }

  /// Index of a label; throws std::out_of_range for unknown labels.
  std::size_t index_of(const std::string& label) const;
  std::optional<std::size_t> find(const std::string& label) const;

  /// Largest pairwise distance (0 for a single point).
  double diameter() const;
  /// max_x d(p, x).
  double eccentricity(std::size_t p) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const MetricSpace>;

SpacePtr make_space(std::vector<std::string> labels, std::vector<double> table);

/// One violated metric axiom with its witness points.
struct MetricViolation {
  enum class Axiom { Finiteness, Identity, Symmetry, Triangle };
  Axiom axiom;
  std::size_t i = 0, j = 0, k = 0;  // k only used for Triangle: d(i,k) > d(i,j)+d(j,k)
  double lhs = 0, rhs = 0;

  std::string describe(const MetricSpace& space) const;
};

struct ValidationReport {
  std::vector<MetricViolation> violations;
  bool truncated = false;  // more violations exist than were recorded
  bool ok() const { return violations.empty(); }
};

/// Exhaustive check of finiteness, d(x,x)=0, symmetry and the triangle
/// inequality (absolute tolerance kTol). Reports at most max_reports
/// violations, each with witnesses.
ValidationReport validate_metric(const MetricSpace& space, std::size_t max_reports = 64);

/// Closed ball B(p,r) = {x : d(x,p) <= r}, in canonical order.
std::vector<std::size_t> ball(const MetricSpace& space, std::size_t p, double r);
std::vector<std::size_t> ball(const MetricSpace& space, const std::string& p, double r);

/// All ordered pairs at distance <= r (contains the diagonal, symmetric).
std::vector<std::pair<std::size_t, std::size_t>> entourage_pairs(const MetricSpace& space,
                                                                 double r);

/// Undirected positively weighted graph; source of shortest-path metrics.
struct WeightedGraph {
  struct Edge {
    std::size_t u, v;
    double w;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  void add_edge(std::size_t u, std::size_t v, double w);
};

/// All-pairs shortest-path metric of a connected graph. Throws
/// std::invalid_argument naming two unreachable vertices if disconnected,
/// or on self-loops / nonpositive weights.
MetricSpace shortest_path_metric(const WeightedGraph& g);

/// Restriction of the metric to the given points (labels kept, metric
/// restricted; canonical order follows the index list).
SpacePtr subspace(const MetricSpace& space, std::span<const std::size_t> points);

/// Sorted distinct pairwise distances (always starts at 0 for a nonempty
/// space). The natural scale grid for measured control tables.
std::vector<double> distance_scales(const MetricSpace& space);

/// 0, 1, ..., ceil(max) as doubles.
std::vector<double> integer_scales(double max);

}  // namespace coarse

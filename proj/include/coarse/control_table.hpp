#pragma once

#include <cstddef>
#include <vector>

namespace coarse {

/// Monotone scale -> bound table: the quantitative form of "entourages map to
/// entourages". Queries snap upward to the least tabulated scale >= the
/// argument; querying past the grid throws std::out_of_range. Bounds may be
/// +infinity (the unbounded marker).
class ControlTable {
 public:
  ControlTable() = default;
  /// scales strictly increasing, bounds nondecreasing, equal lengths;
  /// throws std::invalid_argument otherwise.
  ControlTable(std::vector<double> scales, std::vector<double> bounds);

  std::size_t size() const { return scales_.size(); }
  bool empty() const { return scales_.empty(); }
  const std::vector<double>& scales() const { return scales_; }
  const std::vector<double>& bounds() const { return bounds_; }
  double scale(std::size_t i) const { return scales_[i]; }
  double bound(std::size_t i) const { return bounds_[i]; }
  double max_scale() const;

  /// Bound at the least tabulated scale >= scale (within tolerance).
  double at(double scale) const;
  /// True if the query would not throw.
  bool covers(double scale) const;

  /// Pointwise >= other on every scale of other's grid (both snapped).
  bool dominates(const ControlTable& other) const;

 private:
  std::vector<double> scales_;
  std::vector<double> bounds_;
};

/// Identity table r -> r on the given grid.
ControlTable identity_table(const std::vector<double>& scales);

}  // namespace coarse

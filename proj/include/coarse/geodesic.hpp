#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarse/control_table.hpp"
#include "coarse/map_witness.hpp"
#include "coarse/metric_space.hpp"

namespace coarse {

/// Finite sequence with consecutive distances <= step.
struct CPath {
  std::vector<std::size_t> points;
  double step;

  std::size_t hops() const { return points.empty() ? 0 : points.size() - 1; }
};

/// Neighbor lists of the threshold graph: i ~ j iff 0 < d(i,j) <= c.
std::vector<std::vector<std::size_t>> threshold_adjacency(const MetricSpace& space, double c);

/// Minimal c-path hop counts from source (-1 where unreachable).
std::vector<std::int32_t> cpath_hops_from(const MetricSpace& space, double c,
                                          std::size_t source);
std::vector<std::int32_t> cpath_hops_from(const std::vector<std::vector<std::size_t>>& adj,
                                          std::size_t source);

/// Full hop-count matrix (row-major, -1 unreachable).
std::vector<std::int32_t> cpath_hops_all(const MetricSpace& space, double c);

/// A shortest c-path from x to y (breadth-first over the threshold graph,
/// canonical tie-breaks), or nullopt if none exists.
std::optional<CPath> min_cpath(const MetricSpace& space, double c, std::size_t x,
                               std::size_t y);

/// Least c (among realized pairwise distances) making every pair c-path
/// connected. 0 for a single point.
double connectivity_threshold(const MetricSpace& space);

/// entry(r) = max over pairs with d(x,y) <= r of the minimal c-path point
/// count: the least admissible upper control for (space, c). Throws
/// std::invalid_argument naming a disconnected pair if the space is not
/// c-coarsely connected.
ControlTable upper_control(const MetricSpace& space, double c, std::span<const double> scales);

/// One sample point of a geometric realization: either a base vertex or the
/// k/m point of an edge (k in 1..m-1).
struct RealizedPoint {
  bool is_vertex;
  std::size_t vertex;  // base index when is_vertex
  std::size_t edge;    // index into Realization::edges otherwise
  int k;               // position k/m along the edge, from the smaller endpoint
};

/// Discretized geometric realization of the 1-skeleton of the c-Rips complex:
/// unit-length edges e(x,y) for d(x,y) <= c, x < y canonically, each carrying
/// m-1 interior samples; the realized metric is the shortest-path metric with
/// segment weight 1/m.
struct Realization {
  SpacePtr base;
  double step_c;
  int subdivision;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  SpacePtr space;                     // realized metric space
  std::vector<RealizedPoint> points;  // parallel to space's points

  /// Realized index of a base vertex (vertices come first, in base order).
  std::size_t vertex_point(std::size_t base_index) const { return base_index; }
};

/// Throws std::invalid_argument if the threshold graph is disconnected or
/// m < 1. Interior labels are "e:<x>:<y>:<k>/<m>".
Realization geodesify(const SpacePtr& base, double c, int m);

/// Collapse of a realized point to its nearer edge endpoint (ties to the
/// canonically smaller endpoint); vertices map to themselves.
std::size_t nearest_vertex(const Realization& realization, std::size_t realized_point);

/// nearest_vertex packaged as a witness from the realization onto the base.
MapWitness nearest_vertex_map(const Realization& realization);

}  // namespace coarse

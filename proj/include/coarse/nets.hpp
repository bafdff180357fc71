#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

struct NetResult {
  std::vector<std::size_t> net;  // epsilon-discrete subset, canonical scan order
  double covering_constant;      // measured max distance from the space into the net
};

/// Greedy epsilon-net: scan points in canonical order, keep a point iff it is
/// at distance >= epsilon from everything kept so far. The kept set is
/// epsilon-discrete and covers the space within the returned constant
/// (always <= epsilon).
NetResult greedy_net(const MetricSpace& space, double epsilon);

struct CoverResult {
  std::vector<std::size_t> centers;
  std::size_t count() const { return centers.size(); }
};

/// Greedy ball cover of subset by r0-balls with centers in subset.
/// Rule: the first center is the canonically first point of the subset; each
/// later center is the point within r0 of the first uncovered point that
/// covers the most still-uncovered points (ties to canonical order).
/// Guarantees coverage; empty subset yields count 0.
CoverResult covering_number(const MetricSpace& space, std::span<const std::size_t> subset,
                            double r0);

}  // namespace coarse

#include "coarse/nets.hpp"

#include <algorithm>
#include <stdexcept>

#include "coarse/common.hpp"

namespace coarse {

NetResult greedy_net(const MetricSpace& space, double epsilon) {
  if (epsilon < 0) throw std::invalid_argument("greedy_net: negative epsilon");
  NetResult result;
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool keep = true;
    for (std::size_t s : result.net) {
      if (lt(space.dist(i, s), epsilon)) {
        keep = false;
        break;
      }
    }
    if (keep) result.net.push_back(i);
  }
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = kInf;
    for (std::size_t s : result.net) best = std::min(best, space.dist(i, s));
    worst = std::max(worst, best);
  }
  result.covering_constant = (n == 0) ? 0 : worst;
  return result;
}

CoverResult covering_number(const MetricSpace& space, std::span<const std::size_t> subset,
                            double r0) {
  if (r0 < 0) throw std::invalid_argument("covering_number: negative radius");
  CoverResult result;
  if (subset.empty()) return result;

  std::vector<bool> covered(subset.size(), false);
  auto cover_by = [&](std::size_t center) {
    for (std::size_t t = 0; t < subset.size(); ++t) {
      if (!covered[t] && leq(space.dist(center, subset[t]), r0)) covered[t] = true;
    }
  };

  result.centers.push_back(subset[0]);
  cover_by(subset[0]);

  for (std::size_t t = 0; t < subset.size(); ++t) {
    if (covered[t]) continue;
    const std::size_t u = subset[t];
    // Candidate centers: subset points within r0 of u. Pick the one covering
    // the most uncovered points; canonical order breaks ties.
    std::size_t best_center = u;
    std::size_t best_gain = 0;
    for (std::size_t cand : subset) {
      if (!leq(space.dist(cand, u), r0)) continue;
      std::size_t gain = 0;
      for (std::size_t s = 0; s < subset.size(); ++s) {
        if (!covered[s] && leq(space.dist(cand, subset[s]), r0)) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_center = cand;
      }
    }
    result.centers.push_back(best_center);
    cover_by(best_center);
  }
  return result;
}

}  // namespace coarse

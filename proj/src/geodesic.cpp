#include "coarse/geodesic.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "coarse/common.hpp"
#include "coarse/parallel.hpp"

namespace coarse {

std::vector<std::vector<std::size_t>> threshold_adjacency(const MetricSpace& space, double c) {
  const std::size_t n = space.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq(space.dist(i, j), c)) adj[i].push_back(j);
    }
  }
  return adj;
}

std::vector<std::int32_t> cpath_hops_from(const std::vector<std::vector<std::size_t>>& adj,
                                          std::size_t source) {
  std::vector<std::int32_t> hops(adj.size(), -1);
  std::queue<std::size_t> queue;
  hops[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : adj[u]) {
      if (hops[v] < 0) {
        hops[v] = hops[u] + 1;
        queue.push(v);
      }
    }
  }
  return hops;
}

std::vector<std::int32_t> cpath_hops_from(const MetricSpace& space, double c,
                                          std::size_t source) {
  return cpath_hops_from(threshold_adjacency(space, c), source);
}

std::vector<std::int32_t> cpath_hops_all(const MetricSpace& space, double c) {
  const auto adj = threshold_adjacency(space, c);
  const std::size_t n = space.size();
  std::vector<std::int32_t> table(n * n, -1);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      auto row = cpath_hops_from(adj, s);
      std::copy(row.begin(), row.end(), table.begin() + s * n);
    }
  });
  return table;
}

std::optional<CPath> min_cpath(const MetricSpace& space, double c, std::size_t x,
                               std::size_t y) {
  if (x >= space.size() || y >= space.size()) {
    throw std::out_of_range("min_cpath: point index out of range");
  }
  if (c < 0) throw std::invalid_argument("min_cpath: negative step");
  const auto adj = threshold_adjacency(space, c);
  const auto hops = cpath_hops_from(adj, x);
  if (hops[y] < 0) return std::nullopt;
  // Walk back from y, always taking the canonically smallest neighbor one
  // level closer to x.
  std::vector<std::size_t> rev{y};
  std::size_t cur = y;
  while (hops[cur] > 0) {
    std::size_t next = cur;
    for (std::size_t v : adj[cur]) {
      if (hops[v] == hops[cur] - 1) {
        next = v;
        break;  // neighbors are in canonical order
      }
    }
    rev.push_back(next);
    cur = next;
  }
  std::reverse(rev.begin(), rev.end());
  return CPath{std::move(rev), c};
}

double connectivity_threshold(const MetricSpace& space) {
  if (space.size() == 0) throw std::invalid_argument("connectivity_threshold: empty space");
  if (space.size() == 1) return 0;
  auto scales = distance_scales(space);
  auto connected_at = [&](double c) {
    const auto hops = cpath_hops_from(space, c, 0);
    return std::none_of(hops.begin(), hops.end(), [](std::int32_t h) { return h < 0; });
  };
  // Binary search the sorted realized distances.
  std::size_t lo = 0, hi = scales.size() - 1;
  if (!connected_at(scales[hi])) return kInf;  // cannot happen: diameter connects everything
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (connected_at(scales[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return scales[lo];
}

ControlTable upper_control(const MetricSpace& space, double c, std::span<const double> scales) {
  const std::size_t n = space.size();
  if (n == 0) throw std::invalid_argument("upper_control: empty space");
  const auto hops = cpath_hops_all(space, c);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (hops[i * n + j] < 0) {
        throw std::invalid_argument("upper_control: space is not " + std::to_string(c) +
                                    "-coarsely connected: no c-path from " + space.label(i) +
                                    " to " + space.label(j));
      }
    }
  }
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      pairs.emplace_back(space.dist(i, j), static_cast<double>(hops[i * n + j] + 1));
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> prefix(pairs.size());
  double running = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    running = std::max(running, pairs[i].second);
    prefix[i] = running;
  }
  std::vector<double> grid, bounds;
  for (double s : scales) {
    if (!grid.empty() && !(s > grid.back())) {
      throw std::invalid_argument("upper_control: scales must be strictly ascending");
    }
    auto it = std::upper_bound(pairs.begin(), pairs.end(), s + kTol,
                               [](double v, const auto& p) { return v < p.first; });
    grid.push_back(s);
    bounds.push_back(it == pairs.begin()
                         ? 0.0
                         : prefix[static_cast<std::size_t>(it - pairs.begin()) - 1]);
  }
  return ControlTable(std::move(grid), std::move(bounds));
}

Realization geodesify(const SpacePtr& base, double c, int m) {
  if (!base || base->size() == 0) throw std::invalid_argument("geodesify: empty space");
  if (m < 1) throw std::invalid_argument("geodesify: subdivision must be >= 1");
  const MetricSpace& X = *base;
  const std::size_t n = X.size();

  {
    const auto hops = cpath_hops_from(X, c, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (hops[i] < 0) {
        throw std::invalid_argument("geodesify: threshold graph is disconnected between " +
                                    X.label(0) + " and " + X.label(i));
      }
    }
  }

  Realization real;
  real.base = base;
  real.step_c = c;
  real.subdivision = m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leq(X.dist(i, j), c)) real.edges.emplace_back(i, j);
    }
  }

  // Sample points: base vertices first (same order), then m-1 interior
  // points per edge at k/m from the smaller endpoint.
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(X.label(i));
    real.points.push_back({true, i, 0, 0});
  }
  for (std::size_t e = 0; e < real.edges.size(); ++e) {
    for (int k = 1; k < m; ++k) {
      std::ostringstream lbl;
      lbl << "e:" << X.label(real.edges[e].first) << ":" << X.label(real.edges[e].second)
          << ":" << k << "/" << m;
      labels.push_back(lbl.str());
      real.points.push_back({false, 0, e, k});
    }
  }

  // Weighted graph of consecutive samples along each edge; segment length 1/m.
  WeightedGraph g;
  g.vertices = labels;
  const double seg = 1.0 / m;
  for (std::size_t e = 0; e < real.edges.size(); ++e) {
    const std::size_t first_interior = n + e * (m - 1);
    std::size_t prev = real.edges[e].first;
    for (int k = 1; k < m; ++k) {
      g.add_edge(prev, first_interior + (k - 1), seg);
      prev = first_interior + (k - 1);
    }
    g.add_edge(prev, real.edges[e].second, seg);
  }
  if (n == 1) {
    real.space = make_space(std::move(labels), std::vector<double>{0.0});
    return real;
  }
  real.space = std::make_shared<const MetricSpace>(shortest_path_metric(g));
  return real;
}

std::size_t nearest_vertex(const Realization& realization, std::size_t realized_point) {
  const RealizedPoint& p = realization.points.at(realized_point);
  if (p.is_vertex) return p.vertex;
  const auto [x, y] = realization.edges[p.edge];
  const double to_x = static_cast<double>(p.k) / realization.subdivision;
  const double to_y = 1.0 - to_x;
  return leq(to_x, to_y) ? x : y;
}

MapWitness nearest_vertex_map(const Realization& realization) {
  MapWitness w{realization.space, realization.base,
               std::vector<std::size_t>(realization.space->size())};
  for (std::size_t t = 0; t < w.map.size(); ++t) w.map[t] = nearest_vertex(realization, t);
  return w;
}

}  // namespace coarse

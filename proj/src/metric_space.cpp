#include "coarse/metric_space.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "coarse/common.hpp"
#include "coarse/parallel.hpp"

namespace coarse {

MetricSpace::MetricSpace(std::vector<std::string> labels, std::vector<double> table)
    : labels_(std::move(labels)), dist_(std::move(table)) {
  const std::size_t n = labels_.size();
  if (dist_.size() != n * n) {
    std::ostringstream msg;
    msg << "distance table has " << dist_.size() << " entries, expected " << n << "x" << n;
    throw std::invalid_argument(msg.str());
  }
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw std::invalid_argument("duplicate point label: " + labels_[i]);
    }
  }
}

MetricSpace MetricSpace::from_rows(std::vector<std::string> labels,
                                   const std::vector<std::vector<double>>& rows) {
  const std::size_t n = labels.size();
  if (rows.size() != n) throw std::invalid_argument("matrix row count does not match point count");
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MetricSpace(std::move(labels), std::move(flat));
}

std::size_t MetricSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw std::out_of_range("unknown point label: " + label);
  return it->second;
}

std::optional<std::size_t> MetricSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double MetricSpace::diameter() const {
  double d = 0;
  for (double v : dist_) d = std::max(d, v);
  return d;
}

double MetricSpace::eccentricity(std::size_t p) const {
  double d = 0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, dist(p, i));
  return d;
}

SpacePtr make_space(std::vector<std::string> labels, std::vector<double> table) {
  return std::make_shared<const MetricSpace>(std::move(labels), std::move(table));
}

std::string MetricViolation::describe(const MetricSpace& space) const {
  std::ostringstream out;
  switch (axiom) {
    case Axiom::Finiteness:
      out << "non-finite distance d(" << space.label(i) << "," << space.label(j) << ")";
      break;
    case Axiom::Identity:
      out << "d(" << space.label(i) << "," << space.label(i) << ") = " << lhs << " != 0";
      break;
    case Axiom::Symmetry:
      out << "d(" << space.label(i) << "," << space.label(j) << ") = " << lhs << " != "
          << rhs << " = d(" << space.label(j) << "," << space.label(i) << ")";
      break;
    case Axiom::Triangle:
      out << "d(" << space.label(i) << "," << space.label(k) << ") = " << lhs << " > " << rhs
          << " = d(" << space.label(i) << "," << space.label(j) << ") + d(" << space.label(j)
          << "," << space.label(k) << ")";
      break;
  }
  return out.str();
}

ValidationReport validate_metric(const MetricSpace& space, std::size_t max_reports) {
  ValidationReport report;
  const std::size_t n = space.size();

  auto record = [&](MetricViolation v) {
    if (report.violations.size() < max_reports) {
      report.violations.push_back(v);
    } else {
      report.truncated = true;
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!approx_eq(space.dist(i, i), 0)) {
      record({MetricViolation::Axiom::Identity, i, i, 0, space.dist(i, i), 0});
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double d = space.dist(i, j);
      if (!std::isfinite(d)) {
        record({MetricViolation::Axiom::Finiteness, i, j, 0, d, 0});
      } else if (j > i && !approx_eq(d, space.dist(j, i))) {
        record({MetricViolation::Axiom::Symmetry, i, j, 0, d, space.dist(j, i)});
      }
    }
  }

  // Triangle scan is the hot loop: n^3 comparisons, partitioned over i.
  std::mutex mu;
  std::atomic<bool> full{false};
  const double* d = space.table().data();
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<MetricViolation> local;
    for (std::size_t i = begin; i < end && !full.load(std::memory_order_relaxed); ++i) {
      const double* di = d + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double dij = di[j];
        const double* dj = d + j * n;
        for (std::size_t k = 0; k < n; ++k) {
          if (di[k] > dij + dj[k] + kTol) {
            local.push_back({MetricViolation::Axiom::Triangle, i, j, k, di[k], dij + dj[k]});
            if (local.size() >= max_reports) {
              full.store(true, std::memory_order_relaxed);
              break;
            }
          }
        }
        if (local.size() >= max_reports) break;
      }
    }
    if (!local.empty()) {
      std::lock_guard<std::mutex> lock(mu);
      for (auto& v : local) record(v);
    }
  });

  // Deterministic order regardless of thread interleaving.
  std::sort(report.violations.begin(), report.violations.end(),
            [](const MetricViolation& a, const MetricViolation& b) {
              return std::tie(a.axiom, a.i, a.j, a.k) < std::tie(b.axiom, b.i, b.j, b.k);
            });
  return report;
}

std::vector<std::size_t> ball(const MetricSpace& space, std::size_t p, double r) {
  if (p >= space.size()) throw std::out_of_range("ball: point index out of range");
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (leq(space.dist(p, i), r)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ball(const MetricSpace& space, const std::string& p, double r) {
  return ball(space, space.index_of(p), r);
}

std::vector<std::pair<std::size_t, std::size_t>> entourage_pairs(const MetricSpace& space,
                                                                 double r) {
  if (r < 0) throw std::invalid_argument("entourage_pairs: negative scale");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (leq(space.dist(i, j), r)) out.emplace_back(i, j);
    }
  }
  return out;
}

void WeightedGraph::add_edge(std::size_t u, std::size_t v, double w) {
  edges.push_back({u, v, w});
}

MetricSpace shortest_path_metric(const WeightedGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : g.edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + g.vertices[e.u]);
    if (!(e.w > 0)) throw std::invalid_argument("nonpositive edge weight");
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }

  std::vector<double> table(n * n, kInf);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    using Entry = std::pair<double, std::size_t>;
    for (std::size_t s = begin; s < end; ++s) {
      double* row = table.data() + s * n;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
      row[s] = 0;
      heap.emplace(0.0, s);
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > row[u]) continue;
        for (auto [v, w] : adj[u]) {
          if (row[u] + w < row[v]) {
            row[v] = row[u] + w;
            heap.emplace(row[v], v);
          }
        }
      }
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(table[i * n + j])) {
        throw std::invalid_argument("graph is disconnected: no path from " + g.vertices[i] +
                                    " to " + g.vertices[j]);
      }
    }
  }
  return MetricSpace(g.vertices, std::move(table));
}

SpacePtr subspace(const MetricSpace& space, std::span<const std::size_t> points) {
  std::vector<std::string> labels;
  labels.reserve(points.size());
  for (std::size_t p : points) {
    if (p >= space.size()) throw std::out_of_range("subspace: point index out of range");
    labels.push_back(space.label(p));
  }
  std::vector<double> table(points.size() * points.size());
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = 0; b < points.size(); ++b) {
      table[a * points.size() + b] = space.dist(points[a], points[b]);
    }
  }
  return make_space(std::move(labels), std::move(table));
}

std::vector<double> distance_scales(const MetricSpace& space) {
  std::vector<double> scales(space.table().begin(), space.table().end());
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end(),
                           [](double a, double b) { return approx_eq(a, b); }),
               scales.end());
  return scales;
}

std::vector<double> integer_scales(double max) {
  std::vector<double> out;
  for (double k = 0; k <= std::ceil(max) + kTol; k += 1) out.push_back(k);
  return out;
}

}  // namespace coarse

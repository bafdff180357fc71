#include "coarse/map_witness.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "coarse/common.hpp"

namespace coarse {

MapWitness identity_witness(const SpacePtr& space) {
  MapWitness w{space, space, std::vector<std::size_t>(space->size())};
  std::iota(w.map.begin(), w.map.end(), 0);
  return w;
}

MapWitness constant_witness(const SpacePtr& source, const SpacePtr& target, std::size_t value) {
  if (value >= target->size()) throw std::invalid_argument("constant_witness: value out of range");
  return MapWitness{source, target, std::vector<std::size_t>(source->size(), value)};
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->size() != b->size()) return false;
  if (a->labels() != b->labels()) return false;
  const auto& ta = a->table();
  const auto& tb = b->table();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (!approx_eq(ta[i], tb[i])) return false;
  }
  return true;
}

void check_witness(const MapWitness& w) {
  if (!w.source || !w.target) throw std::invalid_argument("map witness: missing space");
  if (w.map.size() != w.source->size()) {
    throw std::invalid_argument("map witness: not total on the source");
  }
  for (std::size_t v : w.map) {
    if (v >= w.target->size()) throw std::invalid_argument("map witness: image out of range");
  }
}

MapWitness compose(const MapWitness& f, const MapWitness& g) {
  if (!same_space(f.target, g.source)) {
    throw std::invalid_argument("compose: target of first map is not the source of the second");
  }
  MapWitness out{f.source, g.target, std::vector<std::size_t>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) out.map[i] = g.map[f.map[i]];
  return out;
}

namespace {

// Generic "max of value over pairs with key <= scale" table: sort pairs by
// key, prefix-max the values, binary search each scale.
ControlTable pair_max_table(std::vector<std::pair<double, double>>& pairs,
                            std::span<const double> scales) {
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> prefix(pairs.size());
  double running = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    running = std::max(running, pairs[i].second);
    prefix[i] = running;
  }
  std::vector<double> grid;
  std::vector<double> bounds;
  for (double s : scales) {
    if (!grid.empty() && !(s > grid.back())) {
      throw std::invalid_argument("scales must be sorted strictly ascending");
    }
    // Largest key <= s (with tolerance).
    auto it = std::upper_bound(pairs.begin(), pairs.end(), s + kTol,
                               [](double v, const auto& p) { return v < p.first; });
    grid.push_back(s);
    bounds.push_back(it == pairs.begin() ? 0.0 : prefix[static_cast<std::size_t>(it - pairs.begin()) - 1]);
  }
  return ControlTable(std::move(grid), std::move(bounds));
}

}  // namespace

ControlTable uniformity_control(const MapWitness& w, std::span<const double> scales) {
  check_witness(w);
  if (w.source->size() == 0) throw std::invalid_argument("uniformity_control: empty space");
  const MetricSpace& src = *w.source;
  const MetricSpace& tgt = *w.target;
  const std::size_t n = src.size();
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      pairs.emplace_back(src.dist(i, j), tgt.dist(w.map[i], w.map[j]));
    }
  }
  return pair_max_table(pairs, scales);
}

ControlTable properness_profile(const MapWitness& w, std::span<const double> radii,
                                std::size_t center) {
  check_witness(w);
  if (center >= w.target->size()) {
    throw std::invalid_argument("properness_profile: center not in target");
  }
  const MetricSpace& src = *w.source;
  const MetricSpace& tgt = *w.target;
  const std::size_t n = src.size();

  // Add source points in order of image distance to the center; the preimage
  // of B(center, l) is a prefix, so one incremental diameter pass covers all
  // radii.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tgt.dist(w.map[a], center) < tgt.dist(w.map[b], center);
  });

  std::vector<double> grid;
  std::vector<double> bounds;
  std::vector<std::size_t> added;
  double diam = 0;
  std::size_t next = 0;
  for (double l : radii) {
    if (!grid.empty() && !(l > grid.back())) {
      throw std::invalid_argument("radii must be sorted strictly ascending");
    }
    while (next < n && leq(tgt.dist(w.map[order[next]], center), l)) {
      for (std::size_t prev : added) diam = std::max(diam, src.dist(order[next], prev));
      added.push_back(order[next]);
      ++next;
    }
    grid.push_back(l);
    bounds.push_back(added.empty() ? 0.0 : diam);
  }
  return ControlTable(std::move(grid), std::move(bounds));
}

ControlTable injectivity_control(const MapWitness& w, std::span<const double> scales) {
  check_witness(w);
  const MetricSpace& src = *w.source;
  const MetricSpace& tgt = *w.target;
  const std::size_t n = src.size();
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      pairs.emplace_back(tgt.dist(w.map[i], w.map[j]), src.dist(i, j));
    }
  }
  return pair_max_table(pairs, scales);
}

double closeness_constant(const MapWitness& f, const MapWitness& g) {
  if (!same_space(f.source, g.source) || !same_space(f.target, g.target)) {
    throw std::invalid_argument("closeness_constant: maps do not share source and target");
  }
  double worst = 0;
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    worst = std::max(worst, f.target->dist(f.map[i], g.map[i]));
  }
  return worst;
}

double surjectivity_constant(const MapWitness& w) {
  check_witness(w);
  const MetricSpace& tgt = *w.target;
  double worst = 0;
  for (std::size_t y = 0; y < tgt.size(); ++y) {
    double best = kInf;
    for (std::size_t x : w.map) best = std::min(best, tgt.dist(y, x));
    worst = std::max(worst, best);
  }
  return w.map.empty() ? kInf : worst;
}

QuasiInverse quasi_inverse(const MapWitness& w) {
  check_witness(w);
  if (w.source->size() == 0) throw std::invalid_argument("quasi_inverse: empty source");
  const MetricSpace& tgt = *w.target;
  MapWitness inv{w.target, w.source, std::vector<std::size_t>(tgt.size())};
  for (std::size_t y = 0; y < tgt.size(); ++y) {
    std::size_t best = 0;
    double best_d = tgt.dist(w.map[0], y);
    for (std::size_t x = 1; x < w.map.size(); ++x) {
      const double d = tgt.dist(w.map[x], y);
      if (d < best_d - kTol) {
        best_d = d;
        best = x;
      }
    }
    inv.map[y] = best;
  }
  QuasiInverse out{inv, 0, 0};
  out.forward_identity = closeness_constant(compose(inv, w), identity_witness(w.target));
  out.backward_identity = closeness_constant(compose(w, inv), identity_witness(w.source));
  return out;
}

ControlTable transport_upper_control(const ControlTable& phiX, double K,
                                     const ControlTable& varphi,
                                     std::span<const double> scales) {
  if (K < 0) throw std::invalid_argument("transport_upper_control: negative closeness constant");
  std::vector<double> grid;
  std::vector<double> bounds;
  for (double r : scales) {
    grid.push_back(r);
    bounds.push_back(phiX.at(varphi.at(r + 2 * K)) + 2);
  }
  return ControlTable(std::move(grid), std::move(bounds));
}

}  // namespace coarse

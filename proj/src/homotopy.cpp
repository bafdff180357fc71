#include "coarse/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "coarse/common.hpp"
#include "coarse/generators.hpp"
#include "coarse/geodesic.hpp"
#include "coarse/parallel.hpp"

namespace coarse {

double cone_metric(double base_dist, int level_i, int level_j) {
  if (level_i < 1 || level_j < 1) {
    throw std::invalid_argument("cone_metric: levels start at 1");
  }
  if (base_dist < 0) throw std::invalid_argument("cone_metric: negative base distance");
  const double i = level_i, j = level_j;
  const double value = i * i + j * j - (2 - base_dist * base_dist) * i * j;
  return std::sqrt(std::max(0.0, value));
}

std::size_t ConeSpace::point_at(int lvl, int k) const {
  if (lvl < 1 || lvl > levels) {
    throw std::out_of_range("cone level " + std::to_string(lvl) + " does not exist");
  }
  std::size_t idx;
  if (interval_base) {
    if (k < 0 || k > lvl) {
      throw std::out_of_range("cone point " + std::to_string(k) + "/" + std::to_string(lvl) +
                              " does not exist");
    }
    // Level i starts after levels 1..i-1, which hold 2 + 3 + ... + i points.
    idx = static_cast<std::size_t>((lvl - 1) * (lvl + 2) / 2 + k);
  } else {
    if (k < 0 || static_cast<std::size_t>(k) >= base->size()) {
      throw std::out_of_range("cone base index out of range");
    }
    idx = static_cast<std::size_t>(lvl - 1) * base->size() + static_cast<std::size_t>(k);
  }
  return idx;
}

double ConeSpace::base_dist(std::size_t a, std::size_t b) const {
  if (interval_base) return std::fabs(param[a] - param[b]);
  return base->dist(static_cast<std::size_t>(numerator[a]),
                    static_cast<std::size_t>(numerator[b]));
}

namespace {

ConeSpace finish_cone(ConeSpace cone, std::vector<std::string> labels) {
  const std::size_t n = cone.level.size();
  std::vector<double> table(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = cone_metric(cone.base_dist(a, b), cone.level[a], cone.level[b]);
      table[a * n + b] = d;
      table[b * n + a] = d;
    }
  }
  cone.space = make_space(std::move(labels), std::move(table));
  const ValidationReport report = validate_metric(*cone.space, 1);
  if (!report.ok()) {
    throw std::invalid_argument("cone metric is not a metric: " +
                                report.violations.front().describe(*cone.space));
  }
  return cone;
}

}  // namespace

ConeSpace build_interval_cone(int levels) {
  if (levels < 1) throw std::invalid_argument("build_interval_cone: need at least one level");
  ConeSpace cone;
  cone.levels = levels;
  cone.interval_base = true;
  std::vector<std::string> labels;
  for (int i = 1; i <= levels; ++i) {
    for (int k = 0; k <= i; ++k) {
      cone.level.push_back(i);
      cone.numerator.push_back(k);
      cone.param.push_back(static_cast<double>(k) / i);
      labels.push_back(std::to_string(k) + "/" + std::to_string(i) + "@" + std::to_string(i));
    }
  }
  return finish_cone(std::move(cone), std::move(labels));
}

ConeSpace build_cone(const SpacePtr& base, int levels) {
  if (!base || base->size() == 0) throw std::invalid_argument("build_cone: empty base");
  if (levels < 1) throw std::invalid_argument("build_cone: need at least one level");
  ConeSpace cone;
  cone.levels = levels;
  cone.interval_base = false;
  cone.base = base;
  std::vector<std::string> labels;
  for (int i = 1; i <= levels; ++i) {
    for (std::size_t x = 0; x < base->size(); ++x) {
      cone.level.push_back(i);
      cone.numerator.push_back(static_cast<int>(x));
      cone.param.push_back(0);
      labels.push_back(base->label(x) + "@" + std::to_string(i));
    }
  }
  return finish_cone(std::move(cone), std::move(labels));
}

ConeEntourageReport cone_entourage_check(
    const ConeSpace& cone, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("cone_entourage_check: empty pair list");
  ConeEntourageReport report;
  const std::size_t half = std::max<std::size_t>(1, pairs.size() / 2);
  double rate = 0, rate_half = 0;
  long gap = 0, gap_half = 0;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto [a, b] = pairs[idx];
    const long la = cone.level[a], lb = cone.level[b];
    const double fit = cone.base_dist(a, b) * static_cast<double>(la);
    rate = std::max(rate, fit);
    gap = std::max(gap, std::labs(la - lb));
    if (idx < half) {
      rate_half = std::max(rate_half, fit);
      gap_half = std::max(gap_half, std::labs(la - lb));
    }
  }
  report.fitted_rate = rate;
  report.fitted_rate_prefix = rate_half;
  report.level_gap = gap;
  report.level_gap_prefix = gap_half;
  report.pass = approx_eq(rate, rate_half) && gap == gap_half;
  return report;
}

Cylinder build_cylinder(const SpacePtr& X, std::size_t p, ConeSpace cone, double R,
                        Combiner comb) {
  Cylinder cyl{build_product(X, p, cone.space, 0, R, comb), std::move(cone)};
  return cyl;
}

MapWitness homotopy_from_close(const MapWitness& f, const MapWitness& g, const Cylinder& cyl) {
  check_witness(f);
  check_witness(g);
  if (!same_space(f.source, g.source) || !same_space(f.target, g.target)) {
    throw std::invalid_argument("homotopy_from_close: maps do not share source and target");
  }
  if (!same_space(f.source, cyl.prod.left)) {
    throw std::invalid_argument("homotopy_from_close: cylinder is over a different space");
  }
  MapWitness h{cyl.prod.space, f.target, std::vector<std::size_t>(cyl.prod.pairs.size())};
  for (std::size_t row = 0; row < cyl.prod.pairs.size(); ++row) {
    const auto [x, cp] = cyl.prod.pairs[row];
    const bool at_zero = cyl.cone.interval_base ? cyl.cone.numerator[cp] == 0
                                                : cyl.cone.param[cp] == 0;
    h.map[row] = at_zero ? f.map[x] : g.map[x];
  }
  return h;
}

HomotopyMapReport check_homotopy_map(const MapWitness& h, std::span<const double> scales,
                                     std::size_t properness_center) {
  HomotopyMapReport report;
  report.uniformity = uniformity_control(h, scales);
  report.properness = properness_profile(h, scales, properness_center);
  return report;
}

std::size_t HomotopyFamily::grid_index(double t) const {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (approx_eq(grid[i], t)) return i;
  }
  throw std::out_of_range("parameter not on the family grid");
}

std::vector<double> default_parameter_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 16; ++k) grid.push_back(k / 16.0);
  return grid;
}

namespace {

void check_family(const HomotopyFamily& fam) {
  if (fam.grid.empty() || fam.grid.size() != fam.maps.size()) {
    throw std::invalid_argument("homotopy family: grid/map length mismatch");
  }
  if (!approx_eq(fam.grid.front(), 0) || !approx_eq(fam.grid.back(), 1)) {
    throw std::invalid_argument("homotopy family: grid must include parameters 0 and 1");
  }
  for (std::size_t i = 0; i + 1 < fam.grid.size(); ++i) {
    if (!(fam.grid[i] < fam.grid[i + 1])) {
      throw std::invalid_argument("homotopy family: grid must be sorted ascending");
    }
  }
  for (const auto& m : fam.maps) {
    check_witness(m);
    if (!same_space(m.source, fam.maps.front().source) ||
        !same_space(m.target, fam.maps.front().target)) {
      throw std::invalid_argument("homotopy family: members disagree on source/target");
    }
  }
}

// Nearest grid entry, ties to the smaller parameter.
std::size_t nearest_grid(std::span<const double> grid, double t) {
  std::size_t best = 0;
  double best_d = std::fabs(grid[0] - t);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double d = std::fabs(grid[i] - t);
    if (d < best_d - kTol) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

MapWitness family_to_map(const HomotopyFamily& fam, const Cylinder& cyl) {
  check_family(fam);
  if (!same_space(fam.maps.front().source, cyl.prod.left)) {
    throw std::invalid_argument("family_to_map: family is not over the cylinder's space");
  }
  MapWitness h{cyl.prod.space, fam.maps.front().target,
               std::vector<std::size_t>(cyl.prod.pairs.size())};
  for (std::size_t row = 0; row < cyl.prod.pairs.size(); ++row) {
    const auto [x, cp] = cyl.prod.pairs[row];
    const std::size_t g = nearest_grid(fam.grid, cyl.cone.param[cp]);
    h.map[row] = fam.maps[g].map[x];
  }
  return h;
}

namespace {

int select_level(const Cylinder& cyl, LevelSelector selector, int constant_level,
                 std::size_t x) {
  if (selector == LevelSelector::Constant) {
    if (constant_level < 1 || constant_level > cyl.cone.levels) {
      throw std::invalid_argument("map_to_family: constant level outside 1..N");
    }
    return constant_level;
  }
  const double d = cyl.prod.left->dist(x, cyl.prod.p);
  const int lvl = static_cast<int>(std::floor(d + kTol));
  return std::clamp(lvl, 1, cyl.cone.levels);
}

}  // namespace

HomotopyFamily map_to_family(const MapWitness& h, const Cylinder& cyl,
                             std::span<const double> grid, LevelSelector selector,
                             int constant_level, double rate_budget) {
  check_witness(h);
  if (!same_space(h.source, cyl.prod.space)) {
    throw std::invalid_argument("map_to_family: h is not defined on the cylinder");
  }
  HomotopyFamily fam;
  fam.grid.assign(grid.begin(), grid.end());
  fam.rate_budget = rate_budget;
  const std::size_t nx = cyl.prod.left->size();
  for (double t : grid) {
    MapWitness ht{cyl.prod.left, h.target, std::vector<std::size_t>(nx)};
    for (std::size_t x = 0; x < nx; ++x) {
      const int lvl = select_level(cyl, selector, constant_level, x);
      // Snap t to the level's grid {0, 1/lvl, ..., 1}; ties toward 0.
      int k = static_cast<int>(std::floor(t * lvl + 0.5 - kTol));
      k = std::clamp(k, 0, lvl);
      const std::size_t cp = cyl.cone.point_at(lvl, k);
      const auto row = cyl.prod.pair_index(x, cp);
      if (!row) {
        std::ostringstream msg;
        msg << "map_to_family: selector pair (" << cyl.prod.left->label(x) << ", "
            << cyl.cone.space->label(cp) << ") is outside the product";
        throw std::invalid_argument(msg.str());
      }
      ht.map[x] = h.map[*row];
    }
    fam.maps.push_back(std::move(ht));
  }
  check_family(fam);
  return fam;
}

RoundTripReport map_family_round_trip(const MapWitness& h, const Cylinder& cyl,
                                      std::span<const double> grid, LevelSelector selector,
                                      int constant_level) {
  const HomotopyFamily fam = map_to_family(h, cyl, grid, selector, constant_level);
  const MapWitness back = family_to_map(fam, cyl);

  RoundTripReport report{};
  report.closeness = closeness_constant(back, h);

  // Evaluation displacement: reconstructing at (x,(s,i)) read h at
  // (x,(snap_level(t*), i_x)) with t* the grid parameter nearest s.
  double disp = 0;
  for (std::size_t row = 0; row < cyl.prod.pairs.size(); ++row) {
    const auto [x, cp] = cyl.prod.pairs[row];
    const double t = fam.grid[nearest_grid(fam.grid, cyl.cone.param[cp])];
    const int lvl = select_level(cyl, selector, constant_level, x);
    int k = static_cast<int>(std::floor(t * lvl + 0.5 - kTol));
    k = std::clamp(k, 0, lvl);
    const std::size_t cp2 = cyl.cone.point_at(lvl, k);
    const auto row2 = cyl.prod.pair_index(x, cp2);
    if (!row2) continue;  // map_to_family would have thrown already
    disp = std::max(disp, cyl.prod.space->dist(row, *row2));
  }
  report.max_displacement = disp;
  const std::vector<double> scales{disp};
  report.seam_bound = uniformity_control(h, scales).at(disp);
  return report;
}

FamilyConditionReport check_family_condition(const HomotopyFamily& fam,
                                             const std::vector<std::vector<std::size_t>>& rays,
                                             std::span<const double> test_params,
                                             std::optional<double> baseline, double tol) {
  check_family(fam);
  if (!(fam.rate_budget > 0)) {
    throw std::invalid_argument("check_family_condition: rate budget must be positive");
  }
  std::vector<double> params(test_params.begin(), test_params.end());
  if (params.empty()) params = fam.grid;

  const MetricSpace& target = *fam.maps.front().target;
  FamilyConditionReport report;
  report.per_param.assign(params.size(), 0.0);

  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    const double t = params[pi];
    // The reference member h_t only exists for grid parameters.
    std::optional<std::size_t> t_ref;
    for (std::size_t g = 0; g < fam.grid.size(); ++g) {
      if (approx_eq(fam.grid[g], t)) t_ref = g;
    }
    if (!t_ref) {
      std::ostringstream msg;
      msg << "check_family_condition: parameter t=" << t
          << " is not on the family grid (grid too coarse to test it)";
      throw std::invalid_argument(msg.str());
    }
    double worst = 0;
    for (const auto& ray : rays) {
      for (std::size_t i = 1; i < ray.size(); ++i) {
        const double window = fam.rate_budget / static_cast<double>(i);
        const std::size_t xi = ray[i];
        for (std::size_t g = 0; g < fam.grid.size(); ++g) {
          if (!(std::fabs(fam.grid[g] - t) < window - kTol)) continue;
          worst = std::max(worst,
                           target.dist(fam.maps[g].map[xi], fam.maps[*t_ref].map[xi]));
        }
      }
    }
    report.per_param[pi] = worst;
    report.fitted_bound = std::max(report.fitted_bound, worst);
  }
  report.pass = !baseline || report.fitted_bound <= *baseline + tol;
  return report;
}

FlasqueReport certify_flasque(const FlasqueWitness& w, std::span<const double> ball_radii,
                              std::span<const double> scales, std::size_t ball_center) {
  check_witness(w.shift);
  if (!same_space(w.shift.source, w.shift.target) || !same_space(w.shift.source, w.space)) {
    throw std::invalid_argument("certify_flasque: shift must be a self-map of the space");
  }
  if (w.iterate_cap < 1) throw std::invalid_argument("certify_flasque: iterate cap must be >= 1");
  const MetricSpace& X = *w.space;
  const std::size_t n = X.size();

  FlasqueReport report;
  report.closeness = closeness_constant(w.shift, identity_witness(w.space));

  // Iterated maps; image sets only shrink, so the first empty intersection
  // stays empty.
  std::vector<std::vector<std::size_t>> iterates{w.shift.map};
  for (int k = 1; k < w.iterate_cap; ++k) {
    const auto& prev = iterates.back();
    std::vector<std::size_t> next(n);
    for (std::size_t x = 0; x < n; ++x) next[x] = w.shift.map[prev[x]];
    if (next == prev) break;  // reached a fixed composite; nothing changes past here
    iterates.push_back(std::move(next));
  }

  report.escape_ok = true;
  for (double r : ball_radii) {
    const auto B = ball(X, ball_center, r);
    std::vector<bool> in_ball(n, false);
    for (std::size_t b : B) in_ball[b] = true;
    int first_empty = -1;
    for (std::size_t k = 0; k < iterates.size(); ++k) {
      bool hit = false;
      for (std::size_t x = 0; x < n && !hit; ++x) hit = in_ball[iterates[k][x]];
      if (!hit) {
        first_empty = static_cast<int>(k) + 1;  // iterate index n = k+1 applications
        break;
      }
    }
    if (first_empty < 0) {
      // The terminal composite still meets the ball: iterates never leave.
      report.escape_ok = false;
      report.failed_radius = r;
      for (std::size_t x = 0; x < n; ++x) {
        if (in_ball[iterates.back()[x]]) {
          report.witness_point = iterates.back()[x];
          break;
        }
      }
      report.escape.push_back({r, -1});
    } else {
      report.escape.push_back({r, first_empty});
    }
  }

  // One control for every iterate: entrywise sup of the measured uniformity
  // tables (identity included as iterate 0).
  std::vector<double> sup(scales.size(), 0.0);
  {
    const MapWitness id = identity_witness(w.space);
    std::vector<const std::vector<std::size_t>*> all{&id.map};
    for (const auto& it : iterates) all.push_back(&it);
    for (const auto* m : all) {
      MapWitness wit{w.space, w.space, *m};
      const ControlTable tab = uniformity_control(wit, scales);
      for (std::size_t s = 0; s < scales.size(); ++s) {
        sup[s] = std::max(sup[s], tab.bound(s));
      }
    }
  }
  report.union_control = ControlTable(std::vector<double>(scales.begin(), scales.end()),
                                      std::move(sup));
  report.pass = report.escape_ok;
  return report;
}

SpacePtr max_product_with_zplus(const SpacePtr& X, int cap) {
  if (!X || X->size() == 0) throw std::invalid_argument("max_product_with_zplus: empty space");
  if (cap < 0) throw std::invalid_argument("max_product_with_zplus: negative cap");
  const std::size_t n = X->size();
  const std::size_t m = static_cast<std::size_t>(cap) + 1;
  std::vector<std::string> labels;
  labels.reserve(n * m);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < m; ++i) {
      labels.push_back("(" + X->label(x) + "," + std::to_string(i) + ")");
    }
  }
  std::vector<double> table(n * m * n * m);
  parallel_for(n * m, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      const std::size_t xa = a / m, ia = a % m;
      for (std::size_t b = 0; b < n * m; ++b) {
        const std::size_t xb = b / m, ib = b % m;
        const double dz = ia > ib ? static_cast<double>(ia - ib) : static_cast<double>(ib - ia);
        table[a * n * m + b] = std::max(X->dist(xa, xb), dz);
      }
    }
  });
  return make_space(std::move(labels), std::move(table));
}

FlasqueHomotopy flasque_homotopy(const FlasqueWitness& w, int zplus_cap, int cone_levels,
                                 double R, Combiner comb) {
  check_witness(w.shift);
  if (zplus_cap > w.iterate_cap) {
    throw std::invalid_argument("flasque_homotopy: zplus cap exceeds the iterate cap");
  }
  const std::size_t n = w.space->size();
  const std::size_t m = static_cast<std::size_t>(zplus_cap) + 1;

  FlasqueHomotopy out;
  out.product = max_product_with_zplus(w.space, zplus_cap);
  out.cylinder = build_cylinder(out.product, 0, build_interval_cone(cone_levels), R, comb);

  // shift^k as index tables, k = 0..zplus_cap.
  std::vector<std::vector<std::size_t>> power(m);
  power[0].resize(n);
  for (std::size_t x = 0; x < n; ++x) power[0][x] = x;
  for (std::size_t k = 1; k < m; ++k) {
    power[k].resize(n);
    for (std::size_t x = 0; x < n; ++x) power[k][x] = w.shift.map[power[k - 1][x]];
  }

  out.collapse = MapWitness{out.product, w.space, std::vector<std::size_t>(n * m)};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < m; ++i) out.collapse.map[x * m + i] = power[i][x];
  }
  out.section = MapWitness{w.space, out.product, std::vector<std::size_t>(n)};
  for (std::size_t x = 0; x < n; ++x) out.section.map[x] = x * m + 0;

  out.h = MapWitness{out.cylinder.prod.space, out.product,
                     std::vector<std::size_t>(out.cylinder.prod.pairs.size())};
  out.t0_identity = true;
  out.t1_section_collapse = true;
  for (std::size_t row = 0; row < out.cylinder.prod.pairs.size(); ++row) {
    const auto [xz, cp] = out.cylinder.prod.pairs[row];
    const std::size_t x = xz / m;
    const long i = static_cast<long>(xz % m);
    const long k = out.cylinder.cone.numerator[cp];
    const long lvl = out.cylinder.cone.level[cp];
    const long forward = (k * i) / lvl;          // floor(t * i), exact
    const long remain = ((lvl - k) * i) / lvl;   // floor((1-t) * i), exact
    if (forward >= static_cast<long>(m)) {
      throw std::invalid_argument("flasque_homotopy: iterate cap exceeded");
    }
    out.h.map[row] = power[static_cast<std::size_t>(forward)][x] * m +
                     static_cast<std::size_t>(remain);
    if (k == 0 && out.h.map[row] != xz) out.t0_identity = false;
    if (k == lvl && out.h.map[row] != out.section.map[out.collapse.map[xz]]) {
      out.t1_section_collapse = false;
    }
  }
  return out;
}

}  // namespace coarse

#include "coarse/product.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coarse/common.hpp"
#include "coarse/generators.hpp"
#include "coarse/geodesic.hpp"
#include "coarse/parallel.hpp"

namespace coarse {

double combine(Combiner comb, double a, double b) {
  return comb == Combiner::Max ? std::max(a, b) : a + b;
}

std::string combiner_name(Combiner comb) { return comb == Combiner::Max ? "max" : "sum"; }

std::optional<std::size_t> ProductSpace::pair_index(std::size_t x, std::size_t y) const {
  auto it = lookup_.find(x * right->size() + y);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

MapWitness floor_distance_map(const SpacePtr& space, std::size_t p) {
  if (!space || p >= space->size()) {
    throw std::invalid_argument("floor_distance_map: basepoint not in space");
  }
  const int top = static_cast<int>(std::ceil(space->diameter() - kTol));
  SpacePtr target = make_zplus(top);
  MapWitness w{space, target, std::vector<std::size_t>(space->size())};
  for (std::size_t x = 0; x < space->size(); ++x) {
    w.map[x] = static_cast<std::size_t>(std::floor(space->dist(x, p) + kTol));
  }
  return w;
}

double default_product_tolerance(const SpacePtr& right) {
  return connectivity_threshold(*right) + 1;
}

ProductSpace build_product(const SpacePtr& left, std::size_t p, const SpacePtr& right,
                           std::size_t q, double R, Combiner comb) {
  if (!left || !right) throw std::invalid_argument("build_product: missing factor");
  if (p >= left->size() || q >= right->size()) {
    throw std::invalid_argument("build_product: basepoint out of range");
  }
  if (R < 0) throw std::invalid_argument("build_product: negative tolerance");

  ProductSpace prod;
  prod.left = left;
  prod.right = right;
  prod.p = p;
  prod.q = q;
  prod.tolerance = R;
  prod.combiner = comb;
  prod.right_connectivity = connectivity_threshold(*right);

  for (std::size_t x = 0; x < left->size(); ++x) {
    const double dx = left->dist(x, p);
    for (std::size_t y = 0; y < right->size(); ++y) {
      if (leq(std::fabs(dx - right->dist(y, q)), R)) {
        prod.lookup_.emplace(x * right->size() + y, prod.pairs.size());
        prod.pairs.emplace_back(x, y);
      }
    }
  }
  if (prod.pairs.empty()) {
    throw std::invalid_argument("build_product: empty pair set (tolerance too small)");
  }

  const std::size_t m = prod.pairs.size();
  std::vector<std::string> labels;
  labels.reserve(m);
  for (const auto& [x, y] : prod.pairs) {
    labels.push_back("(" + left->label(x) + "," + right->label(y) + ")");
  }
  std::vector<double> table(m * m);
  parallel_for(m, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      const auto [xa, ya] = prod.pairs[a];
      for (std::size_t b = 0; b < m; ++b) {
        const auto [xb, yb] = prod.pairs[b];
        table[a * m + b] = combine(comb, left->dist(xa, xb), right->dist(ya, yb));
      }
    }
  });
  prod.space = make_space(std::move(labels), std::move(table));

  prod.proj_left = MapWitness{prod.space, left, {}};
  prod.proj_right = MapWitness{prod.space, right, {}};
  prod.proj_left.map.reserve(m);
  prod.proj_right.map.reserve(m);
  for (const auto& [x, y] : prod.pairs) {
    prod.proj_left.map.push_back(x);
    prod.proj_right.map.push_back(y);
  }
  return prod;
}

namespace {

void require_same_factors(const ProductSpace& a, const ProductSpace& b) {
  if (!same_space(a.left, b.left) || !same_space(a.right, b.right) ||
      a.combiner != b.combiner) {
    throw std::invalid_argument("products do not share factors and combiner");
  }
}

// Max over pairs of `from` of the combined distance to the nearest pair of
// `to` (metric taken in `to`'s combiner, which equals `from`'s).
double pair_set_defect(const ProductSpace& from, const ProductSpace& to) {
  double worst = 0;
  for (const auto& [xa, ya] : from.pairs) {
    double best = kInf;
    for (const auto& [xb, yb] : to.pairs) {
      best = std::min(best, combine(to.combiner, to.left->dist(xa, xb), to.right->dist(ya, yb)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double inclusion_constant(const ProductSpace& small, const ProductSpace& big) {
  require_same_factors(small, big);
  if (small.p != big.p || small.q != big.q) {
    throw std::invalid_argument("inclusion_constant: basepoints differ (use containment_defect)");
  }
  if (small.tolerance > big.tolerance + kTol) {
    throw std::invalid_argument("inclusion_constant: small tolerance exceeds big tolerance");
  }
  return pair_set_defect(big, small);
}

double containment_defect(const ProductSpace& a, const ProductSpace& b) {
  require_same_factors(a, b);
  return pair_set_defect(a, b);
}

MediateResult mediate(const MapWitness& f, const MapWitness& g, const ProductSpace& prod,
                      double c) {
  check_witness(f);
  check_witness(g);
  if (!same_space(f.source, g.source)) {
    throw std::invalid_argument("mediate: f and g have different sources");
  }
  if (!same_space(f.target, prod.left) || !same_space(g.target, prod.right)) {
    throw std::invalid_argument("mediate: targets do not match the product factors");
  }
  if (c < 0) throw std::invalid_argument("mediate: negative slack");
  if (c > prod.tolerance + kTol) {
    throw std::invalid_argument("mediate: slack exceeds the product tolerance");
  }

  const MetricSpace& left = *prod.left;
  const MetricSpace& right = *prod.right;
  const std::size_t nz = f.map.size();

  MediateResult out;
  out.corrected_g = MapWitness{f.source, prod.right, std::vector<std::size_t>(nz)};
  out.mediating = MapWitness{f.source, prod.space, std::vector<std::size_t>(nz)};
  out.correction = 0;
  out.compatibility = 0;

  for (std::size_t z = 0; z < nz; ++z) {
    const double radius = left.dist(f.map[z], prod.p);
    out.compatibility =
        std::max(out.compatibility, std::fabs(radius - right.dist(g.map[z], prod.q)));

    // Candidate right-factor points on the radius shell at slack c; nearest
    // to g(z), canonical tie-break.
    bool found = false;
    std::size_t best = 0;
    double best_d = kInf;
    for (std::size_t y = 0; y < right.size(); ++y) {
      if (!leq(std::fabs(radius - right.dist(y, prod.q)), c)) continue;
      const double d = right.dist(y, g.map[z]);
      if (!found || d < best_d - kTol) {
        found = true;
        best = y;
        best_d = d;
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "mediate: no right-factor candidate at slack " << c << " for source point "
          << f.source->label(z) << " (radius " << radius << "); try a larger slack";
      throw std::invalid_argument(msg.str());
    }
    out.corrected_g.map[z] = best;
    out.correction = std::max(out.correction, best_d);
    const auto idx = prod.pair_index(f.map[z], best);
    if (!idx) {
      throw std::invalid_argument("mediate: corrected pair not in the product (internal)");
    }
    out.mediating.map[z] = *idx;
  }
  return out;
}

MediatorComparison mediator_uniqueness(const MapWitness& h, const MapWitness& f,
                                       const MapWitness& g, const MediateResult& mediated,
                                       const ProductSpace& prod) {
  check_witness(h);
  if (!same_space(h.target, prod.space)) {
    throw std::invalid_argument("mediator_uniqueness: h does not land in the product");
  }
  MediatorComparison out{};
  out.left_closeness = closeness_constant(compose(h, prod.proj_left), f);
  out.right_closeness = closeness_constant(compose(h, prod.proj_right), g);
  out.constant = closeness_constant(h, mediated.mediating);
  out.bound = out.left_closeness + out.right_closeness + mediated.correction;
  return out;
}

MapWitness canonical_embed(const SpacePtr& space, std::size_t p, const ProductSpace& prod) {
  if (!same_space(space, prod.left)) {
    throw std::invalid_argument("canonical_embed: product was not built over this space");
  }
  MapWitness w{space, prod.space, std::vector<std::size_t>(space->size())};
  for (std::size_t x = 0; x < space->size(); ++x) {
    const auto radius =
        static_cast<std::size_t>(std::floor(space->dist(x, p) + kTol));
    if (radius >= prod.right->size()) {
      throw std::invalid_argument("canonical_embed: right factor truncated below radius " +
                                  std::to_string(radius));
    }
    const auto idx = prod.pair_index(x, radius);
    if (!idx) {
      throw std::invalid_argument(
          "canonical_embed: pair (" + space->label(x) + "," + std::to_string(radius) +
          ") missing from the product; increase the tolerance");
    }
    w.map[x] = *idx;
  }
  return w;
}

}  // namespace coarse

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coarse/control_table.hpp"
#include "coarse/metric_space.hpp"

namespace coarse {

/// A total point map between finite metric spaces. The coarse-map conditions
/// are never assumed; they are measured by the control functions below.
struct MapWitness {
  SpacePtr source;
  SpacePtr target;
  std::vector<std::size_t> map;  // source index -> target index

  std::size_t operator()(std::size_t i) const { return map[i]; }
  std::size_t apply(std::size_t i) const { return map[i]; }
};

MapWitness identity_witness(const SpacePtr& space);
MapWitness constant_witness(const SpacePtr& source, const SpacePtr& target, std::size_t value);

/// Same underlying space: pointer-identical, or equal labels and tables.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Validates totality and range; throws std::invalid_argument.
void check_witness(const MapWitness& w);

/// g after f; requires f.target == g.source.
MapWitness compose(const MapWitness& f, const MapWitness& g);

/// entry(k) = max { d(f x, f y) : d(x,y) <= k } — the least uniformity
/// control of the map on this space. scales must be sorted ascending.
/// Throws std::invalid_argument on an empty source.
ControlTable uniformity_control(const MapWitness& w, std::span<const double> scales);

/// entry(l) = diameter of the preimage of B(center, l); 0 for an empty
/// preimage. The measured properness profile.
ControlTable properness_profile(const MapWitness& w, std::span<const double> radii,
                                std::size_t center);

/// entry(r) = max { d(x,x') : d(f x, f x') <= r } — how far apart points can
/// be while their images stay r-close.
ControlTable injectivity_control(const MapWitness& w, std::span<const double> scales);

/// max_x d(f x, g x). Throws on mismatched source/target.
double closeness_constant(const MapWitness& f, const MapWitness& g);

/// max over target points of the distance to the image set (0 if onto).
double surjectivity_constant(const MapWitness& w);

struct QuasiInverse {
  MapWitness inverse;        // g(y) = canonical argmin_x d(f x, y)
  double forward_identity;   // closeness_constant(f o g, id_target)
  double backward_identity;  // closeness_constant(g o f, id_source)
};

QuasiInverse quasi_inverse(const MapWitness& w);

/// entry(r) = phiX(varphi(r + 2K)) + 2 on the given output scales, with
/// upward grid snapping inside both tables. Throws std::out_of_range when a
/// query leaves a table's grid.
ControlTable transport_upper_control(const ControlTable& phiX, double K,
                                     const ControlTable& varphi,
                                     std::span<const double> scales);

}  // namespace coarse

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarse/map_witness.hpp"
#include "coarse/metric_space.hpp"

namespace coarse {

/// Metric on pairs; max keeps both projections exactly 1-Lipschitz, sum is
/// the coarsely equivalent alternative.
enum class Combiner { Max, Sum };

double combine(Combiner comb, double a, double b);
std::string combiner_name(Combiner comb);

/// The asymptotic product X*Y at basepoints (p,q) and tolerance R: all pairs
/// (x,y) with |d(x,p) - d(y,q)| <= R, carrying the combined metric.
struct ProductSpace {
  SpacePtr left, right;
  std::size_t p = 0, q = 0;
  double tolerance = 0;  // R
  Combiner combiner = Combiner::Max;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // lexicographic
  SpacePtr space;          // metric space over the pairs, labels "(x,y)"
  MapWitness proj_left;    // space -> left
  MapWitness proj_right;   // space -> right
  double right_connectivity = 0;  // connectivity threshold of the right factor

  std::optional<std::size_t> pair_index(std::size_t x, std::size_t y) const;

 private:
  friend ProductSpace build_product(const SpacePtr&, std::size_t, const SpacePtr&, std::size_t,
                                    double, Combiner);
  std::unordered_map<std::size_t, std::size_t> lookup_;  // x*|right|+y -> pair row
};

/// Radius map x -> floor(d(x,p)) into zplus truncated at ceil(diameter).
MapWitness floor_distance_map(const SpacePtr& space, std::size_t p);

/// The spec'd default "R large enough": connectivity_threshold(right) + 1.
double default_product_tolerance(const SpacePtr& right);

/// Throws std::invalid_argument when the pair set is empty (R too small).
ProductSpace build_product(const SpacePtr& left, std::size_t p, const SpacePtr& right,
                           std::size_t q, double R, Combiner comb = Combiner::Max);

/// Surjectivity constant of the inclusion of the smaller-tolerance product
/// into the larger: max distance (in big's metric) from a big pair to the
/// small pair set. Requires identical factors, basepoints and combiner and
/// small.tolerance <= big.tolerance.
double inclusion_constant(const ProductSpace& small, const ProductSpace& big);

/// Max distance (in b's metric) from a pair of a to the pair set of b; 0
/// certifies a's pair set sits inside b's. Factors and combiner must match;
/// basepoints and tolerances may differ.
double containment_defect(const ProductSpace& a, const ProductSpace& b);

struct MediateResult {
  MapWitness mediating;   // Z -> product space, z -> (f z, corrected g z)
  MapWitness corrected_g; // Z -> right factor
  double correction;      // K = max_z d(corrected_g z, g z)
  double compatibility;   // measured R_comp = max_z |d(f z,p) - d(g z,q)|
};

/// Mediating map of the pullback property: first component is f exactly; the
/// right component is the candidate y with |d(f z,p) - d(y,q)| <= c nearest
/// to g z (canonical tie-break). Throws std::invalid_argument when some z has
/// no candidate at slack c (suggesting a larger c) or when c > R.
MediateResult mediate(const MapWitness& f, const MapWitness& g, const ProductSpace& prod,
                      double c);

struct MediatorComparison {
  double constant;               // closeness(h, mediating)
  double bound;                  // left + right + K
  double left_closeness;         // closeness(proj_left o h, f)
  double right_closeness;        // closeness(proj_right o h, g)
};

/// How close an arbitrary h: Z -> product with nearly-commuting projections
/// is to the mediating map, versus the derived bound.
MediatorComparison mediator_uniqueness(const MapWitness& h, const MapWitness& f,
                                       const MapWitness& g, const MediateResult& mediated,
                                       const ProductSpace& prod);

/// x -> (x, floor(d(x,p))) into a product of space with zplus. Throws if a
/// required pair is missing (R too small for the floor slack).
MapWitness canonical_embed(const SpacePtr& space, std::size_t p, const ProductSpace& prod);

}  // namespace coarse

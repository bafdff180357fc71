#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coarse/control_table.hpp"
#include "coarse/map_witness.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/product.hpp"

namespace coarse {

/// Euclidean-cone distance between (x,i) and (y,j) at base distance
/// base_dist: sqrt(i^2 + j^2 - (2 - base_dist^2) i j). Levels start at 1;
/// level 0 is rejected.
double cone_metric(double base_dist, int level_i, int level_j);

/// Cone over a base: points (x, i) for levels i = 1..N. Two modes:
///  - interval base: level i samples [0,1] at {0, 1/i, ..., 1}, base
///    distance |s - t|;
///  - finite base: every level carries the base space T.
/// Labels "<k>/<i>@<i>" (interval) or "<x>@<i>" (finite base).
struct ConeSpace {
  SpacePtr space;
  int levels = 0;
  bool interval_base = true;
  SpacePtr base;                 // finite-base mode only
  std::vector<int> level;        // per point
  std::vector<int> numerator;    // interval: k of k/i; finite: base index
  std::vector<double> param;     // interval: k/i; finite: 0

  /// Interval mode: index of the point k/i at level i; throws if absent.
  std::size_t point_at(int level, int k) const;
  double base_dist(std::size_t a, std::size_t b) const;
};

/// Throws std::invalid_argument carrying the witness triple if the cone
/// metric fails validation (possible when the base diameter exceeds 2).
ConeSpace build_interval_cone(int levels);
ConeSpace build_cone(const SpacePtr& base, int levels);

struct ConeEntourageReport {
  bool pass = false;
  double fitted_rate = 0;         // least c with d_T(x,y) <= c/level on all pairs
  double fitted_rate_prefix = 0;  // same, first half of the list
  long level_gap = 0;             // max |n_i - m_i|
  long level_gap_prefix = 0;
};

/// Entourage criterion for a pair list in a cone: the level gap and the
/// fitted 1/level rate must both stabilize between the first half of the
/// list and the whole list.
ConeEntourageReport cone_entourage_check(
    const ConeSpace& cone, std::span<const std::pair<std::size_t, std::size_t>> pairs);

/// X * cone(T) with its cone kept alongside; the stage on which homotopies
/// live. Basepoint on the cone side is (0, 1), the canonical first point.
struct Cylinder {
  ProductSpace prod;
  ConeSpace cone;
};

Cylinder build_cylinder(const SpacePtr& X, std::size_t p, ConeSpace cone, double R,
                        Combiner comb = Combiner::Max);

/// The close => homotopic construction: value f(x) on the parameter-0 slice
/// and g(x) elsewhere. f, g must share source (= X of the cylinder) and
/// target.
MapWitness homotopy_from_close(const MapWitness& f, const MapWitness& g, const Cylinder& cyl);

struct HomotopyMapReport {
  ControlTable uniformity;
  ControlTable properness;
};

/// Measured controls of a candidate homotopy h (or any witness): uniformity
/// on the given scales and the properness profile at the target center.
HomotopyMapReport check_homotopy_map(const MapWitness& h, std::span<const double> scales,
                                     std::size_t properness_center);

/// A parameter family of maps h_t: X -> Y on a sorted grid containing 0 and
/// 1. rate_budget is the 1/level convergence allowance of the family
/// condition.
struct HomotopyFamily {
  std::vector<double> grid;
  std::vector<MapWitness> maps;
  double rate_budget = 1;

  std::size_t grid_index(double t) const;  // exact member lookup; throws
};

/// Default parameter grid {k/16 : k = 0..16}.
std::vector<double> default_parameter_grid();

/// Family -> map on the cylinder: at (x,(s,i)) evaluate the family member
/// whose parameter is nearest to s (ties to the smaller parameter).
MapWitness family_to_map(const HomotopyFamily& fam, const Cylinder& cyl);

enum class LevelSelector {
  FloorDistance,  // i_x = clamp(floor(d(x,p)), 1, N)
  Constant,       // i_x = fixed level (exact round trips on a k/N-compatible grid)
};

/// Map -> family: h_t(x) = h(x, (s, i_x)) where s is t snapped to the grid
/// of level i_x (ties down). Throws std::invalid_argument when the selector
/// produces a pair outside the product.
HomotopyFamily map_to_family(const MapWitness& h, const Cylinder& cyl,
                             std::span<const double> grid, LevelSelector selector,
                             int constant_level = -1, double rate_budget = 1);

struct RoundTripReport {
  double closeness;         // distance between original and reconstructed map
  double max_displacement;  // largest cylinder-metric evaluation displacement
  double seam_bound;        // uniformity of the original at that displacement
};

/// map -> family -> map comparison.
RoundTripReport map_family_round_trip(const MapWitness& h, const Cylinder& cyl,
                                      std::span<const double> grid, LevelSelector selector,
                                      int constant_level = -1);

struct FamilyConditionReport {
  double fitted_bound = 0;            // worst discrepancy over rays/levels/params
  std::vector<double> per_param;      // indexed like test params
  bool pass = false;                  // stability against the baseline (if any)
};

/// The varying-parameter homotopy condition along rays: at ray index i,
/// parameters within rate_budget/i of t must give images uniformly close to
/// h_t. The fitted bound is returned; pass means it did not grow beyond
/// baseline + tol (pass is vacuous without a baseline — stability is a
/// tower-level judgement). Throws std::invalid_argument when some tested
/// parameter has no admissible grid member at some level (grid too coarse).
FamilyConditionReport check_family_condition(const HomotopyFamily& fam,
                                             const std::vector<std::vector<std::size_t>>& rays,
                                             std::span<const double> test_params = {},
                                             std::optional<double> baseline = std::nullopt,
                                             double tol = 1e-9);

/// Shift witness for flasque certification; iterates are precomputed up to
/// iterate_cap.
struct FlasqueWitness {
  SpacePtr space;
  MapWitness shift;
  int iterate_cap = 0;
};

struct EscapeEntry {
  double radius;
  int first_empty;  // least N with shift^n(X) disjoint from the ball for n >= N
};

struct FlasqueReport {
  bool pass = false;
  double closeness = 0;  // d(shift, id)
  std::vector<EscapeEntry> escape;
  ControlTable union_control;  // sup_n uniformity of shift^n
  bool escape_ok = false;
  double failed_radius = 0;        // when !escape_ok
  std::size_t witness_point = 0;   // image point still inside the ball at the cap
};

/// Certifies the three flasque conditions on one space: closeness to the
/// identity, eventual escape of iterate images from every tested ball, and a
/// single control dominating every iterate. Balls are centered at
/// ball_center with the given radii.
FlasqueReport certify_flasque(const FlasqueWitness& w, std::span<const double> ball_radii,
                              std::span<const double> scales, std::size_t ball_center = 0);

/// Plain product X x zplus(cap) with the max metric, labels "(x,i)".
SpacePtr max_product_with_zplus(const SpacePtr& X, int cap);

struct FlasqueHomotopy {
  SpacePtr product;     // X x Z+
  Cylinder cylinder;    // (X x Z+) * cone
  MapWitness h;         // cylinder -> product: ((x,i),(t,j)) -> (shift^{floor(t i)} x, floor((1-t) i))
  MapWitness collapse;  // (x,i) -> shift^i(x)
  MapWitness section;   // x -> (x,0)
  bool t0_identity = false;          // parameter-0 slice is the identity
  bool t1_section_collapse = false;  // parameter-1 slice is section o collapse
};

/// The explicit homotopy contracting a flasque space's zplus factor. Throws
/// when a required iterate exceeds w.iterate_cap.
FlasqueHomotopy flasque_homotopy(const FlasqueWitness& w, int zplus_cap, int cone_levels,
                                 double R, Combiner comb = Combiner::Max);

}  // namespace coarse

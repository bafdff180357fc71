#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coarse/control_table.hpp"
#include "coarse/metric_space.hpp"

namespace coarse {

/// Candidate coarse ray: points r_0..r_m extracted at step c with cover
/// radius r0 from a basepoint.
struct RaySequence {
  std::vector<std::size_t> points;
  double step;       // c
  double radius;     // r0
  std::size_t base;  // r_0
};

struct RayCriterionReport {
  bool pass = false;
  // Window condition: every consecutive step has d <= c.
  bool is_c_path = false;
  std::size_t bad_step = 0;  // first violating index when !is_c_path
  // Control condition: phi(d(x_i,x_j)) >= |i-j|+1 for all i<j.
  bool criterion_holds = false;
  std::size_t bad_i = 0, bad_j = 0;  // first violating pair
  // Measured uniformity: max over i<j of d(x_i,x_j) - c*|i-j| (<= 0 when the
  // linear bound d(x_i,x_j) <= c|i-j| holds).
  double uniformity_excess = 0;
};

/// The ray criterion: the sequence is a c-path and the control inequality
/// phi(d(x_i,x_j)) >= |i-j|+1 holds for every window. Throws
/// std::out_of_range if phi's grid cannot answer a required query.
RayCriterionReport check_ray_criterion(std::span<const std::size_t> seq,
                                       const MetricSpace& space, double c,
                                       const ControlTable& phi);

/// Partition of the space by minimal c-path hop count from base.
struct LevelSets {
  std::vector<std::int32_t> level;              // per point; -1 unreachable
  std::vector<std::vector<std::size_t>> sets;   // sets[i] = points at hop i
  std::vector<std::size_t> unreachable;
};

/// Throws std::invalid_argument listing unreachable points when the space is
/// not c-path connected from base (use compute_level_sets for the lenient
/// form).
LevelSets level_sets(const MetricSpace& space, std::size_t base, double c);
LevelSets compute_level_sets(const MetricSpace& space, std::size_t base, double c);

enum class BranchRule {
  TailCount,  // keep the cover ball whose descendants hold the most tail members
  MaxDepth,   // variant: keep the ball whose descendants reach deepest
};

struct RayExtraction {
  RaySequence ray;
  double entourage_constant;                  // = r0
  std::vector<std::size_t> covered_indices;   // seq indices within r0 of ray+branch levels
  std::vector<std::size_t> branch_sizes;      // |V_i| per extracted level (V_0 = whole space)
  // Per ray index i >= 1: min over exact level-i minimal-path ancestors of a
  // surviving deep point of d(., r_i); the measured prefix-to-minimal-path
  // closeness (expected <= r0 by construction).
  std::vector<double> prefix_witness_distance;
  std::size_t depth = 0;  // last extracted level
};

/// Constructive ray extraction: breadth levels C_i from seq[0], greedy r0-ball
/// covers of C_i inside the current branch, branch choice by tail retention
/// (ties to canonical center order). The sequence must escape: it has to
/// reach distance >= diameter/2 from seq[0]. Throws std::invalid_argument on
/// a bounded sequence or when no branch retains the tail before the tail's
/// deepest level (reporting the depth reached).
RayExtraction extract_ray(const MetricSpace& space, std::span<const std::size_t> seq,
                          double r0, double c, BranchRule rule = BranchRule::TailCount);

}  // namespace coarse

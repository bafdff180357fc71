#pragma once

#include <span>
#include <string>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

/// {0..n} with d(i,j) = |i-j|. Labels "0".."n".
SpacePtr make_zplus(int n);

/// {-half..half}^2 with the l1 metric. Labels "(i,j)".
SpacePtr make_grid2_l1(int half);

/// Complete rooted binary tree of the given depth, unit edges, path metric.
/// Labels: root "r", children append "0"/"1"; breadth-first canonical order.
SpacePtr make_binary_tree(int depth);

/// Word-metric ball of the given radius in the free group on two generators
/// (a 4-regular tree). Labels are reduced words over a,A,b,B ("e" = identity).
SpacePtr make_cayley_ball_f2(int radius);

/// Word-metric ball of radius n in Z^2 with standard generators (an l1
/// diamond). Labels "(i,j)".
SpacePtr make_cayley_ball_z2(int radius);

/// Same point set with every distance multiplied by factor > 0.
SpacePtr scale_metric(const SpacePtr& space, double factor);

/// Dispatch by family name: "zplus", "grid2_l1", "binary_tree",
/// "cayley_ball" (optional sub-spec "f2" default, or "z2").
SpacePtr make_model_space(const std::string& family, int size, const std::string& variant = "");

/// Nested truncations of one unbounded model space. embeddings[k] maps level
/// k point indices to level k+1 indices and is isometric onto its image.
struct Tower {
  std::string family;
  std::vector<int> sizes;
  std::vector<SpacePtr> levels;
  std::vector<std::vector<std::size_t>> embeddings;
};

/// Builds a tower for strictly increasing sizes; throws std::invalid_argument
/// for unknown families, non-increasing sizes, or (defensively) if a level
/// fails to embed isometrically in the next.
Tower make_tower(const std::string& family, std::span<const int> sizes,
                 const std::string& variant = "");

}  // namespace coarse

#include "coarse/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "coarse/common.hpp"

namespace coarse {

namespace {

std::string pair_label(int i, int j) {
  std::ostringstream out;
  out << "(" << i << "," << j << ")";
  return out.str();
}

}  // namespace

SpacePtr make_zplus(int n) {
  if (n < 0) throw std::invalid_argument("zplus: negative size");
  std::vector<std::string> labels;
  labels.reserve(n + 1);
  for (int i = 0; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<double> table(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      table[static_cast<std::size_t>(i) * (n + 1) + j] = std::abs(i - j);
  return make_space(std::move(labels), std::move(table));
}

SpacePtr make_grid2_l1(int half) {
  if (half < 0) throw std::invalid_argument("grid2_l1: negative size");
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> coords;
  for (int i = -half; i <= half; ++i) {
    for (int j = -half; j <= half; ++j) {
      labels.push_back(pair_label(i, j));
      coords.emplace_back(i, j);
    }
  }
  const std::size_t n = coords.size();
  std::vector<double> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = std::abs(coords[a].first - coords[b].first) +
                         std::abs(coords[a].second - coords[b].second);
  return make_space(std::move(labels), std::move(table));
}

SpacePtr make_binary_tree(int depth) {
  if (depth < 0) throw std::invalid_argument("binary_tree: negative depth");
  // Breadth-first enumeration; label = "r" + bit string of the path, so the
  // longest common prefix of two labels is their lowest common ancestor.
  std::vector<std::string> labels;
  labels.push_back("r");
  for (int d = 1; d <= depth; ++d) {
    const std::size_t level_begin = labels.size() - (std::size_t{1} << (d - 1));
    const std::size_t level_end = labels.size();
    for (std::size_t p = level_begin; p < level_end; ++p) {
      labels.push_back(labels[p] + "0");
      labels.push_back(labels[p] + "1");
    }
  }
  const std::size_t n = labels.size();
  // Path distance via longest common prefix of the label strings.
  std::vector<double> table(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::string& u = labels[a];
      const std::string& v = labels[b];
      std::size_t common = 0;
      while (common < u.size() && common < v.size() && u[common] == v[common]) ++common;
      const double d = static_cast<double>((u.size() - common) + (v.size() - common));
      table[a * n + b] = d;
      table[b * n + a] = d;
    }
  }
  return make_space(std::move(labels), std::move(table));
}

SpacePtr make_cayley_ball_f2(int radius) {
  if (radius < 0) throw std::invalid_argument("cayley_ball: negative radius");
  // Reduced words over {a,A,b,B}; word metric is tree distance.
  std::vector<std::string> labels{"e"};
  std::vector<std::string> frontier{""};
  const std::string gens = "aAbB";
  auto inverse = [](char g) {
    switch (g) {
      case 'a': return 'A';
      case 'A': return 'a';
      case 'b': return 'B';
      default: return 'b';
    }
  };
  for (int r = 1; r <= radius; ++r) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      for (char g : gens) {
        if (!w.empty() && w.back() == inverse(g)) continue;
        next.push_back(w + g);
      }
    }
    for (const auto& w : next) labels.push_back(w);
    frontier = std::move(next);
  }
  const std::size_t n = labels.size();
  auto word = [](const std::string& label) -> std::string {
    return label == "e" ? std::string() : label;
  };
  std::vector<double> table(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::string u = word(labels[a]);
      const std::string v = word(labels[b]);
      std::size_t common = 0;
      while (common < u.size() && common < v.size() && u[common] == v[common]) ++common;
      const double d = static_cast<double>((u.size() - common) + (v.size() - common));
      table[a * n + b] = d;
      table[b * n + a] = d;
    }
  }
  return make_space(std::move(labels), std::move(table));
}

SpacePtr make_cayley_ball_z2(int radius) {
  if (radius < 0) throw std::invalid_argument("cayley_ball: negative radius");
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> coords;
  for (int i = -radius; i <= radius; ++i) {
    for (int j = -radius; j <= radius; ++j) {
      if (std::abs(i) + std::abs(j) > radius) continue;
      labels.push_back(pair_label(i, j));
      coords.emplace_back(i, j);
    }
  }
  const std::size_t n = coords.size();
  std::vector<double> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = std::abs(coords[a].first - coords[b].first) +
                         std::abs(coords[a].second - coords[b].second);
  return make_space(std::move(labels), std::move(table));
}

SpacePtr scale_metric(const SpacePtr& space, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("scale_metric: factor must be positive");
  std::vector<double> table = space->table();
  for (double& d : table) d *= factor;
  return make_space(space->labels(), std::move(table));
}

SpacePtr make_model_space(const std::string& family, int size, const std::string& variant) {
  if (family == "zplus") return make_zplus(size);
  if (family == "grid2_l1") return make_grid2_l1(size);
  if (family == "binary_tree") return make_binary_tree(size);
  if (family == "cayley_ball") {
    if (variant.empty() || variant == "f2") return make_cayley_ball_f2(size);
    if (variant == "z2") return make_cayley_ball_z2(size);
    throw std::invalid_argument("cayley_ball: unknown group spec '" + variant + "'");
  }
  throw std::invalid_argument("unknown model-space family: " + family);
}

Tower make_tower(const std::string& family, std::span<const int> sizes,
                 const std::string& variant) {
  if (sizes.empty()) throw std::invalid_argument("make_tower: empty size list");
  Tower tower;
  tower.family = family;
  tower.sizes.assign(sizes.begin(), sizes.end());
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    if (sizes[k] >= sizes[k + 1]) {
      throw std::invalid_argument("make_tower: sizes must be strictly increasing");
    }
  }
  for (int s : sizes) tower.levels.push_back(make_model_space(family, s, variant));
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    if (tower.levels[k]->size() >= tower.levels[k + 1]->size()) {
      throw std::invalid_argument("make_tower: level sizes must strictly increase");
    }
  }

  // Embeddings by shared labels; verified isometric onto the image.
  for (std::size_t k = 0; k + 1 < tower.levels.size(); ++k) {
    const MetricSpace& lo = *tower.levels[k];
    const MetricSpace& hi = *tower.levels[k + 1];
    std::vector<std::size_t> emb(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) emb[i] = hi.index_of(lo.label(i));
    for (std::size_t i = 0; i < lo.size(); ++i) {
      for (std::size_t j = 0; j < lo.size(); ++j) {
        if (!approx_eq(lo.dist(i, j), hi.dist(emb[i], emb[j]))) {
          throw std::invalid_argument("make_tower: embedding is not isometric at level " +
                                      std::to_string(k));
        }
      }
    }
    tower.embeddings.push_back(std::move(emb));
  }
  return tower;
}

}  // namespace coarse

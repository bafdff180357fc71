#include "coarse/rays.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "coarse/common.hpp"
#include "coarse/geodesic.hpp"
#include "coarse/nets.hpp"

namespace coarse {

RayCriterionReport check_ray_criterion(std::span<const std::size_t> seq,
                                       const MetricSpace& space, double c,
                                       const ControlTable& phi) {
  RayCriterionReport report;
  report.is_c_path = true;
  report.criterion_holds = true;
  const std::size_t m = seq.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (!leq(space.dist(seq[i], seq[i + 1]), c)) {
      report.is_c_path = false;
      report.bad_step = i;
      break;
    }
  }
  double excess = -kInf;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = space.dist(seq[i], seq[j]);
      excess = std::max(excess, d - c * static_cast<double>(j - i));
      if (report.criterion_holds && phi.at(d) + kTol < static_cast<double>(j - i) + 1) {
        report.criterion_holds = false;
        report.bad_i = i;
        report.bad_j = j;
      }
    }
  }
  report.uniformity_excess = (m < 2) ? 0 : excess;
  report.pass = report.is_c_path && report.criterion_holds;
  return report;
}

LevelSets compute_level_sets(const MetricSpace& space, std::size_t base, double c) {
  if (base >= space.size()) throw std::out_of_range("level_sets: base out of range");
  LevelSets out;
  out.level = cpath_hops_from(space, c, base);
  std::int32_t max_level = 0;
  for (std::size_t i = 0; i < out.level.size(); ++i) {
    if (out.level[i] < 0) {
      out.unreachable.push_back(i);
    } else {
      max_level = std::max(max_level, out.level[i]);
    }
  }
  out.sets.resize(static_cast<std::size_t>(max_level) + 1);
  for (std::size_t i = 0; i < out.level.size(); ++i) {
    if (out.level[i] >= 0) out.sets[static_cast<std::size_t>(out.level[i])].push_back(i);
  }
  return out;
}

LevelSets level_sets(const MetricSpace& space, std::size_t base, double c) {
  LevelSets out = compute_level_sets(space, base, c);
  if (!out.unreachable.empty()) {
    std::ostringstream msg;
    msg << "level_sets: " << out.unreachable.size() << " point(s) unreachable from "
        << space.label(base) << " at step " << c << ":";
    for (std::size_t i = 0; i < out.unreachable.size() && i < 8; ++i) {
      msg << " " << space.label(out.unreachable[i]);
    }
    throw std::invalid_argument(msg.str());
  }
  return out;
}

RayExtraction extract_ray(const MetricSpace& space, std::span<const std::size_t> seq,
                          double r0, double c, BranchRule rule) {
  if (seq.empty()) throw std::invalid_argument("extract_ray: empty sequence");
  if (r0 < 0 || c < 0) throw std::invalid_argument("extract_ray: negative parameter");
  const std::size_t n = space.size();
  const std::size_t base = seq[0];

  // Escape certificate: the sequence must reach distance >= diameter/2 from
  // its start (attaining the bound counts; center-based model spaces have
  // eccentricity exactly diameter/2).
  double reach = 0;
  for (std::size_t s : seq) reach = std::max(reach, space.dist(base, s));
  const double needed = space.diameter() / 2;
  if (reach < needed - kTol) {
    std::ostringstream msg;
    msg << "extract_ray: sequence is bounded: reaches " << reach << " from "
        << space.label(base) << ", needs " << needed;
    throw std::invalid_argument(msg.str());
  }

  const LevelSets levels = level_sets(space, base, c);
  const auto hops = cpath_hops_all(space, c);
  // Minimal-path partial order: y <= z iff level(y) + hops(y,z) == level(z).
  auto below = [&](std::size_t y, std::size_t z) {
    return levels.level[y] + hops[y * n + z] == levels.level[z] && hops[y * n + z] >= 0;
  };

  const std::size_t tail_start = seq.size() / 2;
  std::int32_t max_tail_level = 0;
  for (std::size_t k = tail_start; k < seq.size(); ++k) {
    max_tail_level = std::max(max_tail_level, levels.level[seq[k]]);
  }

  RayExtraction out;
  out.ray.step = c;
  out.ray.radius = r0;
  out.ray.base = base;
  out.ray.points.push_back(base);
  out.entourage_constant = r0;
  out.branch_sizes.push_back(n);

  std::vector<bool> in_branch(n, true);
  std::vector<std::size_t> branch_level_points{base};  // union of level-restricted branch sets

  std::vector<std::size_t> scratch_members;
  for (std::int32_t i = 1; i <= max_tail_level; ++i) {
    scratch_members.clear();
    for (std::size_t x : levels.sets[static_cast<std::size_t>(i)]) {
      if (in_branch[x]) scratch_members.push_back(x);
    }
    if (scratch_members.empty()) {
      std::ostringstream msg;
      msg << "extract_ray: branch died at level " << i << " (depth reached " << (i - 1)
          << " of " << max_tail_level << ")";
      throw std::invalid_argument(msg.str());
    }
    const CoverResult cover = covering_number(space, scratch_members, r0);

    std::size_t best_center = 0;
    long best_score = -1;
    std::vector<bool> best_branch;
    std::vector<std::size_t> best_gen;
    for (std::size_t center : cover.centers) {
      // Ball members at this exact level inside the current branch; their
      // minimal-path descendants form the candidate branch.
      std::vector<std::size_t> gen;
      for (std::size_t y : scratch_members) {
        if (leq(space.dist(center, y), r0)) gen.push_back(y);
      }
      std::vector<bool> cand(n, false);
      for (std::size_t x = 0; x < n; ++x) {
        if (!in_branch[x]) continue;
        for (std::size_t y : gen) {
          if (below(y, x)) {
            cand[x] = true;
            break;
          }
        }
      }
      long score = 0;
      if (rule == BranchRule::TailCount) {
        for (std::size_t k = tail_start; k < seq.size(); ++k) {
          if (cand[seq[k]]) ++score;
        }
      } else {
        for (std::size_t x = 0; x < n; ++x) {
          if (cand[x]) score = std::max(score, static_cast<long>(levels.level[x]));
        }
      }
      const bool better =
          score > best_score || (score == best_score && center < best_center);
      if (better) {
        best_score = score;
        best_center = center;
        best_branch = std::move(cand);
        best_gen = std::move(gen);
      }
    }
    if (rule == BranchRule::TailCount && best_score <= 0) {
      std::ostringstream msg;
      msg << "extract_ray: no branch retains tail members at level " << i
          << " (depth reached " << (i - 1) << " of " << max_tail_level << ")";
      throw std::invalid_argument(msg.str());
    }

    out.ray.points.push_back(best_center);
    in_branch = std::move(best_branch);
    out.branch_sizes.push_back(
        static_cast<std::size_t>(std::count(in_branch.begin(), in_branch.end(), true)));
    branch_level_points.insert(branch_level_points.end(), best_gen.begin(), best_gen.end());
  }
  out.depth = out.ray.points.size() - 1;

  // Deepest surviving branch point witnesses the prefix-closeness of the ray:
  // for each level i, some exact level-i ancestor of it lies within r0 of r_i.
  std::size_t deep = base;
  for (std::size_t x = 0; x < n; ++x) {
    if (in_branch[x] && levels.level[x] > levels.level[deep]) deep = x;
  }
  out.prefix_witness_distance.assign(out.depth + 1, 0.0);
  for (std::size_t i = 1; i <= out.depth; ++i) {
    double best = kInf;
    for (std::size_t y : levels.sets[i]) {
      if (below(y, deep)) best = std::min(best, space.dist(y, out.ray.points[i]));
    }
    out.prefix_witness_distance[i] = best;
  }

  for (std::size_t k = 0; k < seq.size(); ++k) {
    double best = kInf;
    for (std::size_t r : out.ray.points) best = std::min(best, space.dist(seq[k], r));
    for (std::size_t p : branch_level_points) best = std::min(best, space.dist(seq[k], p));
    if (leq(best, r0)) out.covered_indices.push_back(k);
  }
  return out;
}

}  // namespace coarse

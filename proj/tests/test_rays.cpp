#include <doctest.h>

#include <cmath>

#include "coarse/common.hpp"
#include "coarse/generators.hpp"
#include "coarse/geodesic.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/rays.hpp"

using namespace coarse;

namespace {

std::vector<std::size_t> all_points_ascending(const MetricSpace& space) {
  std::vector<std::size_t> out(space.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

ControlTable padded_control(const MetricSpace& space, double c, double pad) {
  const auto grid = integer_scales(space.diameter());
  const auto phi = upper_control(space, c, integer_scales(space.diameter() + pad));
  std::vector<double> bounds;
  for (double s : grid) bounds.push_back(phi.at(s + pad));
  return ControlTable(grid, bounds);
}

}  // namespace

TEST_CASE("ray criterion on identity, constant, and stretched sequences") {
  const auto z = make_zplus(12);
  const auto grid = integer_scales(12);
  std::vector<double> plus_one;
  for (double s : grid) plus_one.push_back(s + 1);
  const ControlTable phi(grid, plus_one);

  const auto seq = all_points_ascending(*z);
  const auto ok = check_ray_criterion(seq, *z, 1, phi);
  CHECK(ok.pass);
  CHECK(ok.uniformity_excess <= kTol);

  const std::vector<std::size_t> constant(8, 3);
  const auto bad = check_ray_criterion(constant, *z, 1, phi);
  CHECK(!bad.pass);
  CHECK(bad.is_c_path);           // steps of length zero are fine
  CHECK(!bad.criterion_holds);    // the control inequality fails at long range

  // i -> 2i at step 2 with the matched control ceil(r/2)+1
  const auto z2 = make_zplus(24);
  std::vector<std::size_t> stretched;
  for (std::size_t i = 0; i <= 12; ++i) stretched.push_back(2 * i);
  const auto grid2 = integer_scales(24);
  std::vector<double> half_up;
  for (double s : grid2) half_up.push_back(std::ceil(s / 2) + 1);
  const ControlTable phi2(grid2, half_up);
  const auto rep = check_ray_criterion(stretched, *z2, 2, phi2);
  CHECK(rep.pass);

  // control grid too small for the realized distances
  const ControlTable tiny({0.0, 1.0}, {1.0, 2.0});
  CHECK_THROWS_AS(check_ray_criterion(seq, *z, 1, tiny), std::out_of_range);
}

TEST_CASE("level sets on a segment") {
  const auto z = make_zplus(10);
  const auto l1 = level_sets(*z, 0, 1);
  for (std::size_t i = 0; i <= 10; ++i) {
    REQUIRE(l1.sets[i].size() == 1);
    CHECK(l1.sets[i][0] == i);
  }

  const auto l2 = level_sets(*z, 0, 2);
  CHECK(l2.sets[0] == std::vector<std::size_t>{0});
  CHECK(l2.sets[1] == std::vector<std::size_t>{1, 2});
  CHECK(l2.sets[2] == std::vector<std::size_t>{3, 4});
  CHECK(l2.sets[3] == std::vector<std::size_t>{5, 6});
}

TEST_CASE("level sets report unreachable points") {
  const auto s = make_space({"0", "10", "11"}, {0, 10, 11, 10, 0, 1, 11, 1, 0});
  CHECK_THROWS_WITH_AS(level_sets(*s, 0, 1), doctest::Contains("unreachable"),
                       std::invalid_argument);
  const auto lenient = compute_level_sets(*s, 0, 1);
  CHECK(lenient.unreachable.size() == 2);
}

TEST_CASE("ray extraction on a segment recovers the whole axis") {
  const auto z = make_zplus(32);
  const auto seq = all_points_ascending(*z);
  const auto ext = extract_ray(*z, seq, 1, 1);
  CHECK(ext.ray.points == all_points_ascending(*z));
  CHECK(ext.covered_indices.size() == seq.size());
  CHECK(ext.entourage_constant == 1);

  const auto padded = padded_control(*z, 1, 2.0);
  CHECK(check_ray_criterion(ext.ray.points, *z, 1 + 2.0, padded).pass);
}

TEST_CASE("bounded sequences are rejected") {
  const auto z = make_zplus(32);
  const std::vector<std::size_t> bounded{0, 1, 2, 3};
  CHECK_THROWS_WITH_AS(extract_ray(*z, bounded, 1, 1), doctest::Contains("bounded"),
                       std::invalid_argument);
}

TEST_CASE("ray extraction follows the populated branch of a tree") {
  const auto tree = make_binary_tree(6);
  // Walk down the all-left branch: labels r, r0, r00, ...
  std::vector<std::size_t> seq;
  std::string label = "r";
  seq.push_back(tree->index_of(label));
  for (int d = 1; d <= 6; ++d) {
    label += "0";
    seq.push_back(tree->index_of(label));
  }
  const auto ext = extract_ray(*tree, seq, 1, 1);
  REQUIRE(ext.ray.points.size() == 7);
  // The extracted ray stays within r0 of the branch points.
  for (std::size_t i = 0; i < ext.ray.points.size(); ++i) {
    CHECK(tree->dist(ext.ray.points[i], seq[i]) <= 1 + kTol);
  }
  for (std::size_t i = 1; i <= ext.depth; ++i) {
    CHECK(ext.prefix_witness_distance[i] <= ext.ray.radius + kTol);
  }
  // Branch sets are nested by construction; sizes must not grow.
  for (std::size_t i = 0; i + 1 < ext.branch_sizes.size(); ++i) {
    CHECK(ext.branch_sizes[i + 1] <= ext.branch_sizes[i]);
  }
  const auto padded = padded_control(*tree, 1, 2.0);
  CHECK(check_ray_criterion(ext.ray.points, *tree, 3.0, padded).pass);
}

TEST_CASE("branch starvation is reported with the depth reached") {
  const auto tree = make_binary_tree(6);
  // Tail dominated by shallow left nodes, with one deep right outlier that
  // certifies escape; after the left branch wins, deeper levels lose the
  // tail.
  std::vector<std::size_t> seq{
      tree->index_of("r"),       tree->index_of("r1"),   tree->index_of("r0"),
      tree->index_of("r00"),     tree->index_of("r000"), tree->index_of("r00"),
      tree->index_of("r000"),    tree->index_of("r00"),  tree->index_of("r000"),
      tree->index_of("r111111"),  // escape witness, but a tail minority
  };
  CHECK_THROWS_WITH_AS(extract_ray(*tree, seq, 1, 1),
                       doctest::Contains("no branch retains"), std::invalid_argument);
}

TEST_CASE("ray extraction on the grid diagonal") {
  const auto grid = make_grid2_l1(6);
  std::vector<std::size_t> seq;
  for (int a = -6; a <= 6; ++a) {
    seq.push_back(grid->index_of("(" + std::to_string(a) + "," + std::to_string(a) + ")"));
  }
  const auto ext = extract_ray(*grid, seq, 1, 1);
  CHECK(ext.depth == 24);  // base (-6,-6) to (6,6) in l1 hops
  for (std::size_t i = 1; i <= ext.depth; ++i) {
    CHECK(ext.prefix_witness_distance[i] <= ext.ray.radius + kTol);
  }
  // Tail of the diagonal is near the extracted ray.
  std::size_t near = 0;
  for (std::size_t k = seq.size() / 2; k < seq.size(); ++k) {
    double best = kInf;
    for (std::size_t r : ext.ray.points) best = std::min(best, grid->dist(seq[k], r));
    if (best <= ext.ray.radius + ext.ray.step + kTol) ++near;
  }
  CHECK(near * 2 >= (seq.size() - seq.size() / 2));
  const auto padded = padded_control(*grid, 1, 2.0);
  CHECK(check_ray_criterion(ext.ray.points, *grid, 3.0, padded).pass);
}

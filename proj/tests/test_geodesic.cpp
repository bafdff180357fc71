#include <doctest.h>

#include <cmath>
#include <random>

#include "coarse/common.hpp"
#include "coarse/generators.hpp"
#include "coarse/geodesic.hpp"
#include "coarse/metric_space.hpp"

using namespace coarse;

namespace {

SpacePtr powers_of_two() {
  // {1,2,4,8} with |.|
  return make_space({"1", "2", "4", "8"},
                    {0, 1, 3, 7, 1, 0, 2, 6, 3, 2, 0, 4, 7, 6, 4, 0});
}

}  // namespace

TEST_CASE("min_cpath on a segment") {
  const auto z = make_zplus(10);
  const auto p1 = min_cpath(*z, 1, 0, 5);
  REQUIRE(p1.has_value());
  CHECK(p1->points == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});

  const auto p2 = min_cpath(*z, 2, 0, 5);
  REQUIRE(p2.has_value());
  CHECK(p2->hops() == 3);
  CHECK(p2->points.front() == 0);
  CHECK(p2->points.back() == 5);
  for (std::size_t i = 0; i + 1 < p2->points.size(); ++i) {
    CHECK(z->dist(p2->points[i], p2->points[i + 1]) <= 2);
  }

  // determinism
  CHECK(min_cpath(*z, 2, 0, 5)->points == p2->points);
}

TEST_CASE("min_cpath is absent across a gap") {
  const auto s = powers_of_two();
  CHECK(!min_cpath(*s, 1, s->index_of("2"), s->index_of("4")).has_value());
}

TEST_CASE("connectivity thresholds") {
  CHECK(connectivity_threshold(*make_zplus(12)) == 1);
  CHECK(connectivity_threshold(*powers_of_two()) == 4);
  CHECK(connectivity_threshold(*make_zplus(0)) == 0);
  CHECK(connectivity_threshold(*make_grid2_l1(3)) == 1);
}

TEST_CASE("upper control of a segment and the grid") {
  const auto z = make_zplus(12);
  const auto phi = upper_control(*z, 1, integer_scales(12));
  for (std::size_t i = 0; i < phi.size(); ++i) CHECK(phi.bound(i) == phi.scale(i) + 1);
  CHECK(phi.at(0) == 1);  // the trivial one-point path

  const auto grid = make_grid2_l1(3);
  const auto phig = upper_control(*grid, 1, integer_scales(12));
  for (std::size_t i = 0; i < phig.size(); ++i) CHECK(phig.bound(i) == phig.scale(i) + 1);

  CHECK_THROWS_WITH_AS(upper_control(*powers_of_two(), 1, integer_scales(7)),
                       doctest::Contains("coarsely connected"), std::invalid_argument);
}

TEST_CASE("upper control dominates the step lower bound") {
  const auto z = make_zplus(15);
  for (double c : {1.0, 2.0, 3.0}) {
    const auto phi = upper_control(*z, c, integer_scales(15));
    for (std::size_t i = 0; i < phi.size(); ++i) {
      CHECK(phi.bound(i) >= std::ceil(phi.scale(i) / c) - kTol);
    }
  }
}

TEST_CASE("geodesify a segment at step 1") {
  const auto z = make_zplus(4);
  const auto real = geodesify(z, 1, 2);
  CHECK(real.edges.size() == 4);
  CHECK(real.space->size() == 9);  // 5 vertices + 4 midpoints
  CHECK(real.space->dist(real.vertex_point(0), real.vertex_point(4)) == 4.0);
  CHECK(validate_metric(*real.space).ok());
  CHECK(real.space->find("e:0:1:1/2").has_value());
}

TEST_CASE("geodesify edge census at step 2 and the one-point case") {
  const auto z = make_zplus(4);
  const auto real = geodesify(z, 2, 1);
  CHECK(real.edges.size() == 7);  // pairs with |i-j| <= 2, i < j

  const auto one = geodesify(make_zplus(0), 1, 2);
  CHECK(one.space->size() == 1);
  CHECK(one.edges.empty());

  CHECK_THROWS_AS(geodesify(powers_of_two(), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(geodesify(z, 1, 0), std::invalid_argument);
}

TEST_CASE("nearest_vertex: vertices, midpoints, quarter points") {
  const auto z = make_zplus(4);
  const auto real = geodesify(z, 1, 4);
  // vertex goes to itself
  CHECK(nearest_vertex(real, real.vertex_point(2)) == 2);
  // interior points of edge (1,2): k/4 for k=1..3
  const std::size_t first_interior = 5;  // vertices occupy 0..4
  for (std::size_t t = 0; t < real.points.size(); ++t) {
    if (real.points[t].is_vertex) continue;
    const auto [x, y] = real.edges[real.points[t].edge];
    const double pos = static_cast<double>(real.points[t].k) / real.subdivision;
    if (pos < 0.5) {
      CHECK(nearest_vertex(real, t) == x);
    } else if (pos > 0.5) {
      CHECK(nearest_vertex(real, t) == y);
    } else {
      CHECK(nearest_vertex(real, t) == x);  // tie goes to the smaller endpoint
    }
  }
  (void)first_interior;
}

TEST_CASE("realization collapse obeys the uniformity bound") {
  for (double c : {1.0, 2.0}) {
    for (int m : {1, 2, 4}) {
      const auto z = make_zplus(12);
      const auto real = geodesify(z, c, m);
      const auto& R = *real.space;
      for (std::size_t s = 0; s < R.size(); ++s) {
        for (std::size_t t = 0; t < R.size(); ++t) {
          const double n = std::ceil(R.dist(s, t) - kTol);
          const double base_d =
              z->dist(nearest_vertex(real, s), nearest_vertex(real, t));
          CHECK(base_d <= (n + 1) * c + kTol);
        }
      }
    }
  }
}

TEST_CASE("realization preimages stay within the control bound") {
  const auto z = make_zplus(12);
  const double c = 2;
  const auto real = geodesify(z, c, 2);
  const auto phi = upper_control(*z, c, distance_scales(*z));
  const auto& R = *real.space;
  for (std::size_t s = 0; s < R.size(); ++s) {
    for (std::size_t t = 0; t < R.size(); ++t) {
      const double k = z->dist(nearest_vertex(real, s), nearest_vertex(real, t));
      CHECK(R.dist(s, t) <= phi.at(k) + 1 + kTol);
    }
  }
}

TEST_CASE("collapse witness is a stable coarse equivalence across a tower") {
  for (const char* family : {"zplus", "grid2_l1"}) {
    const bool grid = std::string(family) == "grid2_l1";
    const std::vector<int> sizes = grid ? std::vector<int>{2, 3} : std::vector<int>{8, 16};
    for (double c : {1.0, 2.0}) {
      double prev_fwd = -1, prev_bwd = -1;
      for (int size : sizes) {
        const auto space = make_model_space(family, size);
        const auto real = geodesify(space, c, 2);
        const auto qi = quasi_inverse(nearest_vertex_map(real));
        if (prev_fwd >= 0) {
          CHECK(qi.forward_identity == prev_fwd);
          CHECK(qi.backward_identity == prev_bwd);
        }
        prev_fwd = qi.forward_identity;
        prev_bwd = qi.backward_identity;
      }
    }
  }
}

TEST_CASE("level structure of breadth search matches hop counts") {
  const auto z = make_zplus(10);
  const auto hops = cpath_hops_from(*z, 2, 0);
  CHECK(hops[0] == 0);
  CHECK(hops[1] == 1);
  CHECK(hops[2] == 1);
  CHECK(hops[3] == 2);
  CHECK(hops[10] == 5);
}

TEST_CASE("connectivity transfers through a surjective uniform map") {
  // Replay of the invariance argument: push a c-path through f and patch the
  // endpoints; every step stays within max(K, d).
  std::mt19937 rng(17);
  const auto src = make_zplus(32);
  const auto tgt = make_zplus(16);
  std::uniform_int_distribution<int> noise(-2, 2);
  const double c = connectivity_threshold(*src);
  for (int trial = 0; trial < 10; ++trial) {
    MapWitness f{src, tgt, {}};
    for (std::size_t x = 0; x <= 32; ++x) {
      const int v = static_cast<int>(x) / 2 + noise(rng);
      f.map.push_back(static_cast<std::size_t>(std::clamp(v, 0, 16)));
    }
    const double K = surjectivity_constant(f);
    const double d = uniformity_control(f, std::vector<double>{c}).at(c);
    const double e = std::max(K, d);
    CHECK(connectivity_threshold(*tgt) <= e + kTol);

    std::uniform_int_distribution<std::size_t> pick(0, tgt->size() - 1);
    for (int rep = 0; rep < 5; ++rep) {
      const std::size_t y = pick(rng), y2 = pick(rng);
      // nearest preimage representatives
      std::size_t x = 0, x2 = 0;
      for (std::size_t i = 0; i <= 32; ++i) {
        if (tgt->dist(f.map[i], y) < tgt->dist(f.map[x], y)) x = i;
        if (tgt->dist(f.map[i], y2) < tgt->dist(f.map[x2], y2)) x2 = i;
      }
      const auto path = min_cpath(*src, c, x, x2);
      REQUIRE(path.has_value());
      std::vector<std::size_t> replay{y};
      for (std::size_t a : path->points) replay.push_back(f.map[a]);
      replay.push_back(y2);
      for (std::size_t i = 0; i + 1 < replay.size(); ++i) {
        CHECK(tgt->dist(replay[i], replay[i + 1]) <= e + kTol);
      }
    }
  }
}

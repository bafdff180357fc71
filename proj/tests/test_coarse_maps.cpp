#include <doctest.h>

#include <cmath>
#include <random>

#include "coarse/common.hpp"
#include "coarse/generators.hpp"
#include "coarse/map_witness.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/nets.hpp"
#include "coarse/product.hpp"

using namespace coarse;

namespace {

MapWitness random_map(std::mt19937& rng, const SpacePtr& src, const SpacePtr& tgt) {
  std::uniform_int_distribution<std::size_t> pick(0, tgt->size() - 1);
  MapWitness w{src, tgt, std::vector<std::size_t>(src->size())};
  for (auto& v : w.map) v = pick(rng);
  return w;
}

}  // namespace

TEST_CASE("uniformity control of basic maps") {
  const auto z = make_zplus(16);
  const auto scales = integer_scales(16);

  const auto phi_id = uniformity_control(identity_witness(z), scales);
  for (std::size_t i = 0; i < phi_id.size(); ++i) CHECK(phi_id.bound(i) == phi_id.scale(i));

  const auto z2 = make_zplus(32);
  MapWitness doubling{z, z2, {}};
  for (std::size_t x = 0; x <= 16; ++x) doubling.map.push_back(2 * x);
  const auto phi_d = uniformity_control(doubling, scales);
  for (std::size_t i = 0; i < phi_d.size(); ++i) CHECK(phi_d.bound(i) == 2 * phi_d.scale(i));

  CHECK_THROWS_AS(uniformity_control(MapWitness{make_zplus(-0), z, {}}, scales),
                  std::invalid_argument);
}

TEST_CASE("every measured table is monotone in scale") {
  std::mt19937 rng(23);
  const auto grid = make_grid2_l1(3);
  const auto z = make_zplus(12);
  const auto scales = distance_scales(*grid);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_map(rng, grid, z);
    const auto phi = uniformity_control(f, scales);
    for (std::size_t i = 0; i + 1 < phi.size(); ++i) CHECK(phi.bound(i) <= phi.bound(i + 1));
    const auto inj = injectivity_control(f, integer_scales(12));
    for (std::size_t i = 0; i + 1 < inj.size(); ++i) CHECK(inj.bound(i) <= inj.bound(i + 1));
  }
}

TEST_CASE("properness profiles") {
  const auto z = make_zplus(20);
  const auto radii = integer_scales(20);

  const auto prop_id = properness_profile(identity_witness(z), radii, 10);
  for (std::size_t i = 0; i < prop_id.size(); ++i) {
    CHECK(prop_id.bound(i) <= 2 * prop_id.scale(i));
  }

  const auto c = constant_witness(z, z, 0);
  const auto prop_c = properness_profile(c, radii, 0);
  for (std::size_t i = 0; i < prop_c.size(); ++i) CHECK(prop_c.bound(i) == 20);

  MapWitness halve{z, z, {}};
  for (std::size_t x = 0; x <= 20; ++x) halve.map.push_back(x / 2);
  const auto prop_h = properness_profile(halve, radii, 0);
  for (std::size_t i = 0; i < prop_h.size(); ++i) {
    CHECK(prop_h.bound(i) <= 2 * prop_h.scale(i) + 1);
  }
  // empty preimage: center far from the image
  const auto prop_far = properness_profile(halve, std::vector<double>{0.0}, 20);
  CHECK(prop_far.bound(0) == 0);
}

TEST_CASE("injectivity controls") {
  const auto z = make_zplus(20);
  const auto scales = integer_scales(20);

  const auto inj_id = injectivity_control(identity_witness(z), scales);
  for (std::size_t i = 0; i < inj_id.size(); ++i) CHECK(inj_id.bound(i) == inj_id.scale(i));

  const auto inj_c = injectivity_control(constant_witness(z, z, 0), scales);
  CHECK(inj_c.at(0) == 20);  // whole space collapses

  MapWitness halve{z, z, {}};
  for (std::size_t x = 0; x <= 20; ++x) halve.map.push_back(x / 2);
  const auto inj_h = injectivity_control(halve, scales);
  for (std::size_t i = 0; i < inj_h.size(); ++i) {
    CHECK(inj_h.bound(i) == std::min(2 * inj_h.scale(i) + 1, 20.0));
  }
}

TEST_CASE("closeness constant") {
  const auto z = make_zplus(10);
  const auto id = identity_witness(z);
  CHECK(closeness_constant(id, id) == 0);

  MapWitness shift3{z, z, {}};
  for (std::size_t x = 0; x <= 10; ++x) shift3.map.push_back(std::min<std::size_t>(x + 3, 10));
  CHECK(closeness_constant(id, shift3) == 3);
  CHECK(closeness_constant(shift3, id) == 3);

  CHECK_THROWS_AS(closeness_constant(id, identity_witness(make_zplus(11))),
                  std::invalid_argument);
}

TEST_CASE("closeness is a pseudometric on maps (triangle by addition)") {
  std::mt19937 rng(5);
  const auto z = make_zplus(20);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_map(rng, z, z);
    const auto g = random_map(rng, z, z);
    const auto h = random_map(rng, z, z);
    const double fg = closeness_constant(f, g);
    const double gh = closeness_constant(g, h);
    const double fh = closeness_constant(f, h);
    CHECK(fg == closeness_constant(g, f));
    CHECK(fh <= fg + gh + kTol);
  }
}

TEST_CASE("floor-distance closeness under a basepoint change") {
  const auto grid = make_grid2_l1(4);
  const std::size_t p = grid->index_of("(0,0)");
  const std::size_t p2 = grid->index_of("(1,2)");
  const auto rp = floor_distance_map(grid, p);
  const auto rp2 = floor_distance_map(grid, p2);
  CHECK(closeness_constant(rp, rp2) <= grid->dist(p, p2) + 1 + kTol);
}

TEST_CASE("surjectivity constant") {
  const auto z = make_zplus(10);
  CHECK(surjectivity_constant(identity_witness(z)) == 0);

  // inclusion of the evens
  std::vector<std::size_t> evens{0, 2, 4, 6, 8, 10};
  const auto sub = subspace(*z, evens);
  MapWitness incl{sub, z, evens};
  CHECK(surjectivity_constant(incl) == 1);

  // greedy-net inclusion stays within epsilon
  for (double eps : {1.0, 2.0, 3.0}) {
    const auto net = greedy_net(*z, eps);
    const auto net_space = subspace(*z, net.net);
    MapWitness ni{net_space, z, net.net};
    CHECK(surjectivity_constant(ni) <= eps + kTol);
  }
}

TEST_CASE("quasi-inverse of the identity and of a net inclusion") {
  const auto z = make_zplus(10);
  const auto qi_id = quasi_inverse(identity_witness(z));
  CHECK(qi_id.forward_identity == 0);
  CHECK(qi_id.backward_identity == 0);

  const auto net = greedy_net(*z, 2.0);
  const auto net_space = subspace(*z, net.net);
  const auto qi = quasi_inverse(MapWitness{net_space, z, net.net});
  CHECK(qi.forward_identity <= 2.0);  // f o g moves points at most the net density
  CHECK(qi.backward_identity == 0);   // net points are their own nearest preimage
}

TEST_CASE("quasi-inverse of a constant map reports the eccentricity defect") {
  const auto z = make_zplus(10);
  const auto c = constant_witness(z, z, 0);
  const auto qi = quasi_inverse(c);
  // g sends everything to the canonical argmin (point 0), so g o f is
  // constant 0 and the defect is the eccentricity of 0.
  CHECK(qi.backward_identity == z->eccentricity(0));
}

TEST_CASE("composition: identity laws and control composition") {
  const auto z = make_zplus(32);
  std::mt19937 rng(11);
  const auto f = random_map(rng, z, z);
  const auto composed_l = compose(identity_witness(z), f);
  const auto composed_r = compose(f, identity_witness(z));
  CHECK(composed_l.map == f.map);
  CHECK(composed_r.map == f.map);

  CHECK_THROWS_AS(compose(f, identity_witness(make_zplus(5))), std::invalid_argument);

  // doubling twice is x -> 4x
  const auto z4 = make_zplus(128);
  MapWitness d1{z, make_zplus(64), {}}, d2{make_zplus(64), z4, {}};
  for (std::size_t x = 0; x <= 32; ++x) d1.map.push_back(2 * x);
  for (std::size_t x = 0; x <= 64; ++x) d2.map.push_back(2 * x);
  const auto quad = compose(d1, d2);
  const auto phi = uniformity_control(quad, integer_scales(32));
  for (std::size_t i = 0; i < phi.size(); ++i) CHECK(phi.bound(i) == 4 * phi.scale(i));
}

TEST_CASE("uniformity of a composite is controlled by the composed controls") {
  std::mt19937 rng(31);
  const auto z = make_zplus(32);
  const auto scales = integer_scales(32);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_map(rng, z, z);
    const auto g = random_map(rng, z, z);
    const auto gf = compose(f, g);
    const auto phi_f = uniformity_control(f, scales);
    const auto phi_g = uniformity_control(g, scales);
    const auto phi_gf = uniformity_control(gf, scales);
    for (std::size_t i = 0; i < scales.size(); ++i) {
      CHECK(phi_gf.bound(i) <= phi_g.at(phi_f.bound(i)) + kTol);
    }
  }
}

TEST_CASE("image of a covered set is covered at the transported scale") {
  const auto z = make_zplus(30);
  MapWitness halve{z, z, {}};
  for (std::size_t x = 0; x <= 30; ++x) halve.map.push_back(x / 2);
  for (const double r0 : {1.0, 2.0}) {
    const auto B = ball(*z, std::size_t{0}, 12.0);
    const double s0 = uniformity_control(halve, std::vector<double>{r0}).at(r0);
    std::vector<std::size_t> image;
    for (std::size_t b : B) image.push_back(halve.map[b]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    CHECK(covering_number(*z, image, s0).count() <= covering_number(*z, B, r0).count());
  }
}

TEST_CASE("control transport follows the invariance formula") {
  const auto grid = integer_scales(20);

  // phiX(r) = r + 1, varphi = id, K = 0: result is r + 3.
  std::vector<double> plus_one;
  for (double s : grid) plus_one.push_back(s + 1);
  const ControlTable phiX(grid, plus_one);
  const ControlTable varphi = identity_table(grid);
  const auto out = transport_upper_control(phiX, 0, varphi, integer_scales(19));
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.bound(i) == out.scale(i) + 3);

  // bounded space: phiX constant 1 gives the constant 3.
  const ControlTable flat(grid, std::vector<double>(grid.size(), 1.0));
  const auto out_flat = transport_upper_control(flat, 0, varphi, integer_scales(19));
  for (std::size_t i = 0; i < out_flat.size(); ++i) CHECK(out_flat.bound(i) == 3);

  // K = 2 and varphi(r) = 2r: phiX(varphi(r+4)) + 2 = 2r + 11 at integer r.
  const auto wide = integer_scales(60);
  std::vector<double> doubled, wide_plus_one;
  for (double s : wide) doubled.push_back(2 * s);
  for (double s : wide) wide_plus_one.push_back(s + 1);
  const ControlTable varphi2(wide, doubled);
  const ControlTable phiX2(wide, wide_plus_one);
  const auto out2 = transport_upper_control(phiX2, 2, varphi2, integer_scales(20));
  for (std::size_t i = 0; i < out2.size(); ++i) CHECK(out2.bound(i) == 2 * out2.scale(i) + 11);

  // queries past the grid are an explicit error
  CHECK_THROWS_AS(transport_upper_control(phiX, 0, varphi, std::vector<double>{100.0}),
                  std::out_of_range);
}

TEST_CASE("control table upward snapping and domination") {
  const ControlTable t({0, 2, 5}, {1, 4, 9});
  CHECK(t.at(0) == 1);
  CHECK(t.at(1) == 4);   // snaps up to scale 2
  CHECK(t.at(2) == 4);
  CHECK(t.at(4.5) == 9);
  CHECK_THROWS_AS(t.at(6), std::out_of_range);
  CHECK(t.dominates(ControlTable({0, 2}, {1, 3})));
  CHECK(!t.dominates(ControlTable({0, 2}, {2, 3})));
  CHECK_THROWS_AS(ControlTable({0, 1}, {3, 2}), std::invalid_argument);
}

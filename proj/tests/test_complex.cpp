#include <nhm/builders.hpp>
#include <nhm/complex.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace nhm;

namespace {

CellComplex triangle() { return build::simplicial({{0, 1, 2}}); }

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(CellComplex, SimplicialTriangleCounts) {
  auto t = triangle();
  EXPECT_EQ(t.size(), 7u);
  EXPECT_EQ(t.top_dimension(), 2);
  EXPECT_EQ(t.cells_of_dim(0).size(), 3u);
  EXPECT_EQ(t.cells_of_dim(1).size(), 3u);
  EXPECT_EQ(euler_characteristic(t), 1);
  EXPECT_TRUE(validate_complex(t).ok());
}

TEST(CellComplex, IncidenceLookup) {
  auto p = build::path(0, 1);
  auto e = p.index("e0_1");
  EXPECT_EQ(p.incidence(e, p.index("v0")), -1);
  EXPECT_EQ(p.incidence(e, p.index("v1")), 1);
  EXPECT_EQ(p.incidence(p.index("v0"), e), 0);
  EXPECT_THROW(p.index("nope"), std::out_of_range);
  EXPECT_FALSE(p.find("nope"));
}

TEST(CellComplex, ValidationRules) {
  CellComplex bad({{"a", 0, {}},
                   {"a", 0, {}},
                   {"b", -1, {}},
                   {"e", 1, {{"a", 2}, {"ghost", 1}}},
                   {"f", 1, {{"a", 1}, {"a", -1}}},
                   {"t", 2, {{"a", 1}}}});
  auto r = validate_complex(bad);
  EXPECT_TRUE(r.has_rule("duplicate-id"));
  EXPECT_TRUE(r.has_rule("negative-dimension"));
  EXPECT_TRUE(r.has_rule("bad-sign"));
  EXPECT_TRUE(r.has_rule("dangling face"));
  EXPECT_TRUE(r.has_rule("repeated-face"));
  EXPECT_TRUE(r.has_rule("face-dimension"));
}

TEST(CellComplex, BoundarySquaredViolation) {
  // a triangle whose edge signs do not cancel at one vertex
  CellComplex bad({{"a", 0, {}},
                   {"b", 0, {}},
                   {"c", 0, {}},
                   {"ab", 1, {{"a", -1}, {"b", 1}}},
                   {"bc", 1, {{"b", -1}, {"c", 1}}},
                   {"ca", 1, {{"c", -1}, {"a", 1}}},
                   {"t", 2, {{"ab", 1}, {"bc", 1}, {"ca", -1}}}});
  auto r = validate_complex(bad);
  EXPECT_TRUE(r.has_rule("boundary-squared"));
}

TEST(CellSet, ClosureAndStarOfEdge) {
  auto p = build::path(-2, 2);
  auto e = CellSet::of_ids(p, {"e0_1"});
  EXPECT_EQ(sorted(closure(e).ids()), sorted({"e0_1", "v0", "v1"}));
  auto v = CellSet::of_ids(p, {"v0"});
  EXPECT_EQ(sorted(star(v).ids()), sorted({"v0", "e-1_0", "e0_1"}));
  EXPECT_TRUE(star(v).is_open());
  EXPECT_FALSE(star(v).is_closed());
  EXPECT_TRUE(closure(e).is_closed());
}

TEST(CellSet, FrontierOfOpenInterval) {
  auto p = build::path(-2, 2);
  auto open = CellSet::of_ids(p, build::path_interval(-1, 1));
  EXPECT_TRUE(open.is_open());
  EXPECT_EQ(sorted(frontier(open).ids()), sorted({"v-1", "v1"}));
  EXPECT_THROW(frontier(CellSet::of_ids(p, {"v0"})), PreconditionError);
}

TEST(CellSet, InteriorAndClosedPart) {
  auto p = build::path(-2, 2);
  auto s = CellSet::of_ids(p, {"v0", "e0_1", "v1"});
  // interior: cells whose whole star lies in s
  EXPECT_EQ(sorted(interior(s).ids()), sorted({"e0_1"}));
  // closed part: cells whose whole closure lies in s
  EXPECT_EQ(sorted(closed_part(s).ids()), sorted({"v0", "e0_1", "v1"}));
  auto open = CellSet::of_ids(p, {"v-2", "e-2_-1"});
  EXPECT_EQ(sorted(closed_part(open).ids()), sorted({"v-2"}));
}

TEST(CellSet, RegularOpenExamples) {
  auto p = build::path(-2, 2);
  auto all_but_origin = CellSet::all(p) - CellSet::of_ids(p, {"v0"});
  EXPECT_TRUE(all_but_origin.is_open());
  EXPECT_FALSE(interior(closure(all_but_origin)) == all_but_origin);
  auto n = CellSet::of_ids(p, {"v-2", "e-2_-1", "v2", "e1_2"});
  EXPECT_TRUE(interior(closure(n)) == n);
}

TEST(CellSet, SetAlgebra) {
  auto p = build::path(0, 3);
  auto a = CellSet::of_ids(p, {"v0", "v1"});
  auto b = CellSet::of_ids(p, {"v1", "v2"});
  EXPECT_EQ(sorted((a | b).ids()), sorted({"v0", "v1", "v2"}));
  EXPECT_EQ((a & b).ids(), std::vector<std::string>{"v1"});
  EXPECT_EQ((a - b).ids(), std::vector<std::string>{"v0"});
  EXPECT_TRUE((a & b).subset_of(a));
  EXPECT_EQ(CellSet(p).count(), 0u);
  EXPECT_TRUE(CellSet(p).empty());
}

TEST(CellSet, ConnectedComponents) {
  auto p = build::path(-2, 2);
  auto s = CellSet::of_ids(p, {"v-2", "e-2_-1", "v-1", "v1", "v2", "e1_2"});
  EXPECT_EQ(connected_components(s), 2u);
  EXPECT_EQ(connected_components(CellSet::all(p)), 1u);
}

TEST(Euler, StandardComplexes) {
  EXPECT_EQ(euler_characteristic(build::icosahedron()), 2);
  EXPECT_EQ(euler_characteristic(build::simplicial(build::torus_facets(4, 4))), 0);
  EXPECT_EQ(euler_characteristic(build::cycle(6)), 0);
  EXPECT_EQ(euler_characteristic(build::path(-2, 2)), 1);
}

TEST(Orientation, InducedOnClosedSurfaces) {
  for (const auto& cx : {build::icosahedron(), build::simplicial(build::torus_facets(4, 4)), build::cycle(5)}) {
    auto o = induce_orientation(cx);
    ASSERT_TRUE(o);
    EXPECT_TRUE(validate_orientation(cx, *o).ok());
    EXPECT_TRUE(is_closed_pseudomanifold(cx));
  }
}

TEST(Orientation, FlippedCellIsReported) {
  auto ico = build::icosahedron();
  auto o = *induce_orientation(ico);
  o.set(ico.cells_of_dim(2)[0], -o.sign(ico.cells_of_dim(2)[0]));
  auto r = validate_orientation(ico, o);
  EXPECT_TRUE(r.has_rule("orientation-mismatch"));
}

TEST(Orientation, MobiusStripIsNotOrientable) {
  // five-triangle Moebius band
  auto m = build::simplicial({{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}});
  EXPECT_FALSE(induce_orientation(m));
  EXPECT_FALSE(is_closed_pseudomanifold(m));
}

TEST(Properties, RandomSubsetsOfRandomComplexes) {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 60; ++trial) {
    auto cx = build::simplicial(oracle::random_facets(rng, 6, 5));
    EXPECT_TRUE(validate_complex(cx).ok());
    CellSet s(cx);
    std::bernoulli_distribution pick(0.5);
    for (std::size_t c = 0; c < cx.size(); ++c)
      if (pick(rng)) s.insert(c);
    auto in = interior(s), cp = closed_part(s), cl = closure(s), st = star(s);
    EXPECT_TRUE(in.is_open());
    EXPECT_TRUE(in.subset_of(s));
    EXPECT_TRUE(cp.is_closed());
    EXPECT_TRUE(cp.subset_of(s));
    EXPECT_TRUE(cl.is_closed());
    EXPECT_TRUE(s.subset_of(cl));
    EXPECT_TRUE(st.is_open());
    EXPECT_TRUE(closure(cl) == cl);
    EXPECT_TRUE(interior(in) == in);
    // frontier of an open set is closed and disjoint from it
    auto fr = frontier(in);
    EXPECT_TRUE(fr.is_closed());
    EXPECT_TRUE((fr & in).empty());
    // maximality: adding any cell of s breaks the property
    for (auto c : (s - in).members()) {
      auto bigger = in;
      bigger.insert(c);
      EXPECT_FALSE(bigger.is_open());
    }
    for (auto c : (s - cp).members()) {
      auto bigger = cp;
      bigger.insert(c);
      EXPECT_FALSE(bigger.is_closed());
    }
  }
}

TEST(Properties, BoundarySquaredOnRandomComplexes) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto cx = build::simplicial(oracle::random_facets(rng, 7, 6));
    EXPECT_TRUE(oracle::from_complex(cx).boundary_squared_zero());
    EXPECT_FALSE(validate_complex(cx).has_rule("boundary-squared"));
    // Euler characteristic agrees with the alternating Betti sum of the oracle
    auto b = oracle::from_complex(cx).betti();
    long alt = 0;
    for (std::size_t q = 0; q < b.size(); ++q) alt += (q % 2 ? -1 : 1) * static_cast<long>(b[q]);
    EXPECT_EQ(euler_characteristic(cx), alt);
  }
}

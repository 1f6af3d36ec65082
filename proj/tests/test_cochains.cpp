#include <nhm/builders.hpp>
#include <nhm/cochains.hpp>

#include <gtest/gtest.h>

#include <random>

#include "fixture_paths.hpp"
#include "oracles.hpp"

using namespace nhm;
using testing_support::load;

namespace {

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  return Rational(num(rng), den(rng));
}

/// Random compatible cochain: one value per closure class of the given degree.
GlobalCochain random_global(const AdjunctionSystem& s, int degree, std::mt19937& rng) {
  auto classes = closure_cell_classes(s);
  std::vector<Rational> values;
  for (const auto& cls : classes)
    if (s.piece(cls.front().first).dim(cls.front().second) == degree) values.push_back(random_rational(rng));
  return global_from_classes(s, degree, classes, values);
}

Cochain random_cochain(const CellSet& domain, int degree, std::mt19937& rng) {
  Cochain w(domain, degree);
  for (auto c : domain.members_of_dim(degree)) w.set(c, random_rational(rng));
  return w;
}

std::vector<std::string> oriented_fixtures() {
  std::vector<std::string> out;
  for (const auto& n : testing_support::valid_fixture_names())
    if (load(n).system.oriented()) out.push_back(n);
  return out;
}

}  // namespace

TEST(Cochain, CoboundaryOfVertexFunctionOnPath) {
  auto p = build::path(0, 2);
  Cochain w(CellSet::all(p), 0);
  w.set(p.index("v0"), 1);
  w.set(p.index("v1"), 4);
  w.set(p.index("v2"), Rational(1, 2));
  auto dw = coboundary(w);
  EXPECT_EQ(dw.degree(), 1);
  EXPECT_EQ(dw.value(p.index("e0_1")), 3);
  EXPECT_EQ(dw.value(p.index("e1_2")), Rational(-7, 2));
}

TEST(Cochain, SetOutsideDomainThrows) {
  auto p = build::path(0, 2);
  Cochain w(CellSet::of_ids(p, {"v0"}), 0);
  EXPECT_THROW(w.set(p.index("v1"), 1), std::invalid_argument);
  EXPECT_NO_THROW(w.set(p.index("v0"), 1));
}

TEST(Cochain, CoboundaryNeedsFaceClosedDomain) {
  auto p = build::path(0, 2);
  Cochain w(CellSet::of_ids(p, {"v0", "e0_1"}), 0);
  EXPECT_THROW(coboundary(w), PreconditionError);
}

TEST(Cochain, RestrictAndExtend) {
  auto p = build::path(0, 3);
  std::mt19937 rng(3);
  auto w = random_cochain(CellSet::all(p), 0, rng);
  auto sub = closure(CellSet::of_ids(p, {"e1_2"}));
  auto r = restrict_to(w, sub);
  EXPECT_EQ(r.value(p.index("v1")), w.value(p.index("v1")));
  auto back = extend_by_zero(r);
  EXPECT_EQ(back.value(p.index("v0")), 0);
  EXPECT_EQ(back.value(p.index("v2")), w.value(p.index("v2")));
  EXPECT_THROW(extend_by_zero(Cochain(CellSet::of_ids(p, {"e1_2"}), 1)), PreconditionError);
}

TEST(Properties, CoboundarySquaredVanishes) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto cx = build::simplicial(oracle::random_facets(rng, 6, 4));
    auto w = random_cochain(CellSet::all(cx), trial % 2, rng);
    EXPECT_TRUE(coboundary(coboundary(w)).is_zero());
  }
}

TEST(Global, IncompatibleOnRegion) {
  auto doc = load("glued_circles");
  const auto& s = doc.system;
  std::vector<Cochain> comps{Cochain(CellSet::all(s.piece(0)), 0), Cochain(CellSet::all(s.piece(1)), 0)};
  comps[0].set(s.piece(0).index("v1"), 1);
  try {
    assemble_global(s, comps);
    FAIL() << "expected an incompatibility";
  } catch (const IncompatibleCochain& e) {
    EXPECT_NE(std::string(e.what()).find("open gluing region"), std::string::npos);
  }
}

TEST(Global, IncompatibleOnFrontier) {
  auto doc = load("glued_circles");
  const auto& s = doc.system;
  std::vector<Cochain> comps{Cochain(CellSet::all(s.piece(0)), 0), Cochain(CellSet::all(s.piece(1)), 0)};
  comps[1].set(s.piece(1).index("v0"), 5);
  try {
    assemble_global(s, comps);
    FAIL() << "expected an incompatibility";
  } catch (const IncompatibleCochain& e) {
    EXPECT_NE(std::string(e.what()).find("frontier"), std::string::npos);
  }
}

TEST(Global, CoboundaryStaysCompatible) {
  std::mt19937 rng(5);
  for (const auto& name : testing_support::valid_fixture_names()) {
    auto doc = load(name);
    auto w = random_global(doc.system, 0, rng);
    EXPECT_NO_THROW(coboundary(w)) << name;
  }
}

TEST(Integration, NeedsOrientationAndTopDegree) {
  auto line = build::path(-2, 2);
  AdjunctionSystem s({line, line}, {build::identity_gluing(line, 0, 1, {"v-2", "v-1", "e-2_-1", "e-1_0"})});
  std::mt19937 rng(1);
  auto w = random_global(s, 1, rng);
  EXPECT_THROW(integrate(w), PreconditionError);
  build::orient_all(s);
  auto w0 = random_global(s, 0, rng);
  EXPECT_THROW(integrate(w0), PreconditionError);
}

TEST(Integration, HandComputedGluedCircles) {
  auto doc = load("glued_circles");
  auto w = parse_cochain(read_json_file(testing_support::cochain_path("glued_circles_w1")), doc.system);
  // 21 on each circle, minus 1+2+3 on the shared arc
  EXPECT_EQ(integrate(w), 36);
  EXPECT_EQ(integrate_by_classes(w), 36);
}

TEST(Integration, InclusionExclusionMatchesClassSum) {
  std::mt19937 rng(2026);
  for (const auto& name : oriented_fixtures()) {
    auto doc = load(name);
    int top = doc.system.piece(0).top_dimension();
    for (int k = 0; k < 10; ++k) {
      auto w = random_global(doc.system, top, rng);
      EXPECT_EQ(integrate(w), integrate_by_classes(w)) << name;
    }
  }
}

TEST(Integration, InvariantUnderEdgeSubdivision) {
  std::mt19937 rng(77);
  for (const auto& name : oriented_fixtures()) {
    auto doc = load(name);
    auto fine = subdivide_edges(doc.system);
    ASSERT_TRUE(validate_system(fine).ok()) << name;
    int top = doc.system.piece(0).top_dimension();
    for (int k = 0; k < 5; ++k) {
      auto w = random_global(doc.system, top, rng);
      auto wf = subdivide_cochain(w, fine);
      EXPECT_EQ(integrate(wf), integrate(w)) << name;
      EXPECT_EQ(integrate_by_classes(wf), integrate(w)) << name;
    }
  }
}

TEST(Integration, ArityCapDropsHigherTerms) {
  auto doc = load("three_piece_arcs");
  std::mt19937 rng(8);
  auto w = random_global(doc.system, 1, rng);
  auto full = integral_terms(w);
  auto capped = integral_terms(w, 2);
  EXPECT_EQ(full.size(), capped.size() + 1);
  EXPECT_EQ(full.back().tuple, (Tuple{0, 1, 2}));
  EXPECT_EQ(full.back().weight, 1);
}

TEST(Stokes, GluedCirclesAgainstHandFormula) {
  auto doc = load("glued_circles");
  const auto& s = doc.system;
  std::mt19937 rng(42);
  bool nonzero_seen = false;
  for (int k = 0; k < 100; ++k) {
    auto w = random_global(s, 0, rng);
    auto d = stokes_defect(w);
    EXPECT_EQ(d.lhs, d.rhs);
    // closure of the shared arc runs v0 -> v3; the doubled copy removes its integral once
    const auto& w1 = w.component(0);
    EXPECT_EQ(d.lhs, w1.value(s.piece(0).index("v0")) - w1.value(s.piece(0).index("v3")));
    nonzero_seen = nonzero_seen || d.lhs != 0;
  }
  EXPECT_TRUE(nonzero_seen);
}

TEST(Stokes, ClopenControlVanishes) {
  auto doc = load("circles_clopen");
  std::mt19937 rng(43);
  for (int k = 0; k < 20; ++k) {
    auto d = stokes_defect(random_global(doc.system, 0, rng));
    EXPECT_EQ(d.lhs, 0);
    EXPECT_EQ(d.rhs, 0);
  }
}

TEST(Stokes, Preconditions) {
  std::mt19937 rng(44);
  auto arcs = load("three_piece_arcs");
  EXPECT_THROW(stokes_defect(random_global(arcs.system, 0, rng)), PreconditionError);
  auto branched = load("branched_line");
  EXPECT_THROW(stokes_defect(random_global(branched.system, 0, rng)), PreconditionError);
  auto circles = load("glued_circles");
  EXPECT_THROW(stokes_defect(random_global(circles.system, 1, rng)), PreconditionError);
}

TEST(Chains, BoundaryOfBoundaryVanishes) {
  auto doc = load("glued_icosahedra");
  const auto& s = doc.system;
  Chain c;
  c.degree = 2;
  for (auto t : s.piece(1).cells_of_dim(2)) c.add({1, t}, s.orientation(1)->sign(t));
  EXPECT_TRUE(boundary(s, c).terms.empty());  // fundamental cycle of a closed surface
  Chain one;
  one.degree = 2;
  one.add({0, s.piece(0).cells_of_dim(2)[0]}, 3);
  EXPECT_EQ(boundary(s, one).terms.size(), 3u);
  EXPECT_TRUE(boundary(s, boundary(s, one)).terms.empty());
}

TEST(Properties, PairingIsAdjoint) {
  std::mt19937 rng(314);
  std::uniform_int_distribution<int> coeff(-5, 5);
  int checked = 0;
  for (const auto& name : testing_support::valid_fixture_names()) {
    auto doc = load(name);
    const auto& s = doc.system;
    int top = 0;
    for (std::size_t i = 0; i < s.size(); ++i) top = std::max(top, s.piece(i).top_dimension());
    for (int k = 0; k < 20; ++k) {
      int q = static_cast<int>(k % top);
      auto w = random_global(s, q, rng);
      Chain c;
      c.degree = q + 1;
      for (int m = 0; m < 6; ++m) {
        std::size_t i = rng() % s.size();
        auto cells = s.piece(i).cells_of_dim(q + 1);
        if (cells.empty()) continue;
        c.add({i, cells[rng() % cells.size()]}, coeff(rng));
      }
      EXPECT_EQ(integrate_over_chain(coboundary(w), c), integrate_over_chain(w, boundary(s, c))) << name;
      ++checked;
    }
  }
  EXPECT_GE(checked, 200);
}

TEST(Chains, DegreeMismatchThrows) {
  auto doc = load("glued_circles");
  std::mt19937 rng(1);
  Chain c;
  c.degree = 1;
  EXPECT_THROW(integrate_over_chain(random_global(doc.system, 0, rng), c), std::invalid_argument);
}

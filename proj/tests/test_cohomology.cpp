#include <nhm/builders.hpp>
#include <nhm/cohomology.hpp>

#include <gtest/gtest.h>

#include <random>

#include "fixture_paths.hpp"
#include "oracles.hpp"

using namespace nhm;
using testing_support::load;
using Betti = std::vector<std::size_t>;

namespace {

std::vector<std::string> closure_property_fixtures() {
  std::vector<std::string> out;
  for (const auto& n : testing_support::valid_fixture_names())
    if (closure_intersection_holds(load(n).system)) out.push_back(n);
  return out;
}

std::vector<std::string> binary_fixtures() {
  std::vector<std::string> out;
  for (const auto& n : testing_support::valid_fixture_names())
    if (load(n).system.size() == 2) out.push_back(n);
  return out;
}

}  // namespace

TEST(Betti, LineWithTwoOrigins) {
  auto doc = load("line_two_origins");
  EXPECT_EQ(total_betti(doc.system, Flavor::ClosedIntersection, &doc.cores), (Betti{1, 0}));
  EXPECT_EQ(total_betti(doc.system, Flavor::OpenCore, &doc.cores), (Betti{1, 1}));
}

TEST(Betti, DefaultCoreOfLineWithTwoOriginsAgreesWithDeclaredCore) {
  auto doc = load("line_two_origins");
  EXPECT_EQ(total_betti(doc.system, Flavor::OpenCore), (Betti{1, 1}));
}

TEST(Betti, RegularOpenVariant) {
  auto doc = load("line_regular_open");
  EXPECT_EQ(total_betti(doc.system, Flavor::ClosedIntersection), (Betti{1, 1}));
  EXPECT_EQ(total_betti(doc.system, Flavor::OpenCore), (Betti{1, 1}));
}

TEST(Betti, GluedCirclesAndControls) {
  EXPECT_EQ(total_betti(load("glued_circles").system, Flavor::ClosedIntersection), (Betti{1, 2}));
  EXPECT_EQ(total_betti(load("glued_circles").system, Flavor::OpenCore), (Betti{1, 2}));
  EXPECT_EQ(total_betti(load("circles_clopen").system, Flavor::OpenCore), (Betti{1, 1}));
  EXPECT_EQ(total_betti(load("branched_line").system, Flavor::OpenCore), (Betti{1, 0}));
}

TEST(Betti, BinaryFixturesMatchHomotopyPushoutOracle) {
  for (const auto& name : binary_fixtures()) {
    auto doc = load(name);
    const auto& s = doc.system;
    auto sing = oracle::homotopy_pushout(s, core_of(s, {0, 1}, &doc.cores));
    ASSERT_TRUE(sing.boundary_squared_zero()) << name;
    EXPECT_EQ(oracle::trimmed(total_betti(s, Flavor::OpenCore, &doc.cores)), sing.betti()) << name;
    auto dr = oracle::homotopy_pushout(s, closed_intersection(s, {0, 1}));
    ASSERT_TRUE(dr.boundary_squared_zero()) << name;
    EXPECT_EQ(oracle::trimmed(total_betti(s, Flavor::ClosedIntersection, &doc.cores)), dr.betti()) << name;
  }
}

TEST(Betti, SinglePieceIsCellularCohomology) {
  auto doc = load("single_icosahedron");
  EXPECT_EQ(total_betti(doc.system, Flavor::OpenCore), (Betti{1, 0, 1}));
  auto torus = AdjunctionSystem({build::simplicial(build::torus_facets(3, 3))}, {});
  EXPECT_EQ(total_betti(torus, Flavor::ClosedIntersection), (Betti{1, 2, 1}));
}

TEST(Betti, ClosedFlavorRejectsShapeFailingClosureProperty) {
  auto doc = load("three_piece_shared_frontier");
  try {
    build_bicomplex(doc.system, Flavor::ClosedIntersection);
    FAIL() << "expected a precondition failure";
  } catch (const PreconditionError& e) {
    EXPECT_EQ(std::string(e.what()), "closure-intersection property violated at tuple (1,2,3)");
  }
  EXPECT_EQ(total_betti(doc.system, Flavor::OpenCore), (Betti{1, 0}));
}

TEST(Betti, DeclaredCoresAreChecked) {
  auto doc = load("line_two_origins");
  CoreAssignment not_closed{{{{0, 1}, {"v1", "e1_2"}}}};
  EXPECT_THROW(build_bicomplex(doc.system, Flavor::OpenCore, &not_closed), PreconditionError);
  CoreAssignment outside{{{{0, 1}, {"v0"}}}};
  EXPECT_THROW(build_bicomplex(doc.system, Flavor::OpenCore, &outside), PreconditionError);
}

TEST(Bicomplex, StructureOnAllFixtures) {
  for (const auto& name : testing_support::valid_fixture_names()) {
    auto doc = load(name);
    for (auto flavor : {Flavor::ClosedIntersection, Flavor::OpenCore}) {
      if (flavor == Flavor::ClosedIntersection && !closure_intersection_holds(doc.system)) continue;
      auto b = build_bicomplex(doc.system, flavor, &doc.cores);
      auto r = check_bicomplex(b);
      EXPECT_TRUE(r.ok()) << name << " " << flavor_name(flavor);
    }
  }
}

TEST(Bicomplex, ShapeOfLineWithTwoOrigins) {
  auto doc = load("line_two_origins");
  auto b = build_bicomplex(doc.system, Flavor::OpenCore, &doc.cores);
  EXPECT_EQ(b.columns(), 2u);
  EXPECT_EQ(b.dim(0, 0), 10u);  // five vertices per piece
  EXPECT_EQ(b.dim(1, 0), 4u);   // core vertices
  EXPECT_EQ(b.dim(1, 1), 2u);   // core edges
  auto fc = total_complex(b);
  EXPECT_EQ(fc.dimension(0), 10u);
  EXPECT_EQ(fc.dimension(1), 8u + 4u);
}

TEST(Bicomplex, ArityCapTruncatesColumns) {
  auto doc = load("three_icosahedra");
  auto b = build_bicomplex(doc.system, Flavor::OpenCore, nullptr, 2);
  EXPECT_EQ(b.columns(), 2u);
}

TEST(GlobalComplex, MatchesClosedFlavorOnAllEligibleFixtures) {
  for (const auto& name : closure_property_fixtures()) {
    auto doc = load(name);
    EXPECT_EQ(oracle::trimmed(total_betti(doc.system, Flavor::ClosedIntersection)),
              oracle::trimmed(global_complex_betti(doc.system)))
        << name;
  }
}

TEST(RowExactness, EveryRowOfEveryEligibleFixture) {
  for (const auto& name : closure_property_fixtures()) {
    auto doc = load(name);
    int top = 0;
    for (std::size_t i = 0; i < doc.system.size(); ++i) top = std::max(top, doc.system.piece(i).top_dimension());
    for (int q = 0; q <= top; ++q) {
      auto r = row_exactness_check(doc.system, q);
      EXPECT_TRUE(r.precondition_holds);
      EXPECT_TRUE(r.exact()) << name << " q=" << q;
    }
  }
}

TEST(RowExactness, SharedFrontierIsFlaggedButStillMeasured) {
  auto doc = load("three_piece_shared_frontier");
  auto r = row_exactness_check(doc.system, 0);
  EXPECT_FALSE(r.precondition_holds);
  // 13 vertex classes, 3 x 7 piece vertices, 4 + 4 + 0 pairwise closure vertices, empty triple
  EXPECT_EQ(r.dims, (std::vector<std::size_t>{13, 21, 8, 0}));
  EXPECT_EQ(r.exact_at.size(), r.dims.size());
}

TEST(MayerVietoris, AlternatingSumAndAgreementOnBinaryFixtures) {
  for (const auto& name : binary_fixtures()) {
    auto doc = load(name);
    for (auto flavor : {Flavor::ClosedIntersection, Flavor::OpenCore}) {
      auto r = mv_report(doc.system, flavor, &doc.cores);
      EXPECT_EQ(r.alternating_sum, 0) << name;
      EXPECT_TRUE(r.matches_bicomplex()) << name;
    }
  }
}

TEST(MayerVietoris, LineWithTwoOriginsSingular) {
  auto doc = load("line_two_origins");
  auto r = mv_report(doc.system, Flavor::OpenCore, &doc.cores);
  ASSERT_EQ(r.degrees.size(), 2u);
  EXPECT_EQ(r.degrees[0].pieces, 2u);
  EXPECT_EQ(r.degrees[0].intersection, 2u);
  EXPECT_EQ(r.degrees[0].restriction_rank, 1u);
  EXPECT_EQ(r.derived_betti, (Betti{1, 1}));
  EXPECT_THROW(mv_report(load("three_piece_arcs").system, Flavor::OpenCore), PreconditionError);
}

TEST(Euler, InclusionExclusionMatchesBettiOnAllFixtures) {
  for (const auto& name : testing_support::valid_fixture_names()) {
    auto doc = load(name);
    EXPECT_EQ(euler_inclusion_exclusion(doc.system, &doc.cores),
              alternating_sum(total_betti(doc.system, Flavor::OpenCore, &doc.cores)))
        << name;
  }
}

TEST(Euler, GoldenValuesDerivedFromOracle) {
  auto ico = load("glued_icosahedra");
  auto pushout = oracle::homotopy_pushout(ico.system, core_of(ico.system, {0, 1}, nullptr)).betti();
  long chi = 0;
  for (std::size_t q = 0; q < pushout.size(); ++q) chi += (q % 2 ? -1 : 1) * static_cast<long>(pushout[q]);
  EXPECT_EQ(chi, 3);
  EXPECT_EQ(euler_inclusion_exclusion(ico.system), chi);
  auto line = load("line_two_origins");
  EXPECT_EQ(euler_inclusion_exclusion(line.system, &line.cores), 0);
  EXPECT_EQ(euler_inclusion_exclusion(load("three_icosahedra").system), 4);
  EXPECT_EQ(euler_inclusion_exclusion(load("glued_tori").system), 0);
}

TEST(Compare, HomotopyInvarianceFailure) {
  auto line = load("line_two_origins");
  auto c = de_rham_compare(line.system, &line.cores);
  EXPECT_FALSE(c.equal);
  EXPECT_FALSE(c.regions_regular_open);
  auto n = load("line_regular_open");
  auto cn = de_rham_compare(n.system, &n.cores);
  EXPECT_TRUE(cn.equal);
  EXPECT_TRUE(cn.hypotheses_hold());
  auto sf = de_rham_compare(load("three_piece_shared_frontier").system);
  EXPECT_FALSE(sf.closed.has_value());
  EXPECT_FALSE(sf.equal);
}

TEST(Oracle, RandomClopenSystemsMatchQuotient) {
  std::mt19937 rng(271828);
  int three_piece = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto r = oracle::random_clopen(rng);
    ASSERT_TRUE(validate_system(r.system).ok());
    three_piece += r.system.size() == 3;
    auto expected = oracle::quotient_betti(r);
    EXPECT_EQ(oracle::trimmed(total_betti(r.system, Flavor::ClosedIntersection)), expected) << trial;
    EXPECT_EQ(oracle::trimmed(total_betti(r.system, Flavor::OpenCore)), expected) << trial;
  }
  EXPECT_GT(three_piece, 0);
}

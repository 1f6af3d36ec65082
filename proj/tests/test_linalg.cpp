#include <nhm/linalg.hpp>
#include <nhm/rational.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace nhm;

TEST(Rational, ParseForms) {
  EXPECT_EQ(parse_rational("3/7"), Rational(3, 7));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_rational("3/08"), Rational(3, 8));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "0x10", "1e3", "-", "."})
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Rational, TextRoundTrip) {
  for (auto r : {Rational(0), Rational(5), Rational(-3, 9), Rational(22, 7)})
    EXPECT_EQ(parse_rational(to_string(r)), r);
  EXPECT_EQ(to_string(Rational(-3, 9)), "-1/3");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
}

TEST(Matrix, RankOfSmallMatrices) {
  Matrix m(3, 3);
  m.set(0, 0, 1), m.set(0, 1, 2), m.set(0, 2, 3);
  m.set(1, 0, 2), m.set(1, 1, 4), m.set(1, 2, 6);
  m.set(2, 0, 1), m.set(2, 2, 1);
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(rank(Matrix(4, 0)), 0u);
  EXPECT_EQ(rank(Matrix(0, 4)), 0u);
}

TEST(Matrix, NullspaceIsKernel) {
  Matrix m(2, 4);
  m.set(0, 0, 1), m.set(0, 1, Rational(1, 2)), m.set(0, 3, -1);
  m.set(1, 1, 3), m.set(1, 2, 1);
  auto ns = nullspace(m);
  EXPECT_EQ(ns.size(), 2u);
  for (const auto& v : ns)
    for (const auto& x : m.apply(v)) EXPECT_EQ(x, 0);
}

TEST(Matrix, ProductTransposeAndHcat) {
  Matrix a(2, 2), b(2, 1);
  a.set(0, 0, 1), a.set(0, 1, 2), a.set(1, 1, -1);
  b.set(0, 0, 3), b.set(1, 0, 4);
  auto ab = a * b;
  EXPECT_EQ(ab.at(0, 0), 11);
  EXPECT_EQ(ab.at(1, 0), -4);
  EXPECT_EQ(a.transpose().at(1, 0), 2);
  auto h = Matrix::hcat(a, b);
  EXPECT_EQ(h.cols(), 3u);
  EXPECT_EQ(h.at(1, 2), 4);
}

TEST(Matrix, RowReduceGivesEchelonForm) {
  Matrix m(3, 4);
  m.set(0, 1, 2), m.set(0, 3, 4);
  m.set(1, 0, 1), m.set(1, 1, 1);
  m.set(2, 0, 2), m.set(2, 1, 4), m.set(2, 3, 4);
  auto pivots = row_reduce(m);
  EXPECT_EQ(pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(m.at(0, 0), 1);
  EXPECT_EQ(m.at(0, 1), 0);
  EXPECT_EQ(m.at(1, 1), 1);
  EXPECT_EQ(m.at(1, 3), 2);
}

TEST(Matrix, RandomRanksAgreeWithModularOracle) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> dim(0, 9), val(-3, 3), density(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    Matrix m(r, c);
    oracle::Dense d(r, std::vector<std::int64_t>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (density(rng) == 0) {
          int v = val(rng);
          m.set(i, j, v);
          d[i][j] = oracle::mod(v);
        }
    EXPECT_EQ(rank(m), oracle::rank_mod_p(d));
    Matrix rr = m;
    EXPECT_EQ(row_reduce(rr).size(), rank(m));
    EXPECT_EQ(nullspace(m).size(), c - rank(m));
  }
}

TEST(Betti, CircleComplex) {
  // C^0 = Q^3 (vertices), C^1 = Q^3 (edges of a triangle)
  FreeComplex fc;
  fc.basis = {{"a", "b", "c"}, {"ab", "bc", "ca"}};
  Matrix d(3, 3);
  d.set(0, 0, -1), d.set(0, 1, 1);
  d.set(1, 1, -1), d.set(1, 2, 1);
  d.set(2, 2, -1), d.set(2, 0, 1);
  fc.differentials = {d};
  EXPECT_EQ(betti(fc), (std::vector<std::size_t>{1, 1}));
}

TEST(Betti, RejectsBadShapesAndNonComplexes) {
  FreeComplex fc;
  fc.basis = {{"a"}, {"b"}};
  fc.differentials = {Matrix(2, 1)};
  EXPECT_THROW(betti(fc), std::invalid_argument);

  FreeComplex nc;
  nc.basis = {{"a"}, {"b"}, {"c"}};
  Matrix d0(1, 1), d1(1, 1);
  d0.set(0, 0, 1), d1.set(0, 0, 1);
  nc.differentials = {d0, d1};
  EXPECT_THROW(betti(nc), std::invalid_argument);
}

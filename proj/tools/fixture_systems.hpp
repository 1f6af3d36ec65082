#pragma once

// The shipped fixture systems, built programmatically. gen_fixtures writes
// them to fixtures/; the tests check that the files still match.

#include <nhm/builders.hpp>
#include <nhm/io.hpp>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace nhm::fixtures {

using build::identity_gluing;
using build::path_interval;

inline SystemDocument make_document(std::vector<CellComplex> pieces, const std::vector<GluingSpec>& gluings) {
  SystemDocument d;
  d.system = AdjunctionSystem(std::move(pieces), gluings);
  build::orient_all(d.system);
  d.edge_lengths.resize(d.system.size());
  return d;
}

/// Two copies of the path -2..2 glued everywhere except at the origin.
inline SystemDocument line_two_origins() {
  auto line = build::path(-2, 2);
  auto region = CellSet::all(line).ids();
  std::erase(region, "v0");
  auto d = make_document({line, line}, {identity_gluing(line, 0, 1, region)});
  d.cores.cells[{0, 1}] = {"v-2", "v-1", "e-2_-1", "v1", "v2", "e1_2"};
  return d;
}

/// Glued along the regular-open set (-inf,-1) u (1,inf).
inline SystemDocument line_regular_open() {
  auto line = build::path(-2, 2);
  std::vector<std::string> region = {"v-2", "e-2_-1", "v2", "e1_2"};
  return make_document({line, line}, {identity_gluing(line, 0, 1, region)});
}

/// Two lines glued along (-inf,0): the branching line.
inline SystemDocument branched_line() {
  auto line = build::path(-2, 2);
  std::vector<std::string> region = {"v-2", "v-1", "e-2_-1", "e-1_0"};
  return make_document({line, line}, {identity_gluing(line, 0, 1, region)});
}

/// Two 6-cycles glued along the open arc from v0 to v3.
inline SystemDocument glued_circles() {
  auto c = build::cycle(6);
  std::vector<std::string> region = {"c0", "c1", "c2", "v1", "v2"};
  return make_document({c, c}, {identity_gluing(c, 0, 1, region)});
}

/// Two 6-cycles glued along everything: the clopen control.
inline SystemDocument circles_clopen() {
  auto c = build::cycle(6);
  return make_document({c, c}, {identity_gluing(c, 0, 1, CellSet::all(c).ids())});
}

inline void unit_lengths(SystemDocument& d) {
  for (std::size_t i = 0; i < d.system.size(); ++i)
    for (auto e : d.system.piece(i).cells_of_dim(1)) d.edge_lengths[i][d.system.piece(i).id(e)] = "1.0";
}

/// n regular icosahedra, each pair glued along the open star of vertex 0.
inline SystemDocument icosahedra(std::size_t n) {
  auto ico = build::icosahedron();
  auto region = build::open_star(ico, {"v0"});
  std::vector<GluingSpec> gluings;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) gluings.push_back(identity_gluing(ico, i, j, region));
  auto d = make_document(std::vector<CellComplex>(n, ico), gluings);
  unit_lengths(d);
  return d;
}

/// Two flat 4x4 tori glued along the open star of the row i = 0.
inline SystemDocument glued_tori() {
  const int n = 4, m = 4;
  auto torus = build::simplicial(build::torus_facets(n, m));
  std::vector<std::string> row;
  for (int j = 0; j < m; ++j) row.push_back(build::simplex_id({build::torus_vertex(0, j, n, m)}));
  auto d = make_document({torus, torus}, {identity_gluing(torus, 0, 1, build::open_star(torus, row))});
  for (std::size_t i = 0; i < 2; ++i)
    for (const auto& [id, len] : build::torus_flat_lengths(n, m)) d.edge_lengths[i][id] = format_decimal(len);
  return d;
}

/// Three copies of the path -3..3 with M12 = (-3,2), M13 = (-1,3), M23 = (-1,2).
inline SystemDocument three_piece_arcs() {
  auto line = build::path(-3, 3);
  return make_document({line, line, line}, {identity_gluing(line, 0, 1, path_interval(-3, 2)),
                                            identity_gluing(line, 0, 2, path_interval(-1, 3)),
                                            identity_gluing(line, 1, 2, path_interval(-1, 2))});
}

/// M12 = (-3,0) and M13 = (0,3) share the frontier point 0 while M23 is empty.
inline SystemDocument three_piece_shared_frontier() {
  auto line = build::path(-3, 3);
  return make_document({line, line, line}, {identity_gluing(line, 0, 1, path_interval(-3, 0)),
                                            identity_gluing(line, 0, 2, path_interval(0, 3))});
}

/// Three 6-cycles glued whole, with f13 a rotation while f12 and f23 are identities.
inline SystemDocument broken_cocycle() {
  auto c = build::cycle(6);
  auto all = CellSet::all(c).ids();
  GluingSpec rot{0, 2, all, {}, {}};
  for (int k = 0; k < 6; ++k) {
    rot.pairs.emplace_back("v" + std::to_string(k), "v" + std::to_string((k + 1) % 6));
    rot.pairs.emplace_back("c" + std::to_string(k), "c" + std::to_string((k + 1) % 6));
  }
  return make_document({c, c, c}, {identity_gluing(c, 0, 1, all), rot, identity_gluing(c, 1, 2, all)});
}

inline std::vector<std::pair<std::string, std::function<SystemDocument()>>> all() {
  return {
      {"line_two_origins", line_two_origins},
      {"line_regular_open", line_regular_open},
      {"branched_line", branched_line},
      {"glued_circles", glued_circles},
      {"circles_clopen", circles_clopen},
      {"glued_icosahedra", [] { return icosahedra(2); }},
      {"three_icosahedra", [] { return icosahedra(3); }},
      {"single_icosahedron", [] { return icosahedra(1); }},
      {"glued_tori", glued_tori},
      {"three_piece_arcs", three_piece_arcs},
      {"three_piece_shared_frontier", three_piece_shared_frontier},
      {"broken_cocycle", broken_cocycle},
  };
}

/// A 0-cochain on glued_circles: w(v_k) = k^2/3 on both pieces.
inline json glued_circles_w0() {
  json vals = json::object();
  for (int k = 0; k < 6; ++k) vals["v" + std::to_string(k)] = to_string(Rational(k * k, 3));
  return {{"degree", 0}, {"components", {{{"piece", 1}, {"values", vals}}, {{"piece", 2}, {"values", vals}}}}};
}

/// A 1-cochain on glued_circles with w(c_k) = k+1.
inline json glued_circles_w1() {
  json vals = json::object();
  for (int k = 0; k < 6; ++k) vals["c" + std::to_string(k)] = std::to_string(k + 1);
  return {{"degree", 1}, {"components", {{{"piece", 1}, {"values", vals}}, {{"piece", 2}, {"values", vals}}}}};
}

/// A 0-cochain on circles_clopen: w(v_k) = 2k - 5.
inline json circles_clopen_w0() {
  json vals = json::object();
  for (int k = 0; k < 6; ++k) vals["v" + std::to_string(k)] = std::to_string(2 * k - 5);
  return {{"degree", 0}, {"components", {{{"piece", 1}, {"values", vals}}, {{"piece", 2}, {"values", vals}}}}};
}

inline std::vector<std::pair<std::string, json>> cochains() {
  return {{"glued_circles_w0", glued_circles_w0()},
          {"glued_circles_w1", glued_circles_w1()},
          {"circles_clopen_w0", circles_clopen_w0()}};
}

}  // namespace nhm::fixtures

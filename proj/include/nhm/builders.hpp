#pragma once

// Constructors for standard complexes (paths, cycles, simplicial complexes,
// icosahedron, triangulated torus) and for identity gluings between pieces
// that share cell ids.

#include <nhm/adjunction.hpp>
#include <nhm/complex.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace nhm::build {

/// Simplex id from its sorted vertex labels: v3, e3_5, t1_2_3, s0_1_2_3.
inline std::string simplex_id(const std::vector<int>& verts) {
  static const char* prefix[] = {"v", "e", "t"};
  std::string out = verts.size() <= 3 ? prefix[verts.size() - 1] : "s";
  for (std::size_t k = 0; k < verts.size(); ++k) out += (k ? "_" : "") + std::to_string(verts[k]);
  return out;
}

/// Simplicial complex generated by the given facets, with the standard
/// alternating-sign boundary on sorted vertex order.
inline CellComplex simplicial(const std::vector<std::vector<int>>& facets) {
  std::set<std::vector<int>> simplices;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    const std::size_t n = f.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<int> s;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (std::size_t{1} << b)) s.push_back(f[b]);
      simplices.insert(s);
    }
  }
  std::vector<std::vector<int>> ordered(simplices.begin(), simplices.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<CellDecl> decls;
  for (const auto& s : ordered) {
    CellDecl d{simplex_id(s), static_cast<int>(s.size()) - 1, {}};
    if (s.size() > 1)
      for (std::size_t k = 0; k < s.size(); ++k) {
        std::vector<int> face = s;
        face.erase(face.begin() + static_cast<long>(k));
        d.faces.push_back({simplex_id(face), k % 2 == 0 ? 1 : -1});
      }
    decls.push_back(std::move(d));
  }
  return CellComplex(std::move(decls));
}

/// Path on the integers lo..hi: vertices v<k>, edges e<k>_<k+1>.
inline CellComplex path(int lo, int hi) {
  std::vector<CellDecl> decls;
  for (int k = lo; k <= hi; ++k) decls.push_back({"v" + std::to_string(k), 0, {}});
  for (int k = lo; k < hi; ++k)
    decls.push_back({"e" + std::to_string(k) + "_" + std::to_string(k + 1),
                     1,
                     {{"v" + std::to_string(k), -1}, {"v" + std::to_string(k + 1), 1}}});
  return CellComplex(std::move(decls));
}

inline std::string path_edge(int k) { return "e" + std::to_string(k) + "_" + std::to_string(k + 1); }
inline std::string path_vertex(int k) { return "v" + std::to_string(k); }

/// Open interval (a,b) of a path: vertices strictly inside and edges between a and b.
inline std::vector<std::string> path_interval(int a, int b) {
  std::vector<std::string> out;
  for (int k = a + 1; k < b; ++k) out.push_back(path_vertex(k));
  for (int k = a; k < b; ++k) out.push_back(path_edge(k));
  return out;
}

/// Cycle with n vertices v0..v{n-1} and edges c<k> from v<k> to v<k+1 mod n.
inline CellComplex cycle(int n) {
  std::vector<CellDecl> decls;
  for (int k = 0; k < n; ++k) decls.push_back({"v" + std::to_string(k), 0, {}});
  for (int k = 0; k < n; ++k)
    decls.push_back({"c" + std::to_string(k), 1, {{"v" + std::to_string(k), -1}, {"v" + std::to_string((k + 1) % n), 1}}});
  return CellComplex(std::move(decls));
}

inline std::vector<std::vector<int>> icosahedron_facets() {
  // apex 0, upper ring 1..5, lower ring 6..10, apex 11
  std::vector<std::vector<int>> f;
  for (int k = 0; k < 5; ++k) {
    int u = 1 + k, un = 1 + (k + 1) % 5, l = 6 + k, ln = 6 + (k + 1) % 5;
    f.push_back({0, u, un});
    f.push_back({u, l, un});
    f.push_back({un, l, ln});
    f.push_back({11, l, ln});
  }
  return f;
}

inline CellComplex icosahedron() { return simplicial(icosahedron_facets()); }

/// Vertex label of grid point (i, j) on an n-by-m torus.
inline int torus_vertex(int i, int j, int n, int m) { return ((i % n + n) % n) * m + ((j % m + m) % m); }

/// n-by-m square grid on the torus, each square split along its (i,j)-(i+1,j+1) diagonal.
inline std::vector<std::vector<int>> torus_facets(int n, int m) {
  std::vector<std::vector<int>> f;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      int a = torus_vertex(i, j, n, m), b = torus_vertex(i + 1, j, n, m);
      int c = torus_vertex(i + 1, j + 1, n, m), d = torus_vertex(i, j + 1, n, m);
      f.push_back({a, b, c});
      f.push_back({a, c, d});
    }
  return f;
}

/// Flat unit-square metric on torus_facets(n, m): axis edges 1, diagonals sqrt 2.
inline std::map<std::string, double> torus_flat_lengths(int n, int m) {
  std::map<std::string, double> out;
  auto cx = simplicial(torus_facets(n, m));
  for (auto e : cx.cells_of_dim(1)) {
    const auto& id = cx.id(e);
    auto us = id.find('_');
    int a = std::stoi(id.substr(1, us - 1)), b = std::stoi(id.substr(us + 1));
    int di = std::abs(a / m - b / m), dj = std::abs(a % m - b % m);
    di = std::min(di, n - di);
    dj = std::min(dj, m - dj);
    out[id] = (di == 1 && dj == 1) ? std::sqrt(2.0) : 1.0;
  }
  return out;
}

/// Star of a set of cells, as ids.
inline std::vector<std::string> open_star(const CellComplex& cx, const std::vector<std::string>& ids) {
  return star(CellSet::of_ids(cx, ids)).ids();
}

/// Gluing of region(i,j) onto the equally-named cells of piece j, with the
/// frontier matched by name as well.
inline GluingSpec identity_gluing(const CellComplex& source, std::size_t i, std::size_t j,
                                  const std::vector<std::string>& region) {
  GluingSpec g{i, j, region, {}, {}};
  CellSet reg = CellSet::of_ids(source, region);
  for (auto c : reg.members()) g.pairs.emplace_back(source.id(c), source.id(c));
  for (auto c : (closure(reg) - reg).members()) g.frontier_pairs.emplace_back(source.id(c), source.id(c));
  return g;
}

/// Orients every piece with induce_orientation(); pieces that are not
/// orientable are left unoriented.
inline void orient_all(AdjunctionSystem& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (auto o = induce_orientation(s.piece(i))) s.set_orientation(i, *o);
}

}  // namespace nhm::build

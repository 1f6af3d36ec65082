#pragma once

// Adjunction systems: finitely many cell complexes glued along open regions
// by cell bijections. The glued object is generally non-Hausdorff; the
// unidentified frontier cells of the gluing regions are where separation fails.

#include <nhm/complex.hpp>
#include <nhm/report.hpp>

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nhm {

/// Ascending list of piece indices (0-based).
using Tuple = std::vector<std::size_t>;

/// Piece index and cell index within that piece.
using PieceCell = std::pair<std::size_t, std::size_t>;

inline std::string tuple_label(const Tuple& t) {
  std::string out = "(";
  for (std::size_t k = 0; k < t.size(); ++k) out += (k ? "," : "") + std::to_string(t[k] + 1);
  return out + ")";
}

/// All ascending tuples of length `arity` drawn from {0..n-1}.
inline std::vector<Tuple> tuples_of_size(std::size_t n, std::size_t arity) {
  std::vector<Tuple> out;
  if (arity == 0 || arity > n) return out;
  Tuple t(arity);
  std::iota(t.begin(), t.end(), 0);
  while (true) {
    out.push_back(t);
    std::size_t k = arity;
    while (k > 0 && t[k - 1] == n - arity + (k - 1)) --k;
    if (k == 0) break;
    ++t[k - 1];
    for (std::size_t m = k; m < arity; ++m) t[m] = t[m - 1] + 1;
  }
  return out;
}

/// f_ij: the cell bijection between open regions plus its extension to the
/// closures. `closure` always contains `cells` as a restriction.
struct GluingMap {
  std::size_t source = 0;
  std::size_t target = 0;
  CellSet source_region;
  CellSet target_region;
  std::unordered_map<std::size_t, std::size_t> cells;
  std::unordered_map<std::size_t, std::size_t> closure;

  std::optional<std::size_t> apply(std::size_t c) const {
    auto it = cells.find(c);
    if (it == cells.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> apply_closure(std::size_t c) const {
    auto it = closure.find(c);
    if (it == closure.end()) return std::nullopt;
    return it->second;
  }
};

/// Declarative gluing input by cell id. `frontier_pairs` extends the map to
/// the frontier of the region; it is required whenever that frontier is nonempty.
struct GluingSpec {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::string> region;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::pair<std::string, std::string>> frontier_pairs;
};

class AdjunctionSystem {
 public:
  AdjunctionSystem() = default;

  /// Builds the system from pieces and declared gluings. Gluings for (j,i)
  /// that are not declared are derived as inverses of (i,j). Unknown cell ids
  /// throw std::out_of_range.
  AdjunctionSystem(std::vector<CellComplex> pieces, const std::vector<GluingSpec>& gluings,
                   std::vector<std::string> names = {}) {
    for (auto& p : pieces) pieces_.push_back(std::make_shared<const CellComplex>(std::move(p)));
    init_names(std::move(names));
    for (const auto& g : gluings) add_gluing(g);
    derive_inverses();
    orientations_.resize(pieces_.size());
  }

  AdjunctionSystem(std::vector<std::shared_ptr<const CellComplex>> pieces, std::vector<GluingMap> maps,
                   std::vector<std::string> names = {})
      : pieces_(std::move(pieces)) {
    init_names(std::move(names));
    for (auto& m : maps) maps_.emplace(std::make_pair(m.source, m.target), std::move(m));
    orientations_.resize(pieces_.size());
  }

  std::size_t size() const { return pieces_.size(); }
  const CellComplex& piece(std::size_t i) const { return *pieces_.at(i); }
  const std::shared_ptr<const CellComplex>& piece_ptr(std::size_t i) const { return pieces_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::map<std::pair<std::size_t, std::size_t>, GluingMap>& maps() const { return maps_; }

  const GluingMap* map(std::size_t i, std::size_t j) const {
    auto it = maps_.find({i, j});
    return it == maps_.end() ? nullptr : &it->second;
  }

  /// region(i,i) is the whole piece; undeclared pairs have empty regions.
  CellSet region(std::size_t i, std::size_t j) const {
    if (i == j) return CellSet::all(piece(i));
    if (const auto* m = map(i, j)) return m->source_region;
    return CellSet(piece(i));
  }

  std::optional<std::size_t> apply(std::size_t i, std::size_t j, std::size_t c) const {
    if (i == j) return c;
    const auto* m = map(i, j);
    return m ? m->apply(c) : std::nullopt;
  }

  std::optional<std::size_t> apply_closure(std::size_t i, std::size_t j, std::size_t c) const {
    if (i == j) return c;
    const auto* m = map(i, j);
    return m ? m->apply_closure(c) : std::nullopt;
  }

  void set_orientation(std::size_t i, Orientation o) { orientations_.at(i) = std::move(o); }
  const std::optional<Orientation>& orientation(std::size_t i) const { return orientations_.at(i); }
  bool oriented() const {
    return std::all_of(orientations_.begin(), orientations_.end(), [](const auto& o) { return o.has_value(); });
  }

  /// Replaces or inserts one directed gluing map (used to build deliberately
  /// inconsistent systems).
  void replace_map(GluingMap m) { maps_.insert_or_assign({m.source, m.target}, std::move(m)); }

 private:
  void init_names(std::vector<std::string> names) {
    names_ = std::move(names);
    for (std::size_t i = names_.size(); i < pieces_.size(); ++i) names_.push_back("M" + std::to_string(i + 1));
  }

  void add_gluing(const GluingSpec& g) {
    const auto& src = piece(g.i);
    const auto& dst = piece(g.j);
    GluingMap m;
    m.source = g.i;
    m.target = g.j;
    m.source_region = CellSet::of_ids(src, g.region);
    m.target_region = CellSet(dst);
    for (const auto& [a, b] : g.pairs) {
      auto x = src.index(a), y = dst.index(b);
      m.cells[x] = y;
      m.closure[x] = y;
      m.target_region.insert(y);
    }
    for (const auto& [a, b] : g.frontier_pairs) m.closure[src.index(a)] = dst.index(b);
    maps_.insert_or_assign({g.i, g.j}, std::move(m));
  }

  void derive_inverses() {
    std::vector<GluingMap> extra;
    for (const auto& [key, m] : maps_) {
      if (key.first == key.second || maps_.count({key.second, key.first})) continue;
      GluingMap inv;
      inv.source = m.target;
      inv.target = m.source;
      inv.source_region = m.target_region;
      inv.target_region = m.source_region;
      for (const auto& [x, y] : m.cells) inv.cells[y] = x;
      for (const auto& [x, y] : m.closure) inv.closure[y] = x;
      extra.push_back(std::move(inv));
    }
    for (auto& m : extra) maps_.emplace(std::make_pair(m.source, m.target), std::move(m));
  }

  std::vector<std::shared_ptr<const CellComplex>> pieces_;
  std::vector<std::string> names_;
  std::map<std::pair<std::size_t, std::size_t>, GluingMap> maps_;
  std::vector<std::optional<Orientation>> orientations_;
};

namespace detail {

inline std::string cell_loc(const AdjunctionSystem& s, std::size_t piece, std::size_t cell) {
  return s.name(piece) + ":" + s.piece(piece).id(cell);
}

inline std::string pair_loc(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

inline void check_map_shape(const AdjunctionSystem& s, const GluingMap& m, ValidationReport& r) {
  const auto& src = s.piece(m.source);
  const auto& dst = s.piece(m.target);
  const std::string loc = pair_loc(m.source, m.target);
  if (!m.source_region.is_open()) r.add("region-open", loc, "gluing region is not star-closed");
  if (!m.target_region.is_open()) r.add("region-open", loc, "image of the gluing region is not star-closed");

  for (auto c : m.source_region.members())
    if (!m.cells.count(c)) r.add("bijection", loc + " " + src.id(c), "region cell has no image");
  std::map<std::size_t, std::size_t> hits;
  for (const auto& [x, y] : m.cells) {
    if (!m.source_region.contains(x))
      r.add("bijection", loc + " " + src.id(x), "mapped cell lies outside the gluing region");
    if (src.dim(x) != dst.dim(y))
      r.add("bijection", loc + " " + src.id(x), "gluing map changes dimension");
    if (++hits[y] == 2) r.add("bijection", loc + " " + dst.id(y), "gluing map is not injective");
  }

  CellSet cl = closure(m.source_region);
  CellSet fr = cl - m.source_region;
  CellSet target_cl = closure(m.target_region);
  std::map<std::size_t, std::size_t> chits;
  for (auto c : fr.members()) {
    auto img = m.apply_closure(c);
    if (!img) {
      r.add("closure-extension", loc + " " + src.id(c), "frontier cell has no image under the closure extension");
      continue;
    }
    if (!target_cl.contains(*img) || m.target_region.contains(*img))
      r.add("closure-extension", loc + " " + src.id(c), "frontier cell is not sent to the target frontier");
  }
  for (const auto& [x, y] : m.closure) {
    if (!cl.contains(x))
      r.add("closure-extension", loc + " " + src.id(x), "closure extension defined outside the closure");
    if (src.dim(x) != dst.dim(y))
      r.add("closure-extension", loc + " " + src.id(x), "closure extension changes dimension");
    if (++chits[y] == 2) r.add("closure-extension", loc + " " + dst.id(y), "closure extension is not injective");
  }
  // incidence is preserved on the whole closure
  for (auto c : cl.members()) {
    auto fc = m.apply_closure(c);
    if (!fc) continue;
    if (src.faces(c).size() != dst.faces(*fc).size())
      r.add("incidence", loc + " " + src.id(c), "image cell has a different number of faces");
    for (const auto& f : src.faces(c)) {
      auto ff = m.apply_closure(f.cell);
      if (!ff) continue;
      if (dst.incidence(*fc, *ff) != f.sign)
        r.add("incidence", loc + " " + src.id(c) + "/" + src.id(f.cell), "gluing map does not preserve incidence");
    }
  }
}

}  // namespace detail

/// Checks A1-A3, openness of regions, bijectivity, incidence preservation,
/// the closure extension, and orientation compatibility when orientations
/// are present.
inline ValidationReport validate_system(const AdjunctionSystem& s) {
  ValidationReport r;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto pr = validate_complex(s.piece(i));
    for (auto e : pr.entries) r.add(e.rule, s.name(i) + " " + e.location, e.message);
  }
  if (!r.ok()) return r;

  for (const auto& [key, m] : s.maps()) {
    auto [i, j] = key;
    if (i >= n || j >= n) {
      r.add("index", detail::pair_loc(i, j), "gluing references a missing piece");
      continue;
    }
    if (i == j) {
      bool identity = m.source_region == CellSet::all(s.piece(i));
      for (const auto& [x, y] : m.cells) identity = identity && x == y;
      if (!identity) r.add("A1", detail::pair_loc(i, i), "self-gluing must be the identity on the whole piece");
      continue;
    }
    detail::check_map_shape(s, m, r);
  }

  // A2: symmetry
  for (const auto& [key, m] : s.maps()) {
    auto [i, j] = key;
    if (i == j || i >= n || j >= n) continue;
    const auto* back = s.map(j, i);
    const std::string loc = detail::pair_loc(i, j);
    if (!back) {
      r.add("A2", loc, "missing reverse gluing map");
      continue;
    }
    if (!(back->source_region == m.target_region))
      r.add("A2", loc, "region(j,i) differs from the image of region(i,j)");
    for (const auto& [x, y] : m.cells) {
      auto z = back->apply(y);
      if (!z || *z != x) {
        r.add("A2", loc + " " + s.piece(i).id(x), "map(j,i) is not the inverse of map(i,j)");
        break;
      }
    }
    for (const auto& [x, y] : m.closure) {
      auto z = back->apply_closure(y);
      if (!z || *z != x) {
        r.add("A2", loc + " " + s.piece(i).id(x), "closure extensions are not mutually inverse");
        break;
      }
    }
  }

  // A3: cocycle on triple overlaps, and on their closures for the extensions
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        CellSet overlap = s.region(i, j) & s.region(i, k);
        const std::string loc = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                std::to_string(k + 1) + ")";
        for (auto x : overlap.members()) {
          auto y = s.apply(i, j, x);
          auto z = s.apply(i, k, x);
          if (!y || !z) continue;
          auto yz = s.apply(j, k, *y);
          if (!yz || *yz != *z) {
            r.add("A3", loc + " " + detail::cell_loc(s, i, x), "map(i,k) differs from map(j,k) o map(i,j)");
            break;
          }
        }
        for (auto x : closure(overlap).members()) {
          auto y = s.apply_closure(i, j, x);
          auto z = s.apply_closure(i, k, x);
          if (!y || !z) continue;
          auto yz = s.apply_closure(j, k, *y);
          if (!yz || *yz != *z) {
            r.add("A3-closure", loc + " " + detail::cell_loc(s, i, x),
                  "closure extensions violate the cocycle condition");
            break;
          }
        }
      }

  // orientations
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.orientation(i)) continue;
    auto orep = validate_orientation(s.piece(i), *s.orientation(i));
    for (auto e : orep.entries) r.add(e.rule, s.name(i) + " " + e.location, e.message);
  }
  for (const auto& [key, m] : s.maps()) {
    auto [i, j] = key;
    if (i == j || i >= n || j >= n || !s.orientation(i) || !s.orientation(j)) continue;
    int top = s.piece(i).top_dimension();
    for (const auto& [x, y] : m.cells) {
      if (s.piece(i).dim(x) != top) continue;
      if (s.orientation(i)->sign(x) != s.orientation(j)->sign(y)) {
        r.add("orientation-preserving", detail::pair_loc(i, j) + " " + s.piece(i).id(x),
              "gluing map reverses orientation");
        break;
      }
    }
  }
  return r;
}

/// Two cells of the glued object that cannot be separated.
struct HausdorffPair {
  PieceCell left;
  PieceCell right;
  bool operator==(const HausdorffPair&) const = default;
};

/// Frontier cells of each region matched to the frontier of the partner
/// region by the closure extension; listed once per unordered piece pair.
inline std::vector<HausdorffPair> hausdorff_pairs(const AdjunctionSystem& s) {
  std::vector<HausdorffPair> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      CellSet reg = s.region(i, j);
      if (reg.empty()) continue;
      for (auto x : frontier(reg).members()) {
        auto y = s.apply_closure(i, j, x);
        if (y) out.push_back({{i, x}, {j, *y}});
      }
    }
  return out;
}

using CellClasses = std::vector<std::vector<PieceCell>>;

namespace detail {

inline CellClasses classes_from(const AdjunctionSystem& s, bool use_closure) {
  std::vector<std::size_t> offset(s.size() + 1, 0);
  for (std::size_t i = 0; i < s.size(); ++i) offset[i + 1] = offset[i] + s.piece(i).size();
  UnionFind uf(offset.back());
  for (const auto& [key, m] : s.maps()) {
    auto [i, j] = key;
    if (i == j) continue;
    for (const auto& [x, y] : (use_closure ? m.closure : m.cells)) uf.unite(offset[i] + x, offset[j] + y);
  }
  std::map<std::size_t, std::vector<PieceCell>> groups;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t c = 0; c < s.piece(i).size(); ++c) groups[uf.find(offset[i] + c)].push_back({i, c});
  CellClasses out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace detail

/// Partition of all (piece, cell) pairs under the open-region identifications.
/// Frontier cells are never identified. Classes are listed in order of their
/// first member.
inline CellClasses glued_cell_classes(const AdjunctionSystem& s) { return detail::classes_from(s, false); }

/// Partition under the closure extensions: the index set of global cochains,
/// which must agree on matched frontier cells as well.
inline CellClasses closure_cell_classes(const AdjunctionSystem& s) { return detail::classes_from(s, true); }

/// Canonical (sorted) form of a partition, for comparisons.
inline CellClasses canonical(CellClasses classes) {
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::sort(classes.begin(), classes.end());
  return classes;
}

/// The system over the first n-1 pieces plus the last piece attached along
/// A = union of region(n,i), with the attaching map sending each cell of A to
/// a representative cell of the subsystem.
struct BinaryDecomposition {
  AdjunctionSystem rest;
  std::size_t last = 0;
  CellSet attaching_region;
  std::map<std::size_t, PieceCell> attaching_map;
};

inline BinaryDecomposition binary_decomposition(const AdjunctionSystem& s) {
  const std::size_t n = s.size();
  if (n < 2) throw PreconditionError("binary decomposition needs at least two pieces");
  const std::size_t last = n - 1;

  std::vector<std::shared_ptr<const CellComplex>> pieces;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < last; ++i) {
    pieces.push_back(s.piece_ptr(i));
    names.push_back(s.name(i));
  }
  std::vector<GluingMap> maps;
  for (const auto& [key, m] : s.maps())
    if (key.first < last && key.second < last) maps.push_back(m);
  AdjunctionSystem rest(std::move(pieces), std::move(maps), std::move(names));
  for (std::size_t i = 0; i < last; ++i)
    if (s.orientation(i)) rest.set_orientation(i, *s.orientation(i));

  // class id of every cell in the subsystem
  auto rest_classes = glued_cell_classes(rest);
  std::map<PieceCell, std::size_t> class_of;
  for (std::size_t k = 0; k < rest_classes.size(); ++k)
    for (const auto& pc : rest_classes[k]) class_of[pc] = k;

  BinaryDecomposition out{std::move(rest), last, CellSet(s.piece(last)), {}};
  for (std::size_t i = 0; i < last; ++i) {
    CellSet reg = s.region(last, i);
    out.attaching_region |= reg;
    for (auto a : reg.members()) {
      auto img = s.apply(last, i, a);
      if (!img) continue;
      PieceCell target{i, *img};
      auto [it, inserted] = out.attaching_map.emplace(a, target);
      if (!inserted && class_of.at(it->second) != class_of.at(target))
        throw PreconditionError("induced attaching map is multivalued at " + detail::cell_loc(s, last, a) +
                                " (cocycle condition fails)");
    }
  }
  return out;
}

/// Re-glues a binary decomposition; the result is a partition over the
/// original piece indices, comparable with glued_cell_classes.
inline CellClasses reglue(const BinaryDecomposition& d) {
  auto rest_classes = glued_cell_classes(d.rest);
  std::map<PieceCell, std::size_t> class_of;
  for (std::size_t k = 0; k < rest_classes.size(); ++k)
    for (const auto& pc : rest_classes[k]) class_of[pc] = k;
  CellClasses out = rest_classes;
  for (std::size_t c = 0; c < d.attaching_region.owner().size(); ++c) {
    auto it = d.attaching_map.find(c);
    if (it == d.attaching_map.end())
      out.push_back({{d.last, c}});
    else
      out[class_of.at(it->second)].push_back({d.last, c});
  }
  return canonical(std::move(out));
}

/// Open intersection of a tuple inside its reference piece t[0]; for a single
/// index this is the whole piece.
inline CellSet open_intersection(const AdjunctionSystem& s, const Tuple& t) {
  CellSet out = CellSet::all(s.piece(t.front()));
  for (std::size_t k = 1; k < t.size(); ++k) out &= s.region(t.front(), t[k]);
  return out;
}

inline CellSet closed_intersection(const AdjunctionSystem& s, const Tuple& t) {
  return closure(open_intersection(s, t));
}

/// Whether closure of the intersection equals the intersection of the
/// closures, for every tuple of size at least two (up to max_arity).
inline std::map<Tuple, bool> closure_intersection_check(const AdjunctionSystem& s,
                                                        std::size_t max_arity = SIZE_MAX) {
  std::map<Tuple, bool> out;
  for (std::size_t m = 2; m <= std::min(s.size(), max_arity); ++m)
    for (const auto& t : tuples_of_size(s.size(), m)) {
      CellSet lhs = closed_intersection(s, t);
      CellSet rhs = CellSet::all(s.piece(t.front()));
      for (std::size_t k = 1; k < t.size(); ++k) rhs &= closure(s.region(t.front(), t[k]));
      out[t] = lhs == rhs;
    }
  return out;
}

inline bool closure_intersection_holds(const AdjunctionSystem& s, std::size_t max_arity = SIZE_MAX) {
  for (const auto& [t, ok] : closure_intersection_check(s, max_arity))
    if (!ok) return false;
  return true;
}

inline bool is_regular_open(const CellSet& region) { return interior(closure(region)) == region; }

/// Regular-openness of every directed region (i,j), i != j.
inline std::map<std::pair<std::size_t, std::size_t>, bool> regular_open_check(const AdjunctionSystem& s) {
  std::map<std::pair<std::size_t, std::size_t>, bool> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j) out[{i, j}] = is_regular_open(s.region(i, j));
  return out;
}

/// Regular-openness of every union of regions inside each piece: for piece i
/// and each nonempty set J of other indices, the union of region(i,j), j in J.
inline bool regular_open_unions_hold(const AdjunctionSystem& s) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    for (std::size_t mask = 1; mask < (std::size_t{1} << others.size()); ++mask) {
      CellSet u(s.piece(i));
      for (std::size_t b = 0; b < others.size(); ++b)
        if (mask & (std::size_t{1} << b)) u |= s.region(i, others[b]);
      if (!is_regular_open(u)) return false;
    }
  }
  return true;
}

}  // namespace nhm

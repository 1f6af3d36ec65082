#pragma once

// Cellular cochains with exact rational values: coboundary, compatible
// ("fibre product") global cochains on an adjunction system, integration by
// inclusion-exclusion over closed intersections, the boundary term that
// replaces Stokes' theorem on glued objects, and pairing with chains.

#include <nhm/adjunction.hpp>
#include <nhm/complex.hpp>
#include <nhm/rational.hpp>
#include <nhm/report.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nhm {

class Cochain {
 public:
  Cochain() = default;
  Cochain(CellSet owner, int degree)
      : owner_(std::move(owner)), degree_(degree), values_(owner_.owner().size()) {}

  const CellSet& owner() const { return owner_; }
  const CellComplex& complex() const { return owner_.owner(); }
  int degree() const { return degree_; }

  const Rational& value(std::size_t cell) const { return values_.at(cell); }

  void set(std::size_t cell, Rational v) {
    if (!owner_.contains(cell) || complex().dim(cell) != degree_)
      throw std::invalid_argument("cochain value on cell \"" + complex().id(cell) +
                                  "\" outside its support domain or of the wrong degree");
    values_[cell] = std::move(v);
  }

  bool is_zero() const {
    for (const auto& v : values_)
      if (v != 0) return false;
    return true;
  }

  Cochain& operator+=(const Cochain& o) {
    check_same(o);
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += o.values_[c];
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator*(const Rational& s, Cochain a) {
    for (auto& v : a.values_) v *= s;
    return a;
  }
  bool operator==(const Cochain& o) const {
    return owner_ == o.owner_ && degree_ == o.degree_ && values_ == o.values_;
  }

 private:
  void check_same(const Cochain& o) const {
    if (!(owner_ == o.owner_) || degree_ != o.degree_)
      throw std::invalid_argument("cochains live on different domains or degrees");
  }

  CellSet owner_;
  int degree_ = 0;
  std::vector<Rational> values_;
};

/// (dw)(c) = sum over facets f of c of [c:f] w(f).
inline Cochain coboundary(const Cochain& w) {
  const auto& cx = w.complex();
  Cochain out(w.owner(), w.degree() + 1);
  for (auto c : w.owner().members_of_dim(w.degree() + 1)) {
    Rational acc = 0;
    for (const auto& f : cx.faces(c)) {
      if (!w.owner().contains(f.cell))
        throw PreconditionError("coboundary: face \"" + cx.id(f.cell) + "\" of \"" + cx.id(c) +
                                "\" lies outside the cochain's domain");
      acc += f.sign * w.value(f.cell);
    }
    out.set(c, acc);
  }
  return out;
}

inline Cochain restrict_to(const Cochain& w, const CellSet& sub) {
  Cochain out(sub, w.degree());
  for (auto c : sub.members_of_dim(w.degree())) {
    if (!w.owner().contains(c)) throw std::invalid_argument("restriction target is not inside the domain");
    out.set(c, w.value(c));
  }
  return out;
}

/// Copies values from a face-closed domain onto its whole complex, zero elsewhere.
inline Cochain extend_by_zero(const Cochain& w) {
  if (!w.owner().is_closed()) throw PreconditionError("extend_by_zero requires a face-closed domain");
  Cochain out(CellSet::all(w.complex()), w.degree());
  for (auto c : w.owner().members_of_dim(w.degree())) out.set(c, w.value(c));
  return out;
}

/// Raised when per-piece cochains disagree on a matched cell.
class IncompatibleCochain : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A tuple of per-piece cochains agreeing under every gluing map, including
/// on matched frontier cells.
class GlobalCochain {
 public:
  GlobalCochain() = default;

  const AdjunctionSystem& system() const { return *system_; }
  int degree() const { return degree_; }
  const std::vector<Cochain>& components() const { return components_; }
  const Cochain& component(std::size_t i) const { return components_.at(i); }

 private:
  friend GlobalCochain assemble_global(const AdjunctionSystem&, std::vector<Cochain>);
  const AdjunctionSystem* system_ = nullptr;
  int degree_ = 0;
  std::vector<Cochain> components_;
};

inline GlobalCochain assemble_global(const AdjunctionSystem& s, std::vector<Cochain> components) {
  if (components.size() != s.size()) throw std::invalid_argument("assemble_global: one component per piece required");
  int q = components.empty() ? 0 : components.front().degree();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (components[i].degree() != q) throw std::invalid_argument("assemble_global: components differ in degree");
    if (&components[i].complex() != &s.piece(i) || components[i].owner().count() != s.piece(i).size())
      throw std::invalid_argument("assemble_global: component " + std::to_string(i + 1) +
                                  " is not a cochain on the whole piece");
  }
  auto mismatch = [&](std::size_t i, std::size_t j, std::size_t x, std::size_t y, const char* where) {
    return IncompatibleCochain(std::string("incompatible cochain ") + where + ": " + detail::cell_loc(s, i, x) +
                               " = " + to_string(components[i].value(x)) + " but " + detail::cell_loc(s, j, y) +
                               " = " + to_string(components[j].value(y)));
  };
  // open regions first, then frontiers; both are required
  for (const auto& [key, m] : s.maps()) {
    auto [i, j] = key;
    if (i >= j) continue;
    for (const auto& [x, y] : m.cells)
      if (s.piece(i).dim(x) == q && components[i].value(x) != components[j].value(y))
        throw mismatch(i, j, x, y, "on the open gluing region");
  }
  for (const auto& [key, m] : s.maps()) {
    auto [i, j] = key;
    if (i >= j) continue;
    for (const auto& [x, y] : m.closure)
      if (!m.cells.count(x) && s.piece(i).dim(x) == q && components[i].value(x) != components[j].value(y))
        throw mismatch(i, j, x, y, "on the region frontier");
  }
  GlobalCochain g;
  g.system_ = &s;
  g.degree_ = q;
  g.components_ = std::move(components);
  return g;
}

/// Global cochain from one value per closure class (see closure_cell_classes).
inline GlobalCochain global_from_classes(const AdjunctionSystem& s, int degree, const CellClasses& classes,
                                         const std::vector<Rational>& class_values) {
  std::vector<Cochain> comps;
  for (std::size_t i = 0; i < s.size(); ++i) comps.emplace_back(CellSet::all(s.piece(i)), degree);
  std::size_t k = 0;
  for (const auto& cls : classes) {
    const auto& [p0, c0] = cls.front();
    if (s.piece(p0).dim(c0) != degree) continue;
    for (const auto& [p, c] : cls) comps[p].set(c, class_values.at(k));
    ++k;
  }
  return assemble_global(s, std::move(comps));
}

inline GlobalCochain coboundary(const GlobalCochain& w) {
  std::vector<Cochain> comps;
  for (const auto& c : w.components()) comps.push_back(coboundary(c));
  return assemble_global(w.system(), std::move(comps));
}

namespace detail {

inline Rational oriented_sum(const Cochain& w, const Orientation& o, const CellSet& domain) {
  Rational acc = 0;
  for (auto c : domain.members_of_dim(w.degree())) acc += o.sign(c) * w.value(c);
  return acc;
}

inline void require_top_degree(const GlobalCochain& w) {
  const auto& s = w.system();
  if (!s.oriented()) throw PreconditionError("integration requires an oriented system");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.piece(i).top_dimension() != w.degree())
      throw PreconditionError("integration requires a top-degree cochain (piece " + s.name(i) + " has dimension " +
                              std::to_string(s.piece(i).top_dimension()) + ")");
}

}  // namespace detail

/// One term of the inclusion-exclusion integral: a tuple, the signed weight
/// it enters with, and the integral over its closed intersection.
struct IntegralTerm {
  Tuple tuple;
  int weight = 1;
  Rational value;
};

/// Per-tuple terms: piece integrals with weight +1 and closed p-fold
/// intersections (taken in the first piece of the tuple) with weight (-1)^(p+1).
inline std::vector<IntegralTerm> integral_terms(const GlobalCochain& w, std::size_t max_arity = SIZE_MAX) {
  detail::require_top_degree(w);
  const auto& s = w.system();
  std::vector<IntegralTerm> out;
  for (std::size_t p = 1; p <= std::min(s.size(), max_arity); ++p)
    for (const auto& t : tuples_of_size(s.size(), p)) {
      CellSet dom = p == 1 ? CellSet::all(s.piece(t[0])) : closed_intersection(s, t);
      if (dom.empty()) continue;
      out.push_back({t, p % 2 == 1 ? 1 : -1, detail::oriented_sum(w.component(t[0]), *s.orientation(t[0]), dom)});
    }
  return out;
}

/// Integral of a top-degree global cochain:
/// sum_i I(M_i) - sum_{p>=2} (-1)^p sum_{i1<..<ip} I(closure of M_{i1..ip}).
inline Rational integrate(const GlobalCochain& w, std::size_t max_arity = SIZE_MAX) {
  Rational total = 0;
  for (const auto& term : integral_terms(w, max_arity)) total += term.weight * term.value;
  return total;
}

/// The same integral summed once per glued class of top cells.
inline Rational integrate_by_classes(const GlobalCochain& w) {
  detail::require_top_degree(w);
  const auto& s = w.system();
  Rational total = 0;
  for (const auto& cls : glued_cell_classes(s)) {
    const auto& [p, c] = cls.front();
    if (s.piece(p).dim(c) != w.degree()) continue;
    total += s.orientation(p)->sign(c) * w.component(p).value(c);
  }
  return total;
}

struct StokesDefect {
  Rational lhs;  // integral of dw over the glued object
  Rational rhs;  // minus the oriented boundary sum over the region frontier
};

/// For a binary system of closed oriented pieces and w of degree top-1:
/// lhs = integral of dw, rhs = -(oriented sum of w over the frontier of
/// region(1,2)), each frontier cell weighted by the boundary orientation the
/// closure induces on it.
inline StokesDefect stokes_defect(const GlobalCochain& w) {
  const auto& s = w.system();
  if (s.size() != 2) throw PreconditionError("stokes_defect needs a binary system (decompose first)");
  if (!s.oriented()) throw PreconditionError("stokes_defect requires an oriented system");
  for (std::size_t i = 0; i < 2; ++i) {
    if (!is_closed_pseudomanifold(s.piece(i)))
      throw PreconditionError("stokes_defect requires pieces without boundary (" + s.name(i) + " has boundary)");
    if (s.piece(i).top_dimension() != w.degree() + 1)
      throw PreconditionError("stokes_defect requires a cochain of degree top-1");
  }
  StokesDefect out;
  out.lhs = integrate(coboundary(w));

  const auto& cx = s.piece(0);
  const auto& o = *s.orientation(0);
  CellSet reg = s.region(0, 1);
  CellSet cl = closure(reg);
  Rational boundary = 0;
  for (auto f : (cl - reg).members_of_dim(w.degree())) {
    int induced = 0;
    for (const auto& cf : cx.cofaces(f))
      if (cl.contains(cf.cell)) induced += o.sign(cf.cell) * cf.sign;
    boundary += induced * w.component(0).value(f);
  }
  out.rhs = -boundary;
  return out;
}

/// Formal rational combination of cells, each named by a representative
/// (piece, cell) of its glued class.
struct Chain {
  int degree = 0;
  std::map<PieceCell, Rational> terms;

  void add(PieceCell pc, const Rational& coeff) {
    auto& slot = terms[pc];
    slot += coeff;
    if (slot == 0) terms.erase(pc);
  }
};

/// In-piece cellular boundary of each representative.
inline Chain boundary(const AdjunctionSystem& s, const Chain& c) {
  Chain out;
  out.degree = c.degree - 1;
  for (const auto& [pc, coeff] : c.terms)
    for (const auto& f : s.piece(pc.first).faces(pc.second)) out.add({pc.first, f.cell}, coeff * f.sign);
  return out;
}

/// Pairing <w, c>: the sum of coefficient times the value on each class.
inline Rational integrate_over_chain(const GlobalCochain& w, const Chain& c) {
  if (w.degree() != c.degree)
    throw std::invalid_argument("integrate_over_chain: cochain degree " + std::to_string(w.degree()) +
                                " does not match chain degree " + std::to_string(c.degree));
  const auto& s = w.system();
  Rational total = 0;
  for (const auto& [pc, coeff] : c.terms) {
    const auto& [p, cell] = pc;
    if (p >= s.size() || cell >= s.piece(p).size() || s.piece(p).dim(cell) != c.degree)
      throw std::invalid_argument("integrate_over_chain: chain references a missing cell of degree " +
                                  std::to_string(c.degree));
    total += coeff * w.component(p).value(cell);
  }
  return total;
}

/// Splits every edge in two at a new midpoint vertex, in every piece, and
/// carries regions, gluing maps and orientations along. Edge e becomes
/// e#a, e#m, e#b.
inline AdjunctionSystem subdivide_edges(const AdjunctionSystem& s) {
  auto split = [](const CellComplex& cx) {
    std::vector<CellDecl> out;
    for (std::size_t c = 0; c < cx.size(); ++c) {
      const auto& d = cx.decls()[c];
      if (d.dim == 1 && d.faces.size() == 2) {
        const auto& a = d.faces[0];
        const auto& b = d.faces[1];
        out.push_back({d.id + "#m", 0, {}});
        out.push_back({d.id + "#a", 1, {{a.face, a.sign}, {d.id + "#m", b.sign}}});
        out.push_back({d.id + "#b", 1, {{d.id + "#m", a.sign}, {b.face, b.sign}}});
        continue;
      }
      CellDecl nd{d.id, d.dim, {}};
      for (const auto& f : d.faces) {
        auto fi = cx.find(f.face);
        if (fi && cx.dim(*fi) == 1 && cx.decls()[*fi].faces.size() == 2) {
          nd.faces.push_back({f.face + "#a", f.sign});
          nd.faces.push_back({f.face + "#b", f.sign});
        } else {
          nd.faces.push_back(f);
        }
      }
      out.push_back(std::move(nd));
    }
    return CellComplex(std::move(out));
  };
  auto pieces_of = [&](const CellComplex& cx, std::size_t c) -> std::vector<std::string> {
    const auto& id = cx.id(c);
    if (cx.dim(c) == 1 && cx.decls()[c].faces.size() == 2) return {id + "#a", id + "#m", id + "#b"};
    return {id};
  };

  std::vector<CellComplex> pieces;
  for (std::size_t i = 0; i < s.size(); ++i) pieces.push_back(split(s.piece(i)));
  std::vector<GluingSpec> specs;
  for (const auto& [key, m] : s.maps()) {
    auto [i, j] = key;
    if (i == j) continue;
    GluingSpec g{i, j, {}, {}, {}};
    const auto& src = s.piece(i);
    const auto& dst = s.piece(j);
    for (auto c : m.source_region.members())
      for (auto& id : pieces_of(src, c)) g.region.push_back(id);
    for (const auto& [x, y] : m.closure) {
      auto xs = pieces_of(src, x);
      auto ys = pieces_of(dst, y);
      for (std::size_t k = 0; k < xs.size() && k < ys.size(); ++k)
        (m.cells.count(x) ? g.pairs : g.frontier_pairs).emplace_back(xs[k], ys[k]);
    }
    specs.push_back(std::move(g));
  }
  AdjunctionSystem out(std::move(pieces), specs, s.names());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s.orientation(i)) continue;
    const auto& old = s.piece(i);
    Orientation o(out.piece(i));
    for (auto t : old.cells_of_dim(old.top_dimension()))
      for (auto& id : pieces_of(old, t)) {
        auto idx = out.piece(i).index(id);
        if (out.piece(i).dim(idx) == old.top_dimension()) o.set(idx, s.orientation(i)->sign(t));
      }
    out.set_orientation(i, std::move(o));
  }
  return out;
}

/// Transfers a top-degree global cochain to the edge-subdivided system. For
/// one-dimensional pieces each edge value is split evenly between its halves.
inline GlobalCochain subdivide_cochain(const GlobalCochain& w, const AdjunctionSystem& refined) {
  const auto& s = w.system();
  std::vector<Cochain> comps;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& old = s.piece(i);
    const auto& fine = refined.piece(i);
    if (old.top_dimension() != w.degree())
      throw PreconditionError("subdivide_cochain supports top-degree cochains only");
    Cochain c(CellSet::all(fine), w.degree());
    for (auto t : old.cells_of_dim(w.degree())) {
      const auto& v = w.component(i).value(t);
      if (w.degree() == 1 && old.decls()[t].faces.size() == 2) {
        c.set(fine.index(old.id(t) + "#a"), v / 2);
        c.set(fine.index(old.id(t) + "#b"), v / 2);
      } else {
        c.set(fine.index(old.id(t)), v);
      }
    }
    comps.push_back(std::move(c));
  }
  return assemble_global(refined, std::move(comps));
}

}  // namespace nhm

#pragma once

// Finite cell complexes with signed incidence and the subcomplex calculus
// (closure, star, interior, frontier) of the face-poset topology: a set is
// open when it is star-closed and closed when it is face-closed.

#include <nhm/report.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nhm {

struct FaceRef {
  std::string face;
  int sign = 1;
};

/// One cell as declared in input: opaque id, explicit dimension, signed faces.
struct CellDecl {
  std::string id;
  int dim = 0;
  std::vector<FaceRef> faces;
};

struct Incidence {
  std::size_t cell;
  int sign;
};

class CellComplex {
 public:
  CellComplex() = default;

  /// Never throws on malformed data; unresolvable entries are kept in the
  /// declarations and surface through validate_complex().
  explicit CellComplex(std::vector<CellDecl> decls) : decls_(std::move(decls)) {
    index_.reserve(decls_.size());
    for (std::size_t i = 0; i < decls_.size(); ++i) index_.emplace(decls_[i].id, i);
    faces_.resize(decls_.size());
    cofaces_.resize(decls_.size());
    for (std::size_t i = 0; i < decls_.size(); ++i) {
      if (index_.at(decls_[i].id) != i) continue;  // duplicate id, first wins
      for (const auto& f : decls_[i].faces) {
        auto it = index_.find(f.face);
        if (it == index_.end()) continue;
        faces_[i].push_back({it->second, f.sign});
        cofaces_[it->second].push_back({i, f.sign});
      }
      top_dim_ = std::max(top_dim_, decls_[i].dim);
    }
    for (std::size_t i = 0; i < decls_.size(); ++i) {
      int d = decls_[i].dim;
      if (d < 0) continue;
      if (by_dim_.size() <= static_cast<std::size_t>(d)) by_dim_.resize(d + 1);
      if (index_.at(decls_[i].id) == i) by_dim_[d].push_back(i);
    }
  }

  std::size_t size() const { return decls_.size(); }
  bool empty() const { return decls_.empty(); }
  const std::vector<CellDecl>& decls() const { return decls_; }
  const std::string& id(std::size_t i) const { return decls_[i].id; }
  int dim(std::size_t i) const { return decls_[i].dim; }
  int top_dimension() const { return top_dim_; }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw std::out_of_range("unknown cell id \"" + std::string(id) + "\"");
    return it->second;
  }

  std::span<const Incidence> faces(std::size_t i) const { return faces_[i]; }
  std::span<const Incidence> cofaces(std::size_t i) const { return cofaces_[i]; }

  /// Signed incidence [cell : face], zero when face is not a facet of cell.
  int incidence(std::size_t cell, std::size_t face) const {
    for (const auto& f : faces_[cell])
      if (f.cell == face) return f.sign;
    return 0;
  }

  std::span<const std::size_t> cells_of_dim(int q) const {
    if (q < 0 || static_cast<std::size_t>(q) >= by_dim_.size()) return {};
    return by_dim_[q];
  }

 private:
  std::vector<CellDecl> decls_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<Incidence>> faces_;
  std::vector<std::vector<Incidence>> cofaces_;
  std::vector<std::vector<std::size_t>> by_dim_;
  int top_dim_ = -1;
};

inline ValidationReport validate_complex(const CellComplex& c) {
  ValidationReport report;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& d = c.decls()[i];
    if (!seen.emplace(d.id, i).second) report.add("duplicate-id", d.id, "cell id declared more than once");
    if (d.dim < 0) report.add("negative-dimension", d.id, "dimension must be non-negative");
    std::vector<std::string> listed;
    for (const auto& f : d.faces) {
      if (f.sign != 1 && f.sign != -1)
        report.add("bad-sign", d.id + "/" + f.face, "incidence sign must be +1 or -1");
      if (std::find(listed.begin(), listed.end(), f.face) != listed.end())
        report.add("repeated-face", d.id + "/" + f.face, "face listed twice");
      listed.push_back(f.face);
      auto fi = c.find(f.face);
      if (!fi) {
        report.add("dangling face", d.id + "/" + f.face, "face \"" + f.face + "\" does not exist");
        continue;
      }
      if (c.dim(*fi) != d.dim - 1)
        report.add("face-dimension", d.id + "/" + f.face,
                   "face has dimension " + std::to_string(c.dim(*fi)) + ", expected " +
                       std::to_string(d.dim - 1));
    }
  }
  // boundary of boundary
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::map<std::size_t, long> acc;
    for (const auto& f : c.faces(i))
      for (const auto& e : c.faces(f.cell)) acc[e.cell] += static_cast<long>(f.sign) * e.sign;
    for (const auto& [e, v] : acc)
      if (v != 0)
        report.add("boundary-squared", c.id(i) + "/" + c.id(e),
                   "composite incidence sums to " + std::to_string(v));
  }
  return report;
}

/// A subset of the cells of one complex. Holds a non-owning pointer; the
/// owner must outlive the set.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(const CellComplex& owner) : owner_(&owner), mask_(owner.size(), false) {}

  static CellSet all(const CellComplex& owner) {
    CellSet s(owner);
    std::fill(s.mask_.begin(), s.mask_.end(), true);
    s.count_ = owner.size();
    return s;
  }

  static CellSet of(const CellComplex& owner, std::span<const std::size_t> cells) {
    CellSet s(owner);
    for (auto c : cells) s.insert(c);
    return s;
  }

  static CellSet of_ids(const CellComplex& owner, const std::vector<std::string>& ids) {
    CellSet s(owner);
    for (const auto& id : ids) s.insert(owner.index(id));
    return s;
  }

  const CellComplex& owner() const { return *owner_; }
  bool has_owner() const { return owner_ != nullptr; }
  bool contains(std::size_t c) const { return c < mask_.size() && mask_[c]; }
  std::size_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

  void insert(std::size_t c) {
    if (!mask_[c]) {
      mask_[c] = true;
      ++count_;
    }
  }
  void erase(std::size_t c) {
    if (mask_[c]) {
      mask_[c] = false;
      --count_;
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> members_of_dim(int q) const {
    std::vector<std::size_t> out;
    for (auto c : owner_->cells_of_dim(q))
      if (mask_[c]) out.push_back(c);
    return out;
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (auto c : members()) out.push_back(owner_->id(c));
    return out;
  }

  /// Star-closed: every coface of a member is a member.
  bool is_open() const {
    for (auto c : members())
      for (const auto& cf : owner_->cofaces(c))
        if (!mask_[cf.cell]) return false;
    return true;
  }

  /// Face-closed: every face of a member is a member.
  bool is_closed() const {
    for (auto c : members())
      for (const auto& f : owner_->faces(c))
        if (!mask_[f.cell]) return false;
    return true;
  }

  bool subset_of(const CellSet& other) const {
    for (auto c : members())
      if (!other.contains(c)) return false;
    return true;
  }

  CellSet& operator|=(const CellSet& o) {
    for (auto c : o.members()) insert(c);
    return *this;
  }
  CellSet& operator&=(const CellSet& o) {
    for (auto c : members())
      if (!o.contains(c)) erase(c);
    return *this;
  }
  CellSet& operator-=(const CellSet& o) {
    for (auto c : o.members())
      if (contains(c)) erase(c);
    return *this;
  }
  friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
  friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
  friend CellSet operator-(CellSet a, const CellSet& b) { return a -= b; }

  bool operator==(const CellSet& o) const { return owner_ == o.owner_ && mask_ == o.mask_; }

 private:
  const CellComplex* owner_ = nullptr;
  std::vector<bool> mask_;
  std::size_t count_ = 0;
};

/// Smallest face-closed superset.
inline CellSet closure(const CellSet& s) {
  CellSet out = s;
  std::vector<std::size_t> stack = s.members();
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (const auto& f : s.owner().faces(c))
      if (!out.contains(f.cell)) {
        out.insert(f.cell);
        stack.push_back(f.cell);
      }
  }
  return out;
}

/// Smallest star-closed superset.
inline CellSet star(const CellSet& s) {
  CellSet out = s;
  std::vector<std::size_t> stack = s.members();
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (const auto& cf : s.owner().cofaces(c))
      if (!out.contains(cf.cell)) {
        out.insert(cf.cell);
        stack.push_back(cf.cell);
      }
  }
  return out;
}

/// Largest star-closed subset.
inline CellSet interior(const CellSet& s) {
  // cells none of whose cofaces leave s
  CellSet rest = CellSet::all(s.owner()) - s;
  return CellSet::all(s.owner()) - closure(rest);
}

/// Largest face-closed subset.
inline CellSet closed_part(const CellSet& s) {
  CellSet rest = CellSet::all(s.owner()) - s;
  return CellSet::all(s.owner()) - star(rest);
}

/// closure(s) \ s for an open s; the result is always face-closed.
inline CellSet frontier(const CellSet& s) {
  if (!s.is_open()) throw PreconditionError("frontier requires an open (star-closed) cell set");
  return closure(s) - s;
}

inline long euler_characteristic(const CellSet& s) {
  long chi = 0;
  for (auto c : s.members()) chi += (s.owner().dim(c) % 2 == 0) ? 1 : -1;
  return chi;
}

inline long euler_characteristic(const CellComplex& c) { return euler_characteristic(CellSet::all(c)); }

/// Components under the face/coface relation restricted to s.
inline std::size_t connected_components(const CellSet& s) {
  const auto& cx = s.owner();
  std::vector<bool> visited(cx.size(), false);
  std::size_t components = 0;
  for (auto start : s.members()) {
    if (visited[start]) continue;
    ++components;
    std::vector<std::size_t> stack{start};
    visited[start] = true;
    while (!stack.empty()) {
      auto c = stack.back();
      stack.pop_back();
      auto visit = [&](std::size_t n) {
        if (s.contains(n) && !visited[n]) {
          visited[n] = true;
          stack.push_back(n);
        }
      };
      for (const auto& f : cx.faces(c)) visit(f.cell);
      for (const auto& f : cx.cofaces(c)) visit(f.cell);
    }
  }
  return components;
}

/// Per-top-cell sign; entries for non-top cells are zero.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(const CellComplex& c) : signs_(c.size(), 0) {
    for (auto t : c.cells_of_dim(c.top_dimension())) signs_[t] = 1;
  }
  int sign(std::size_t cell) const { return cell < signs_.size() ? signs_[cell] : 0; }
  void set(std::size_t cell, int s) { signs_[cell] = s; }
  std::size_t size() const { return signs_.size(); }

 private:
  std::vector<int> signs_;
};

/// Orientation consistency: top cells sharing a codimension-one face induce
/// opposite signs on it.
inline ValidationReport validate_orientation(const CellComplex& c, const Orientation& o) {
  ValidationReport report;
  int top = c.top_dimension();
  for (auto t : c.cells_of_dim(top))
    if (o.sign(t) != 1 && o.sign(t) != -1) report.add("orientation-sign", c.id(t), "top cell lacks a sign");
  if (!report.ok()) return report;
  for (auto f : c.cells_of_dim(top - 1)) {
    auto cof = c.cofaces(f);
    if (cof.size() != 2) continue;
    int induced = o.sign(cof[0].cell) * cof[0].sign + o.sign(cof[1].cell) * cof[1].sign;
    if (induced != 0)
      report.add("orientation-mismatch", c.id(f),
                 "top cells " + c.id(cof[0].cell) + " and " + c.id(cof[1].cell) +
                     " induce the same sign on their shared face");
  }
  return report;
}

/// Propagates a consistent orientation from the first top cell of each
/// component; nullopt when the complex is not orientable.
inline std::optional<Orientation> induce_orientation(const CellComplex& c) {
  int top = c.top_dimension();
  Orientation o(c);
  std::vector<int> assigned(c.size(), 0);
  for (auto seed : c.cells_of_dim(top)) {
    if (assigned[seed]) continue;
    assigned[seed] = 1;
    std::queue<std::size_t> q;
    q.push(seed);
    while (!q.empty()) {
      auto t = q.front();
      q.pop();
      for (const auto& f : c.faces(t)) {
        for (const auto& other : c.cofaces(f.cell)) {
          if (other.cell == t) continue;
          int want = -assigned[t] * f.sign * other.sign;
          if (!assigned[other.cell]) {
            assigned[other.cell] = want;
            q.push(other.cell);
          } else if (assigned[other.cell] != want) {
            return std::nullopt;
          }
        }
      }
    }
  }
  for (auto t : c.cells_of_dim(top)) o.set(t, assigned[t]);
  return o;
}

/// Every codimension-one cell has exactly two top-dimensional cofaces.
inline bool is_closed_pseudomanifold(const CellComplex& c) {
  int top = c.top_dimension();
  if (top < 1) return false;
  for (auto f : c.cells_of_dim(top - 1))
    if (c.cofaces(f).size() != 2) return false;
  return true;
}

}  // namespace nhm

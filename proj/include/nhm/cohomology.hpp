#pragma once

// Cech bicomplexes of an adjunction system and their cohomology.
//
// Column p holds cochains on the (p+1)-fold intersection domains, one block
// per ascending tuple i0 < ... < ip, each domain living in piece i0. Two
// choices of domain are supported:
//   ClosedIntersection  closures of the open intersections (de Rham flavor)
//   OpenCore            face-closed cores carrying the homotopy type of the
//                       open intersections (singular flavor)
// The total complex uses D = delta + (-1)^p d.

#include <nhm/adjunction.hpp>
#include <nhm/complex.hpp>
#include <nhm/linalg.hpp>
#include <nhm/report.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nhm {

enum class Flavor { ClosedIntersection, OpenCore };

inline const char* flavor_name(Flavor f) { return f == Flavor::ClosedIntersection ? "dr" : "sing"; }

/// Declared cores: per tuple (size >= 2), cell ids in the tuple's first piece.
/// Tuples without a declaration use the largest face-closed subset of the
/// open intersection.
struct CoreAssignment {
  std::map<Tuple, std::vector<std::string>> cells;
};

/// One block of a bicomplex column: a tuple and its domain in piece tuple[0].
struct DomainBlock {
  Tuple tuple;
  CellSet cells;
};

inline CellSet core_of(const AdjunctionSystem& s, const Tuple& t, const CoreAssignment* cores) {
  if (t.size() == 1) return CellSet::all(s.piece(t[0]));
  CellSet open = open_intersection(s, t);
  if (cores) {
    auto it = cores->cells.find(t);
    if (it != cores->cells.end()) {
      CellSet core = CellSet::of_ids(s.piece(t[0]), it->second);
      if (!core.subset_of(open))
        throw PreconditionError("core of tuple " + tuple_label(t) + " is not contained in the open intersection");
      if (!core.is_closed()) throw PreconditionError("core of tuple " + tuple_label(t) + " is not face-closed");
      return core;
    }
  }
  return closed_part(open);
}

inline CellSet domain_of(const AdjunctionSystem& s, const Tuple& t, Flavor flavor, const CoreAssignment* cores) {
  if (t.size() == 1) return CellSet::all(s.piece(t[0]));
  return flavor == Flavor::ClosedIntersection ? closed_intersection(s, t) : core_of(s, t, cores);
}

class Bicomplex {
 public:
  Flavor flavor() const { return flavor_; }
  std::size_t columns() const { return columns_.size(); }
  int top_degree() const { return top_; }
  const std::vector<DomainBlock>& column(std::size_t p) const { return columns_.at(p); }

  std::size_t dim(std::size_t p, int q) const {
    if (p >= columns_.size() || q < 0 || q > top_) return 0;
    return basis_[p][q].size();
  }
  /// Basis of C^{p,q}: (block index within column p, cell index in the block's piece).
  const std::vector<std::pair<std::size_t, std::size_t>>& basis(std::size_t p, int q) const {
    return basis_.at(p).at(q);
  }
  /// Cech differential C^{p,q} -> C^{p+1,q}.
  const Matrix& horizontal(std::size_t p, int q) const { return horizontal_.at(p).at(q); }
  /// Cellular coboundary C^{p,q} -> C^{p,q+1}.
  const Matrix& vertical(std::size_t p, int q) const { return vertical_.at(p).at(q); }

 private:
  friend Bicomplex build_bicomplex(const AdjunctionSystem&, Flavor, const CoreAssignment*, std::size_t);
  Flavor flavor_ = Flavor::ClosedIntersection;
  int top_ = 0;
  std::vector<std::vector<DomainBlock>> columns_;
  std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> basis_;
  std::vector<std::vector<Matrix>> horizontal_;
  std::vector<std::vector<Matrix>> vertical_;
};

inline Bicomplex build_bicomplex(const AdjunctionSystem& s, Flavor flavor, const CoreAssignment* cores = nullptr,
                                 std::size_t max_arity = SIZE_MAX) {
  if (flavor == Flavor::ClosedIntersection) {
    for (const auto& [t, ok] : closure_intersection_check(s, max_arity))
      if (!ok) throw PreconditionError("closure-intersection property violated at tuple " + tuple_label(t));
  }
  Bicomplex b;
  b.flavor_ = flavor;
  b.top_ = 0;
  for (std::size_t i = 0; i < s.size(); ++i) b.top_ = std::max(b.top_, s.piece(i).top_dimension());

  const std::size_t ncols = std::min(s.size(), max_arity);
  std::map<Tuple, std::size_t> block_of;
  for (std::size_t p = 0; p < ncols; ++p) {
    std::vector<DomainBlock> col;
    for (const auto& t : tuples_of_size(s.size(), p + 1)) {
      block_of[t] = col.size();
      col.push_back({t, domain_of(s, t, flavor, cores)});
    }
    b.columns_.push_back(std::move(col));
  }

  // bases and index lookup
  const int Q = b.top_;
  b.basis_.assign(ncols, std::vector<std::vector<std::pair<std::size_t, std::size_t>>>(Q + 1));
  std::vector<std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>>> pos(
      ncols, std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>>(Q + 1));
  for (std::size_t p = 0; p < ncols; ++p)
    for (std::size_t k = 0; k < b.columns_[p].size(); ++k)
      for (int q = 0; q <= Q; ++q)
        for (auto c : b.columns_[p][k].cells.members_of_dim(q)) {
          pos[p][q][{k, c}] = b.basis_[p][q].size();
          b.basis_[p][q].push_back({k, c});
        }

  // vertical: block-diagonal cellular coboundary
  b.vertical_.assign(ncols, std::vector<Matrix>(Q + 1));
  for (std::size_t p = 0; p < ncols; ++p)
    for (int q = 0; q <= Q; ++q) {
      Matrix d(q < Q ? b.basis_[p][q + 1].size() : 0, b.basis_[p][q].size());
      if (q < Q) {
        for (std::size_t row = 0; row < b.basis_[p][q + 1].size(); ++row) {
          auto [k, c] = b.basis_[p][q + 1][row];
          const auto& blk = b.columns_[p][k];
          const auto& cx = blk.cells.owner();
          for (const auto& f : cx.faces(c)) {
            if (!blk.cells.contains(f.cell))
              throw PreconditionError("domain of tuple " + tuple_label(blk.tuple) + " is not face-closed");
            d.add(row, pos[p][q].at({k, f.cell}), f.sign);
          }
        }
      }
      b.vertical_[p][q] = std::move(d);
    }

  // horizontal: (delta w)_{t'} = sum_a (-1)^a  w_{t' minus a} restricted
  b.horizontal_.assign(ncols, std::vector<Matrix>(Q + 1));
  for (std::size_t p = 0; p < ncols; ++p)
    for (int q = 0; q <= Q; ++q) {
      std::size_t rows = p + 1 < ncols ? b.basis_[p + 1][q].size() : 0;
      Matrix delta(rows, b.basis_[p][q].size());
      if (p + 1 < ncols) {
        for (std::size_t row = 0; row < rows; ++row) {
          auto [k, c] = b.basis_[p + 1][q][row];
          const auto& big = b.columns_[p + 1][k];
          for (std::size_t a = 0; a < big.tuple.size(); ++a) {
            Tuple small = big.tuple;
            small.erase(small.begin() + static_cast<long>(a));
            std::size_t sk = block_of.at(small);
            const auto& sblk = b.columns_[p][sk];
            auto img = s.apply_closure(big.tuple[0], small[0], c);
            if (!img || !sblk.cells.contains(*img))
              throw PreconditionError("domain of tuple " + tuple_label(big.tuple) + " is not contained in the domain of " +
                                      tuple_label(small) + " (at cell " +
                                      detail::cell_loc(s, big.tuple[0], c) + ")");
            delta.add(row, pos[p][q].at({sk, *img}), a % 2 == 0 ? 1 : -1);
          }
        }
      }
      b.horizontal_[p][q] = std::move(delta);
    }
  return b;
}

/// The Cech differential block C^{p,q} -> C^{p+1,q} (p counts from 0).
inline Matrix cech_differential(const AdjunctionSystem& s, std::size_t p, int q, Flavor flavor,
                                const CoreAssignment* cores = nullptr) {
  auto b = build_bicomplex(s, flavor, cores);
  return b.horizontal(p, q);
}

/// delta^2 = 0, d^2 = 0 and d delta = delta d on every grid cell.
inline ValidationReport check_bicomplex(const Bicomplex& b) {
  ValidationReport r;
  for (std::size_t p = 0; p < b.columns(); ++p)
    for (int q = 0; q <= b.top_degree(); ++q) {
      const std::string loc = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
      if (p + 2 < b.columns() && !(b.horizontal(p + 1, q) * b.horizontal(p, q)).is_zero())
        r.add("delta-squared", loc, "Cech differential does not square to zero");
      if (q + 2 <= b.top_degree() && !(b.vertical(p, q + 1) * b.vertical(p, q)).is_zero())
        r.add("d-squared", loc, "vertical differential does not square to zero");
      if (p + 1 < b.columns() && q + 1 <= b.top_degree()) {
        Matrix lhs = b.vertical(p + 1, q) * b.horizontal(p, q);
        Matrix rhs = b.horizontal(p, q + 1) * b.vertical(p, q);
        if (!(lhs + rhs.scaled(-1)).is_zero()) r.add("commute", loc, "d and delta do not commute");
      }
    }
  return r;
}

/// Total complex: degree n = p + q, differential delta + (-1)^p d.
inline FreeComplex total_complex(const Bicomplex& b) {
  const int Q = b.top_degree();
  const std::size_t N = b.columns() + static_cast<std::size_t>(Q);  // degrees 0..N-1
  FreeComplex fc;
  fc.basis.resize(N);
  std::vector<std::vector<std::size_t>> offset(N);  // offset[n][p]
  for (std::size_t n = 0; n < N; ++n) {
    offset[n].assign(b.columns(), 0);
    for (std::size_t p = 0; p < b.columns(); ++p) {
      offset[n][p] = fc.basis[n].size();
      long q = static_cast<long>(n) - static_cast<long>(p);
      if (q < 0 || q > Q) continue;
      for (const auto& [k, c] : b.basis(p, static_cast<int>(q))) {
        const auto& blk = b.column(p)[k];
        fc.basis[n].push_back(tuple_label(blk.tuple) + ":" + blk.cells.owner().id(c));
      }
    }
  }
  for (std::size_t n = 0; n + 1 < N; ++n) {
    Matrix D(fc.basis[n + 1].size(), fc.basis[n].size());
    for (std::size_t p = 0; p < b.columns(); ++p) {
      long q = static_cast<long>(n) - static_cast<long>(p);
      if (q < 0 || q > Q) continue;
      int qi = static_cast<int>(q);
      if (p + 1 < b.columns()) D.paste(b.horizontal(p, qi), offset[n + 1][p + 1], offset[n][p]);
      if (qi < Q) D.paste(b.vertical(p, qi).scaled(p % 2 == 0 ? 1 : -1), offset[n + 1][p], offset[n][p]);
    }
    fc.differentials.push_back(std::move(D));
  }
  return fc;
}

/// Betti numbers of the total complex; trailing zeros above the top cell
/// dimension are dropped.
inline std::vector<std::size_t> total_betti(const Bicomplex& b) {
  auto full = betti(total_complex(b));
  const std::size_t keep = static_cast<std::size_t>(b.top_degree()) + 1;
  while (full.size() > keep && full.back() == 0) full.pop_back();
  return full;
}

inline std::vector<std::size_t> total_betti(const AdjunctionSystem& s, Flavor flavor,
                                            const CoreAssignment* cores = nullptr,
                                            std::size_t max_arity = SIZE_MAX) {
  return total_betti(build_bicomplex(s, flavor, cores, max_arity));
}

/// Cochain complex of global cochains: one basis element per closure class,
/// differential computed through any representative.
inline FreeComplex global_complex(const AdjunctionSystem& s) {
  auto classes = closure_cell_classes(s);
  int top = 0;
  for (std::size_t i = 0; i < s.size(); ++i) top = std::max(top, s.piece(i).top_dimension());
  FreeComplex fc;
  fc.basis.resize(top + 1);
  std::map<PieceCell, std::size_t> index_of;
  std::vector<std::vector<std::size_t>> by_dim(top + 1);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& cls = classes[k];
    int q = s.piece(cls.front().first).dim(cls.front().second);
    std::vector<bool> piece_seen(s.size(), false);
    for (const auto& [p, c] : cls) {
      if (piece_seen[p])
        throw PreconditionError("closure extensions identify two cells of piece " + s.name(p) + " (" +
                                detail::cell_loc(s, p, c) + ")");
      piece_seen[p] = true;
    }
    std::size_t pos = fc.basis[q].size();
    for (const auto& pc : cls) index_of[pc] = pos;
    fc.basis[q].push_back(detail::cell_loc(s, cls.front().first, cls.front().second));
    by_dim[q].push_back(k);
  }
  for (int q = 0; q < top; ++q) {
    Matrix d(fc.basis[q + 1].size(), fc.basis[q].size());
    for (std::size_t row = 0; row < by_dim[q + 1].size(); ++row) {
      const auto& cls = classes[by_dim[q + 1][row]];
      std::map<std::size_t, long> first;
      for (std::size_t r = 0; r < cls.size(); ++r) {
        auto [p, c] = cls[r];
        std::map<std::size_t, long> entries;
        for (const auto& f : s.piece(p).faces(c)) entries[index_of.at({p, f.cell})] += f.sign;
        if (r == 0)
          first = entries;
        else if (entries != first)
          throw PreconditionError("coboundary of global cochains is ill-defined at " + detail::cell_loc(s, p, c));
      }
      for (const auto& [col, v] : first) d.add(row, col, v);
    }
    fc.differentials.push_back(std::move(d));
  }
  return fc;
}

inline std::vector<std::size_t> global_complex_betti(const AdjunctionSystem& s) { return betti(global_complex(s)); }

/// Rank bookkeeping for one row 0 -> C^q(M) -> (+)C^q(M_i) -> (+)C^q(closures) -> ... -> 0.
struct RowExactness {
  int degree = 0;
  bool precondition_holds = true;
  std::vector<std::size_t> dims;       // node dimensions, global space first
  std::vector<std::size_t> map_ranks;  // rank of the map leaving each node
  std::vector<bool> exact_at;          // one flag per node
  bool exact() const {
    for (bool b : exact_at)
      if (!b) return false;
    return true;
  }
};

inline RowExactness row_exactness_check(const AdjunctionSystem& s, int q, std::size_t max_arity = SIZE_MAX) {
  RowExactness out;
  out.degree = q;
  out.precondition_holds = closure_intersection_holds(s, max_arity);

  // bicomplex on closures without the precondition guard
  const std::size_t ncols = std::min(s.size(), max_arity);
  std::vector<std::vector<DomainBlock>> cols;
  std::map<Tuple, std::size_t> block_of;
  for (std::size_t p = 0; p < ncols; ++p) {
    std::vector<DomainBlock> col;
    for (const auto& t : tuples_of_size(s.size(), p + 1)) {
      block_of[t] = col.size();
      col.push_back({t, domain_of(s, t, Flavor::ClosedIntersection, nullptr)});
    }
    cols.push_back(std::move(col));
  }
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> pos(ncols);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> basis(ncols);
  for (std::size_t p = 0; p < ncols; ++p)
    for (std::size_t k = 0; k < cols[p].size(); ++k)
      for (auto c : cols[p][k].cells.members_of_dim(q)) {
        pos[p][{k, c}] = basis[p].size();
        basis[p].push_back({k, c});
      }

  // global -> pieces
  auto classes = closure_cell_classes(s);
  std::vector<std::size_t> qclasses;
  for (std::size_t k = 0; k < classes.size(); ++k)
    if (s.piece(classes[k].front().first).dim(classes[k].front().second) == q) qclasses.push_back(k);
  std::vector<Matrix> maps;
  Matrix phi(basis[0].size(), qclasses.size());
  for (std::size_t col = 0; col < qclasses.size(); ++col)
    for (const auto& [p, c] : classes[qclasses[col]]) phi.set(pos[0].at({p, c}), col, 1);
  maps.push_back(std::move(phi));

  for (std::size_t p = 0; p + 1 < ncols; ++p) {
    Matrix delta(basis[p + 1].size(), basis[p].size());
    for (std::size_t row = 0; row < basis[p + 1].size(); ++row) {
      auto [k, c] = basis[p + 1][row];
      const auto& big = cols[p + 1][k];
      for (std::size_t a = 0; a < big.tuple.size(); ++a) {
        Tuple small = big.tuple;
        small.erase(small.begin() + static_cast<long>(a));
        std::size_t sk = block_of.at(small);
        auto img = s.apply_closure(big.tuple[0], small[0], c);
        if (!img || !cols[p][sk].cells.contains(*img)) continue;  // reported through exactness
        delta.add(row, pos[p].at({sk, *img}), a % 2 == 0 ? 1 : -1);
      }
    }
    maps.push_back(std::move(delta));
  }

  out.dims.push_back(qclasses.size());
  for (std::size_t p = 0; p < ncols; ++p) out.dims.push_back(basis[p].size());
  for (const auto& m : maps) out.map_ranks.push_back(rank(m));
  out.map_ranks.push_back(0);  // last node maps to zero
  for (std::size_t node = 0; node < out.dims.size(); ++node) {
    std::size_t in = node == 0 ? 0 : out.map_ranks[node - 1];
    out.exact_at.push_back(in + out.map_ranks[node] == out.dims[node]);
  }
  return out;
}

/// One degree of the binary long exact sequence
/// ... -> H^q(M) -> H^q(M1) (+) H^q(M2) -> H^q(D12) -> H^{q+1}(M) -> ...
struct MvDegree {
  int degree = 0;
  std::size_t pieces = 0;            // dim H^q(M1) + dim H^q(M2)
  std::size_t intersection = 0;      // dim H^q(D12)
  std::size_t restriction_rank = 0;  // rank of the difference of restrictions on cohomology
  std::size_t kernel = 0;
  std::size_t cokernel = 0;
  std::size_t derived = 0;           // dim H^q(M) = kernel(q) + cokernel(q-1)
};

struct MvReport {
  Flavor flavor = Flavor::ClosedIntersection;
  std::vector<MvDegree> degrees;
  long alternating_sum = 0;
  std::vector<std::size_t> derived_betti;
  std::vector<std::size_t> bicomplex_betti;
  bool matches_bicomplex() const { return derived_betti == bicomplex_betti; }
};

inline MvReport mv_report(const AdjunctionSystem& s, Flavor flavor, const CoreAssignment* cores = nullptr) {
  if (s.size() != 2) throw PreconditionError("mv-report needs a binary system");
  auto b = build_bicomplex(s, flavor, cores);
  const int Q = b.top_degree();

  auto column_complex = [&](std::size_t p) {
    FreeComplex fc;
    for (int q = 0; q <= Q; ++q) fc.basis.emplace_back(b.dim(p, q), std::string{});
    for (int q = 0; q < Q; ++q) fc.differentials.push_back(b.vertical(p, q));
    return fc;
  };
  auto hp = betti(column_complex(0));
  auto hd = betti(column_complex(1));

  MvReport r;
  r.flavor = flavor;
  std::size_t prev_coker = 0;
  for (int q = 0; q <= Q; ++q) {
    MvDegree d;
    d.degree = q;
    d.pieces = hp[q];
    d.intersection = hd[q];
    auto cocycles = nullspace(b.vertical(0, q));
    Matrix image = b.horizontal(0, q) * Matrix::from_columns(b.dim(0, q), cocycles);
    if (q > 0) {
      const Matrix& bd = b.vertical(1, q - 1);
      d.restriction_rank = rank(Matrix::hcat(image, bd)) - rank(bd);
    } else {
      d.restriction_rank = rank(image);
    }
    d.kernel = d.pieces - d.restriction_rank;
    d.cokernel = d.intersection - d.restriction_rank;
    d.derived = d.kernel + prev_coker;
    prev_coker = d.cokernel;
    r.degrees.push_back(d);
    r.derived_betti.push_back(d.derived);
  }
  if (prev_coker != 0) r.derived_betti.push_back(prev_coker);  // H^{Q+1}
  r.bicomplex_betti = total_betti(b);
  // alternating dimension sum along the sequence, with H^q(M) taken from the bicomplex
  long alt = 0;
  for (std::size_t q = 0; q < std::max(r.bicomplex_betti.size(), r.degrees.size()); ++q) {
    long sign = q % 2 == 0 ? 1 : -1;
    long term = q < r.bicomplex_betti.size() ? static_cast<long>(r.bicomplex_betti[q]) : 0;
    if (q < r.degrees.size())
      term += static_cast<long>(r.degrees[q].intersection) - static_cast<long>(r.degrees[q].pieces);
    alt += sign * term;
  }
  r.alternating_sum = alt;
  return r;
}

struct EulerTerm {
  Tuple tuple;
  int weight = 1;
  long chi = 0;
};

/// sum over tuples of (-1)^(p+1) chi(core of the p-fold open intersection).
inline std::vector<EulerTerm> euler_terms(const AdjunctionSystem& s, const CoreAssignment* cores = nullptr,
                                          std::size_t max_arity = SIZE_MAX) {
  std::vector<EulerTerm> out;
  for (std::size_t p = 1; p <= std::min(s.size(), max_arity); ++p)
    for (const auto& t : tuples_of_size(s.size(), p)) {
      CellSet core = core_of(s, t, cores);
      if (core.empty()) continue;
      out.push_back({t, p % 2 == 1 ? 1 : -1, euler_characteristic(core)});
    }
  return out;
}

inline long euler_inclusion_exclusion(const AdjunctionSystem& s, const CoreAssignment* cores = nullptr,
                                      std::size_t max_arity = SIZE_MAX) {
  long chi = 0;
  for (const auto& t : euler_terms(s, cores, max_arity)) chi += t.weight * t.chi;
  return chi;
}

inline long alternating_sum(const std::vector<std::size_t>& b) {
  long chi = 0;
  for (std::size_t q = 0; q < b.size(); ++q) chi += (q % 2 == 0 ? 1 : -1) * static_cast<long>(b[q]);
  return chi;
}

struct DeRhamComparison {
  std::optional<std::vector<std::size_t>> closed;  // absent when the closure-intersection property fails
  std::vector<std::size_t> open;
  bool equal = false;
  bool regions_regular_open = false;
  bool unions_regular_open = false;
  bool closure_intersection = false;
  bool hypotheses_hold() const { return regions_regular_open && unions_regular_open && closure_intersection; }
};

inline DeRhamComparison de_rham_compare(const AdjunctionSystem& s, const CoreAssignment* cores = nullptr,
                                        std::size_t max_arity = SIZE_MAX) {
  DeRhamComparison c;
  c.closure_intersection = closure_intersection_holds(s, max_arity);
  c.regions_regular_open = true;
  for (const auto& [key, ok] : regular_open_check(s)) c.regions_regular_open = c.regions_regular_open && ok;
  c.unions_regular_open = regular_open_unions_hold(s);
  c.open = total_betti(s, Flavor::OpenCore, cores, max_arity);
  if (c.closure_intersection) c.closed = total_betti(s, Flavor::ClosedIntersection, cores, max_arity);
  c.equal = c.closed && *c.closed == c.open;
  return c;
}

}  // namespace nhm

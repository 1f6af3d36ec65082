#pragma once

// Piecewise-flat metrics on triangulated pieces. Curvature is concentrated at
// vertices as angle defects; frontiers of closed intersections carry geodesic
// turning angles. Together they balance 2*pi*chi of the glued surface.

#include <nhm/adjunction.hpp>
#include <nhm/cohomology.hpp>
#include <nhm/complex.hpp>
#include <nhm/report.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace nhm {

/// Edge lengths on a complex, indexed by cell; non-edges carry NaN.
class MetricComplex {
 public:
  MetricComplex() = default;
  MetricComplex(const CellComplex& base, std::vector<double> lengths) : base_(&base), lengths_(std::move(lengths)) {
    lengths_.resize(base.size(), std::numeric_limits<double>::quiet_NaN());
  }

  /// Unknown ids throw std::out_of_range.
  static MetricComplex from_ids(const CellComplex& base, const std::map<std::string, double>& lengths) {
    std::vector<double> v(base.size(), std::numeric_limits<double>::quiet_NaN());
    for (const auto& [id, len] : lengths) v[base.index(id)] = len;
    return MetricComplex(base, std::move(v));
  }

  const CellComplex& base() const { return *base_; }
  double length(std::size_t edge) const { return lengths_.at(edge); }

  MetricComplex scaled(double factor) const {
    MetricComplex out = *this;
    for (auto& l : out.lengths_) l *= factor;
    return out;
  }

 private:
  const CellComplex* base_ = nullptr;
  std::vector<double> lengths_;
};

struct Corner {
  std::size_t vertex;
  std::size_t opposite_edge;
};

/// The three corners of a triangular 2-cell, or nothing if the cell is not a
/// triangle (three edges spanning three distinct vertices).
inline std::optional<std::array<Corner, 3>> triangle_corners(const CellComplex& cx, std::size_t tri) {
  auto edges = cx.faces(tri);
  if (cx.dim(tri) != 2 || edges.size() != 3) return std::nullopt;
  std::vector<std::size_t> verts;
  for (const auto& e : edges) {
    if (cx.faces(e.cell).size() != 2) return std::nullopt;
    for (const auto& v : cx.faces(e.cell))
      if (std::find(verts.begin(), verts.end(), v.cell) == verts.end()) verts.push_back(v.cell);
  }
  if (verts.size() != 3) return std::nullopt;
  std::array<Corner, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    out[k].vertex = verts[k];
    bool found = false;
    for (const auto& e : edges) {
      bool touches = false;
      for (const auto& v : cx.faces(e.cell)) touches = touches || v.cell == verts[k];
      if (!touches) {
        out[k].opposite_edge = e.cell;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

/// Angles opposite the three given side lengths (law of cosines).
inline std::array<double, 3> corner_angles(double a, double b, double c) {
  auto angle = [](double opp, double x, double y) {
    double cosine = (x * x + y * y - opp * opp) / (2 * x * y);
    return std::acos(std::clamp(cosine, -1.0, 1.0));
  };
  return {angle(a, b, c), angle(b, c, a), angle(c, a, b)};
}

/// Angle at each corner of a triangle of a metric complex, aligned with
/// triangle_corners().
inline std::array<double, 3> corner_angles(const MetricComplex& m, std::size_t tri) {
  auto corners = triangle_corners(m.base(), tri);
  if (!corners) throw PreconditionError("cell \"" + m.base().id(tri) + "\" is not a triangle");
  const auto& c = *corners;
  return corner_angles(m.length(c[0].opposite_edge), m.length(c[1].opposite_edge), m.length(c[2].opposite_edge));
}

/// Triangulation, strict triangle inequalities and exact length agreement
/// across every gluing map (closures included).
inline ValidationReport validate_metric(const AdjunctionSystem& s, const std::vector<MetricComplex>& metrics) {
  ValidationReport r;
  if (metrics.size() != s.size()) {
    r.add("metric", "system", "one metric per piece required");
    return r;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& cx = s.piece(i);
    const auto& m = metrics[i];
    if (cx.top_dimension() != 2) r.add("triangulation", s.name(i), "piece is not two-dimensional");
    for (auto e : cx.cells_of_dim(1)) {
      double l = m.length(e);
      if (!(std::isfinite(l) && l > 0)) r.add("edge-length", detail::cell_loc(s, i, e), "edge needs a positive length");
    }
    for (auto t : cx.cells_of_dim(2)) {
      auto corners = triangle_corners(cx, t);
      if (!corners) {
        r.add("triangulation", detail::cell_loc(s, i, t), "2-cell is not a triangle");
        continue;
      }
      double a = m.length((*corners)[0].opposite_edge);
      double b = m.length((*corners)[1].opposite_edge);
      double c = m.length((*corners)[2].opposite_edge);
      if (!(a < b + c && b < c + a && c < a + b))
        r.add("triangle-inequality", detail::cell_loc(s, i, t), "edge lengths violate the strict triangle inequality");
    }
  }
  for (const auto& [key, map] : s.maps()) {
    auto [i, j] = key;
    if (i == j) continue;
    for (const auto& [x, y] : map.closure) {
      if (s.piece(i).dim(x) != 1) continue;
      if (metrics[i].length(x) != metrics[j].length(y))
        r.add("isometry", detail::pair_loc(i, j) + " " + s.piece(i).id(x), "glued edges have different lengths");
    }
  }
  return r;
}

struct VertexDefect {
  std::size_t piece;
  std::size_t vertex;
  double defect;
};

struct FrontierTurning {
  Tuple tuple;
  std::size_t piece;
  std::size_t vertex;
  double turning;
};

/// Per-tuple totals. For a single piece the curvature is the sum of all its
/// defects; for p >= 2 it is the sum over vertices of the open intersection
/// and `turning` sums over the frontier of the closure, both measured in the
/// tuple's first piece.
struct TupleCurvature {
  Tuple tuple;
  int weight = 1;
  double curvature = 0;
  double turning = 0;
  long closure_euler = 0;
};

struct CurvatureLedger {
  std::vector<VertexDefect> defects;
  std::vector<FrontierTurning> turnings;
  std::vector<TupleCurvature> tuples;
};

namespace detail {

/// Sum of corner angles at each vertex over the triangles of `tris`.
inline std::vector<double> angle_sums(const MetricComplex& m, const CellSet& tris) {
  std::vector<double> sums(m.base().size(), 0.0);
  for (auto t : tris.members_of_dim(2)) {
    auto corners = *triangle_corners(m.base(), t);
    auto angles = corner_angles(m, t);
    for (std::size_t k = 0; k < 3; ++k) sums[corners[k].vertex] += angles[k];
  }
  return sums;
}

inline void require_surfaces(const AdjunctionSystem& s, const std::vector<MetricComplex>& metrics) {
  auto report = validate_metric(s, metrics);
  if (!report.ok())
    throw PreconditionError("invalid metric: " + report.entries.front().rule + " at " + report.entries.front().location);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!is_closed_pseudomanifold(s.piece(i)))
      throw PreconditionError("piece " + s.name(i) + " is not a closed surface");
}

}  // namespace detail

inline CurvatureLedger curvature_ledger(const AdjunctionSystem& s, const std::vector<MetricComplex>& metrics,
                                        std::size_t max_arity = SIZE_MAX) {
  detail::require_surfaces(s, metrics);
  constexpr double pi = std::numbers::pi;
  CurvatureLedger ledger;

  std::vector<std::vector<double>> defect(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto sums = detail::angle_sums(metrics[i], CellSet::all(s.piece(i)));
    defect[i].assign(s.piece(i).size(), 0.0);
    for (auto v : s.piece(i).cells_of_dim(0)) {
      defect[i][v] = 2 * pi - sums[v];
      ledger.defects.push_back({i, v, defect[i][v]});
    }
  }

  for (std::size_t p = 1; p <= std::min(s.size(), max_arity); ++p)
    for (const auto& t : tuples_of_size(s.size(), p)) {
      const std::size_t r = t[0];
      TupleCurvature tc;
      tc.tuple = t;
      tc.weight = p % 2 == 1 ? 1 : -1;
      CellSet open = open_intersection(s, t);
      if (open.empty()) continue;
      CellSet cl = closure(open);
      tc.closure_euler = euler_characteristic(cl);
      for (auto v : open.members_of_dim(0)) tc.curvature += defect[r][v];
      if (p >= 2) {
        for (auto j : t) {
          // the closure transported into piece j
          CellSet clj(s.piece(j));
          for (auto c : cl.members()) clj.insert(*s.apply_closure(r, j, c));
          auto sums = detail::angle_sums(metrics[j], clj);
          for (auto v : (cl - open).members_of_dim(0)) {
            auto vj = *s.apply_closure(r, j, v);
            double turning = pi - sums[vj];
            ledger.turnings.push_back({t, j, vj, turning});
            if (j == r) tc.turning += turning;
          }
        }
      }
      ledger.tuples.push_back(tc);
    }
  return ledger;
}

struct GaussBonnetReport {
  long euler = 0;
  double lhs = 0;           // 2 pi chi
  double curvature = 0;     // half the total scalar curvature, by inclusion-exclusion
  double counterterms = 0;  // alternating frontier turning sums
  double rhs = 0;
  double residual = 0;
  CurvatureLedger ledger;
};

/// 2 pi chi = sum_T (-1)^(p+1) K(T) + sum_{p>=2} (-1)^(p+1) kappa(dT), with chi
/// from the open-core inclusion-exclusion formula.
inline GaussBonnetReport gauss_bonnet_report(const AdjunctionSystem& s, const std::vector<MetricComplex>& metrics,
                                             const CoreAssignment* cores = nullptr,
                                             std::size_t max_arity = SIZE_MAX) {
  GaussBonnetReport g;
  g.ledger = curvature_ledger(s, metrics, max_arity);
  g.euler = euler_inclusion_exclusion(s, cores, max_arity);
  g.lhs = 2 * std::numbers::pi * static_cast<double>(g.euler);
  for (const auto& t : g.ledger.tuples) {
    g.curvature += t.weight * t.curvature;
    if (t.tuple.size() >= 2) g.counterterms += t.weight * t.turning;
  }
  g.rhs = g.curvature + g.counterterms;
  g.residual = g.lhs - g.rhs;
  return g;
}

}  // namespace nhm

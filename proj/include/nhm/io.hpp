#pragma once

// JSON documents for adjunction systems and cochains.
//
// System document (piece indices and tuples are 1-based):
//   { "schema_version": "1.0",
//     "pieces":  [ { "name": "M1", "cells": [ { "id": "e0", "dim": 1,
//                                              "faces": [["v0", -1], ["v1", 1]] } ] } ],
//     "regions": [ { "i": 1, "j": 2, "cells": ["..."] } ],
//     "maps":    [ { "i": 1, "j": 2, "pairs": [["a", "a"]], "closure_pairs": [["v0", "v0"]] } ],
//     "orientations": [ { "piece": 1, "signs": { "e0": 1 } } ],
//     "cores":        [ { "tuple": [1, 2], "cells": ["..."] } ],
//     "edge_lengths": [ { "piece": 1, "lengths": { "e0": "1.0" } } ] }
// `closure_pairs` lists the frontier part of the closure extension only.
// Reverse maps (j,i) may be omitted; they default to inverses.
//
// Cochain document: { "degree": 1, "components": [ { "piece": 1, "values": { "e0": "3/7" } } ] }
// Cells without a value are zero.

#include <nhm/adjunction.hpp>
#include <nhm/cochains.hpp>
#include <nhm/cohomology.hpp>
#include <nhm/complex.hpp>
#include <nhm/geometry.hpp>
#include <nhm/rational.hpp>

#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhm {

using json = nlohmann::json;

/// Malformed input; the message names the offending field or line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SystemDocument {
  std::string schema_version = "1.0";
  AdjunctionSystem system;
  CoreAssignment cores;
  /// Per piece, edge id -> decimal string; empty when the document has no metric.
  std::vector<std::map<std::string, std::string>> edge_lengths;

  bool has_metric() const {
    for (const auto& m : edge_lengths)
      if (!m.empty()) return true;
    return false;
  }

  std::vector<MetricComplex> metrics() const {
    std::vector<MetricComplex> out;
    for (std::size_t i = 0; i < system.size(); ++i) {
      std::map<std::string, double> lengths;
      if (i < edge_lengths.size())
        for (const auto& [id, text] : edge_lengths[i]) lengths[id] = std::strtod(text.c_str(), nullptr);
      out.push_back(MetricComplex::from_ids(system.piece(i), lengths));
    }
    return out;
  }
};

/// Shortest round-tripping decimal form of a double.
inline std::string format_decimal(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing field");
  return *it;
}

inline std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path + ": expected a string");
  return v.get<std::string>();
}

inline long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path + ": expected an integer");
  return v.get<long>();
}

inline std::size_t get_piece(const json& v, const std::string& path, std::size_t pieces) {
  long k = get_int(v, path);
  if (k < 1 || static_cast<std::size_t>(k) > pieces)
    throw ParseError(path + ": piece index " + std::to_string(k) + " out of range 1.." + std::to_string(pieces));
  return static_cast<std::size_t>(k - 1);
}

inline std::vector<std::string> get_id_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected an array of cell ids");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(get_string(v[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::vector<std::pair<std::string, std::string>> get_pairs(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path + ": expected an array of [source, target] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::string p = path + "[" + std::to_string(k) + "]";
    if (!v[k].is_array() || v[k].size() != 2) throw ParseError(p + ": expected a [source, target] pair");
    out.emplace_back(get_string(v[k][0], p + "[0]"), get_string(v[k][1], p + "[1]"));
  }
  return out;
}

inline void require_cells(const CellComplex& cx, const std::vector<std::string>& ids, const std::string& path) {
  for (const auto& id : ids)
    if (!cx.find(id)) throw ParseError(path + ": unknown cell id \"" + id + "\"");
}

}  // namespace detail

inline SystemDocument parse_system(const json& doc) {
  using namespace detail;
  SystemDocument out;
  if (!doc.is_object()) throw ParseError("document: expected an object");
  out.schema_version = get_string(field(doc, "schema_version", "document"), "schema_version");
  if (out.schema_version != "1.0") throw ParseError("schema_version: unsupported version \"" + out.schema_version + "\"");

  const json& pieces = field(doc, "pieces", "document");
  if (!pieces.is_array() || pieces.empty()) throw ParseError("pieces: expected a nonempty array");
  std::vector<CellComplex> complexes;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::string p = "pieces[" + std::to_string(i) + "]";
    names.push_back(pieces[i].contains("name") ? get_string(pieces[i]["name"], p + ".name") : "M" + std::to_string(i + 1));
    const json& cells = field(pieces[i], "cells", p);
    if (!cells.is_array()) throw ParseError(p + ".cells: expected an array");
    std::vector<CellDecl> decls;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      std::string cp = p + ".cells[" + std::to_string(k) + "]";
      CellDecl d;
      d.id = get_string(field(cells[k], "id", cp), cp + ".id");
      d.dim = static_cast<int>(get_int(field(cells[k], "dim", cp), cp + ".dim"));
      if (cells[k].contains("faces")) {
        const json& faces = cells[k]["faces"];
        if (!faces.is_array()) throw ParseError(cp + ".faces: expected an array");
        for (std::size_t f = 0; f < faces.size(); ++f) {
          std::string fp = cp + ".faces[" + std::to_string(f) + "]";
          if (!faces[f].is_array() || faces[f].size() != 2) throw ParseError(fp + ": expected [face-id, sign]");
          d.faces.push_back({get_string(faces[f][0], fp + "[0]"), static_cast<int>(get_int(faces[f][1], fp + "[1]"))});
        }
      }
      decls.push_back(std::move(d));
    }
    complexes.emplace_back(std::move(decls));
  }
  const std::size_t n = complexes.size();

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> regions;
  if (doc.contains("regions")) {
    const json& rs = doc["regions"];
    if (!rs.is_array()) throw ParseError("regions: expected an array");
    for (std::size_t k = 0; k < rs.size(); ++k) {
      std::string p = "regions[" + std::to_string(k) + "]";
      auto i = get_piece(field(rs[k], "i", p), p + ".i", n);
      auto j = get_piece(field(rs[k], "j", p), p + ".j", n);
      auto ids = get_id_list(field(rs[k], "cells", p), p + ".cells");
      require_cells(complexes[i], ids, p + ".cells");
      regions[{i, j}] = std::move(ids);
    }
  }

  std::vector<GluingSpec> specs;
  if (doc.contains("maps")) {
    const json& ms = doc["maps"];
    if (!ms.is_array()) throw ParseError("maps: expected an array");
    for (std::size_t k = 0; k < ms.size(); ++k) {
      std::string p = "maps[" + std::to_string(k) + "]";
      GluingSpec g;
      g.i = get_piece(field(ms[k], "i", p), p + ".i", n);
      g.j = get_piece(field(ms[k], "j", p), p + ".j", n);
      g.pairs = get_pairs(field(ms[k], "pairs", p), p + ".pairs");
      if (ms[k].contains("closure_pairs")) g.frontier_pairs = get_pairs(ms[k]["closure_pairs"], p + ".closure_pairs");
      for (const auto* list : {&g.pairs, &g.frontier_pairs})
        for (const auto& [a, b] : *list) {
          if (!complexes[g.i].find(a)) throw ParseError(p + ": unknown source cell id \"" + a + "\"");
          if (!complexes[g.j].find(b)) throw ParseError(p + ": unknown target cell id \"" + b + "\"");
        }
      if (auto it = regions.find({g.i, g.j}); it != regions.end()) {
        g.region = it->second;
        regions.erase(it);
      } else {
        for (const auto& [a, b] : g.pairs) g.region.push_back(a);
      }
      specs.push_back(std::move(g));
    }
  }
  if (!regions.empty()) {
    auto [i, j] = regions.begin()->first;
    throw ParseError("regions: region (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") has no map");
  }

  out.system = AdjunctionSystem(std::move(complexes), specs, std::move(names));

  if (doc.contains("orientations")) {
    const json& os = doc["orientations"];
    if (!os.is_array()) throw ParseError("orientations: expected an array");
    for (std::size_t k = 0; k < os.size(); ++k) {
      std::string p = "orientations[" + std::to_string(k) + "]";
      auto i = get_piece(field(os[k], "piece", p), p + ".piece", n);
      const json& signs = field(os[k], "signs", p);
      if (!signs.is_object()) throw ParseError(p + ".signs: expected an object");
      const auto& cx = out.system.piece(i);
      Orientation o(cx);
      for (auto it = signs.begin(); it != signs.end(); ++it) {
        auto c = cx.find(it.key());
        if (!c) throw ParseError(p + ".signs: unknown cell id \"" + it.key() + "\"");
        o.set(*c, static_cast<int>(get_int(it.value(), p + ".signs." + it.key())));
      }
      out.system.set_orientation(i, std::move(o));
    }
  }

  if (doc.contains("cores")) {
    const json& cs = doc["cores"];
    if (!cs.is_array()) throw ParseError("cores: expected an array");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      std::string p = "cores[" + std::to_string(k) + "]";
      const json& tj = field(cs[k], "tuple", p);
      if (!tj.is_array() || tj.size() < 2) throw ParseError(p + ".tuple: expected at least two piece indices");
      Tuple t;
      for (std::size_t m = 0; m < tj.size(); ++m) t.push_back(get_piece(tj[m], p + ".tuple", n));
      if (!std::is_sorted(t.begin(), t.end()) || std::adjacent_find(t.begin(), t.end()) != t.end())
        throw ParseError(p + ".tuple: indices must be strictly ascending");
      auto ids = get_id_list(field(cs[k], "cells", p), p + ".cells");
      require_cells(out.system.piece(t[0]), ids, p + ".cells");
      out.cores.cells[t] = std::move(ids);
    }
  }

  out.edge_lengths.resize(n);
  if (doc.contains("edge_lengths")) {
    const json& es = doc["edge_lengths"];
    if (!es.is_array()) throw ParseError("edge_lengths: expected an array");
    for (std::size_t k = 0; k < es.size(); ++k) {
      std::string p = "edge_lengths[" + std::to_string(k) + "]";
      auto i = get_piece(field(es[k], "piece", p), p + ".piece", n);
      const json& ls = field(es[k], "lengths", p);
      if (!ls.is_object()) throw ParseError(p + ".lengths: expected an object");
      for (auto it = ls.begin(); it != ls.end(); ++it) {
        std::string lp = p + ".lengths." + it.key();
        if (!out.system.piece(i).find(it.key())) throw ParseError(lp + ": unknown cell id");
        std::string text = get_string(it.value(), lp);
        char* end = nullptr;
        std::strtod(text.c_str(), &end);
        if (text.empty() || *end != '\0') throw ParseError(lp + ": not a decimal number");
        out.edge_lengths[i][it.key()] = text;
      }
    }
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline SystemDocument load_system(const std::string& path) { return parse_system(read_json_file(path)); }

namespace detail {

inline bool is_exact_inverse(const GluingMap& m, const GluingMap& back) {
  if (!(back.source_region == m.target_region) || back.cells.size() != m.cells.size() ||
      back.closure.size() != m.closure.size())
    return false;
  for (const auto& [x, y] : m.closure) {
    auto z = back.apply_closure(y);
    if (!z || *z != x) return false;
  }
  for (const auto& [x, y] : m.cells) {
    auto z = back.apply(y);
    if (!z || *z != x) return false;
  }
  return true;
}

inline json gluing_to_json(const AdjunctionSystem& s, const GluingMap& m) {
  const auto& src = s.piece(m.source);
  const auto& dst = s.piece(m.target);
  json pairs = json::array(), frontier = json::array();
  for (auto x : closure(m.source_region).members()) {
    auto y = m.apply_closure(x);
    if (!y) continue;
    (m.cells.count(x) ? pairs : frontier).push_back({src.id(x), dst.id(*y)});
  }
  // entries outside the closure are kept so invalid maps survive a round trip
  for (std::size_t x = 0; x < src.size(); ++x) {
    if (closure(m.source_region).contains(x)) continue;
    if (auto y = m.apply(x)) pairs.push_back({src.id(x), dst.id(*y)});
    else if (auto z = m.apply_closure(x)) frontier.push_back({src.id(x), dst.id(*z)});
  }
  return {{"i", m.source + 1}, {"j", m.target + 1}, {"pairs", pairs}, {"closure_pairs", frontier}};
}

}  // namespace detail

inline json serialize_system(const SystemDocument& d) {
  const auto& s = d.system;
  json doc;
  doc["schema_version"] = d.schema_version;
  json pieces = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json cells = json::array();
    for (const auto& c : s.piece(i).decls()) {
      json faces = json::array();
      for (const auto& f : c.faces) faces.push_back({f.face, f.sign});
      cells.push_back({{"id", c.id}, {"dim", c.dim}, {"faces", faces}});
    }
    pieces.push_back({{"name", s.name(i)}, {"cells", cells}});
  }
  doc["pieces"] = pieces;

  json regions = json::array(), maps = json::array();
  for (const auto& [key, m] : s.maps()) {
    auto [i, j] = key;
    if (i > j) {
      const auto* fwd = s.map(j, i);
      if (fwd && detail::is_exact_inverse(*fwd, m)) continue;
    }
    regions.push_back({{"i", i + 1}, {"j", j + 1}, {"cells", m.source_region.ids()}});
    maps.push_back(detail::gluing_to_json(s, m));
  }
  doc["regions"] = regions;
  doc["maps"] = maps;

  json orients = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s.orientation(i)) continue;
    json signs = json::object();
    const auto& cx = s.piece(i);
    for (auto t : cx.cells_of_dim(cx.top_dimension())) signs[cx.id(t)] = s.orientation(i)->sign(t);
    orients.push_back({{"piece", i + 1}, {"signs", signs}});
  }
  if (!orients.empty()) doc["orientations"] = orients;

  json cores = json::array();
  for (const auto& [t, ids] : d.cores.cells) {
    json tj = json::array();
    for (auto k : t) tj.push_back(k + 1);
    cores.push_back({{"tuple", tj}, {"cells", ids}});
  }
  if (!cores.empty()) doc["cores"] = cores;

  if (d.has_metric()) {
    json lengths = json::array();
    for (std::size_t i = 0; i < d.edge_lengths.size(); ++i)
      if (!d.edge_lengths[i].empty()) lengths.push_back({{"piece", i + 1}, {"lengths", d.edge_lengths[i]}});
    doc["edge_lengths"] = lengths;
  }
  return doc;
}

/// Per-piece cochains from a cochain document; compatibility is checked by
/// assemble_global().
inline GlobalCochain parse_cochain(const json& doc, const AdjunctionSystem& s) {
  using namespace detail;
  if (!doc.is_object()) throw ParseError("cochain: expected an object");
  int q = static_cast<int>(get_int(field(doc, "degree", "cochain"), "degree"));
  std::vector<Cochain> comps;
  for (std::size_t i = 0; i < s.size(); ++i) comps.emplace_back(CellSet::all(s.piece(i)), q);
  const json& cs = field(doc, "components", "cochain");
  if (!cs.is_array()) throw ParseError("components: expected an array");
  for (std::size_t k = 0; k < cs.size(); ++k) {
    std::string p = "components[" + std::to_string(k) + "]";
    auto i = get_piece(field(cs[k], "piece", p), p + ".piece", s.size());
    const json& vals = field(cs[k], "values", p);
    if (!vals.is_object()) throw ParseError(p + ".values: expected an object");
    for (auto it = vals.begin(); it != vals.end(); ++it) {
      std::string vp = p + ".values." + it.key();
      auto c = s.piece(i).find(it.key());
      if (!c) throw ParseError(vp + ": unknown cell id");
      if (s.piece(i).dim(*c) != q) throw ParseError(vp + ": cell has dimension " + std::to_string(s.piece(i).dim(*c)) +
                                                    ", cochain degree is " + std::to_string(q));
      try {
        comps[i].set(*c, parse_rational(get_string(it.value(), vp)));
      } catch (const std::invalid_argument& e) {
        throw ParseError(vp + ": " + e.what());
      }
    }
  }
  return assemble_global(s, std::move(comps));
}

inline json serialize_cochain(const GlobalCochain& w) {
  json comps = json::array();
  const auto& s = w.system();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json vals = json::object();
    for (auto c : s.piece(i).cells_of_dim(w.degree()))
      if (w.component(i).value(c) != 0) vals[s.piece(i).id(c)] = to_string(w.component(i).value(c));
    comps.push_back({{"piece", i + 1}, {"values", vals}});
  }
  return {{"degree", w.degree()}, {"components", comps}};
}

}  // namespace nhm

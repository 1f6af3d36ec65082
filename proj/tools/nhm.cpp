// nhm: command-line front end for adjunction-system documents.
//
//   nhm validate FILE
//   nhm hausdorff FILE
//   nhm betti --flavor dr|sing FILE
//   nhm euler FILE
//   nhm integrate FILE COCHAIN
//   nhm stokes-check FILE COCHAIN
//   nhm mv-report --flavor dr|sing FILE
//   nhm compare FILE
//   nhm gauss-bonnet FILE
//
// Exit codes: 0 success, 1 validation failure, 2 precondition failure,
// 3 I/O or parse error.

#include <nhm/nhm.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nhm::json;

enum Exit { kOk = 0, kInvalid = 1, kPrecondition = 2, kParse = 3 };

struct Options {
  bool json_out = false;
  bool quiet = false;
  std::string flavor = "dr";
  std::string file;
  std::string cochain;
  std::size_t max_arity = SIZE_MAX;
};

struct Outcome {
  int code = kOk;
  json payload;
  std::vector<nhm::Diagnostic> diagnostics;
  std::string text;
};

const char* status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kInvalid: return "invalid";
    case kPrecondition: return "precondition-failed";
    default: return "error";
  }
}

json diagnostics_json(const std::vector<nhm::Diagnostic>& ds) {
  json out = json::array();
  for (const auto& d : ds) out.push_back({{"rule", d.rule}, {"location", d.location}, {"message", d.message}});
  return out;
}

std::string betti_text(const std::vector<std::size_t>& b) {
  std::string s = "(";
  for (std::size_t k = 0; k < b.size(); ++k) s += (k ? ", " : "") + std::to_string(b[k]);
  return s + ")";
}

std::string cell_label(const nhm::AdjunctionSystem& s, nhm::PieceCell pc) {
  return s.name(pc.first) + ":" + s.piece(pc.first).id(pc.second);
}

std::string fmt(double v) { return nhm::format_decimal(v); }

nhm::Flavor parse_flavor(const std::string& f) {
  return f == "sing" ? nhm::Flavor::OpenCore : nhm::Flavor::ClosedIntersection;
}

/// Structural validation shared by every command.
nhm::ValidationReport structural_report(const nhm::SystemDocument& doc) {
  nhm::ValidationReport r;
  const auto& s = doc.system;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = nhm::validate_complex(s.piece(i));
    for (auto& e : c.entries) e.location = s.name(i) + ":" + e.location;
    r.append(c);
  }
  if (r.ok()) r.append(nhm::validate_system(s));
  if (r.ok() && doc.has_metric()) r.append(nhm::validate_metric(s, doc.metrics()));
  return r;
}

Outcome cmd_validate(const nhm::SystemDocument& doc, const Options& opt) {
  Outcome o;
  auto report = structural_report(doc);
  o.diagnostics = report.entries;
  o.code = report.ok() ? kOk : kInvalid;
  json ci = json::object(), ro = json::object();
  std::ostringstream t;
  t << "pieces: " << doc.system.size() << "\n";
  if (report.ok()) {
    for (const auto& [tuple, ok] : nhm::closure_intersection_check(doc.system, opt.max_arity))
      ci[nhm::tuple_label(tuple)] = ok;
    for (const auto& [key, ok] : nhm::regular_open_check(doc.system))
      ro[nhm::tuple_label({key.first, key.second})] = ok;
  }
  o.payload = {{"valid", report.ok()},
               {"pieces", doc.system.size()},
               {"metric", doc.has_metric()},
               {"closure_intersection", ci},
               {"regular_open", ro}};
  t << "valid: " << (report.ok() ? "yes" : "no") << "\n";
  for (const auto& d : report.entries) t << "  [" << d.rule << "] " << d.location << ": " << d.message << "\n";
  if (report.ok()) {
    t << "closure-intersection property:\n";
    for (auto it = ci.begin(); it != ci.end(); ++it)
      t << "  " << std::left << std::setw(12) << it.key() << (it.value().get<bool>() ? "holds" : "fails") << "\n";
    t << "regular-open regions:\n";
    for (auto it = ro.begin(); it != ro.end(); ++it)
      t << "  " << std::left << std::setw(12) << it.key() << (it.value().get<bool>() ? "yes" : "no") << "\n";
    if (doc.has_metric()) t << "metric: valid\n";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_hausdorff(const nhm::SystemDocument& doc, const Options&) {
  Outcome o;
  const auto& s = doc.system;
  json pairs = json::array();
  std::ostringstream t;
  auto hp = nhm::hausdorff_pairs(s);
  t << "Hausdorff-violating pairs: " << hp.size() << "\n";
  for (const auto& p : hp) {
    pairs.push_back({cell_label(s, p.left), cell_label(s, p.right)});
    t << "  " << cell_label(s, p.left) << "  ~  " << cell_label(s, p.right) << "\n";
  }
  auto glued = nhm::glued_cell_classes(s);
  auto closed = nhm::closure_cell_classes(s);
  std::size_t merged = 0;
  for (const auto& c : glued) merged += c.size() > 1;
  o.payload = {{"pairs", pairs},
               {"glued_classes", glued.size()},
               {"identified_classes", merged},
               {"closure_classes", closed.size()},
               {"hausdorff", hp.empty()}};
  t << "glued cell classes: " << glued.size() << " (" << merged << " identified across pieces)\n";
  t << "closure cell classes: " << closed.size() << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_betti(const nhm::SystemDocument& doc, const Options& opt) {
  Outcome o;
  auto b = nhm::total_betti(doc.system, parse_flavor(opt.flavor), &doc.cores, opt.max_arity);
  o.payload = b;
  o.text = "betti (" + opt.flavor + "): " + betti_text(b) + "\n";
  return o;
}

Outcome cmd_euler(const nhm::SystemDocument& doc, const Options& opt) {
  Outcome o;
  const auto& s = doc.system;
  json terms = json::array();
  std::ostringstream t;
  t << std::left << std::setw(14) << "tuple" << std::setw(8) << "sign" << "chi(core)\n";
  for (const auto& term : nhm::euler_terms(s, &doc.cores, opt.max_arity)) {
    terms.push_back({{"tuple", nhm::tuple_label(term.tuple)}, {"weight", term.weight}, {"chi", term.chi}});
    t << std::setw(14) << nhm::tuple_label(term.tuple) << std::setw(8) << (term.weight > 0 ? "+" : "-") << term.chi
      << "\n";
  }
  long chi = nhm::euler_inclusion_exclusion(s, &doc.cores, opt.max_arity);
  auto b = nhm::total_betti(s, nhm::Flavor::OpenCore, &doc.cores, opt.max_arity);
  long alt = nhm::alternating_sum(b);
  o.payload = {{"inclusion_exclusion", chi}, {"alternating_betti", alt}, {"betti_sing", b}, {"match", chi == alt},
               {"terms", terms}};
  t << "inclusion-exclusion chi: " << chi << "\n"
    << "alternating Betti sum (sing " << betti_text(b) << "): " << alt << "\n"
    << "match: " << (chi == alt ? "yes" : "no") << "\n";
  o.text = t.str();
  return o;
}

nhm::GlobalCochain load_cochain(const Options& opt, const nhm::AdjunctionSystem& s) {
  return nhm::parse_cochain(nhm::read_json_file(opt.cochain), s);
}

Outcome cmd_integrate(const nhm::SystemDocument& doc, const Options& opt) {
  Outcome o;
  auto w = load_cochain(opt, doc.system);
  json terms = json::array();
  std::ostringstream t;
  t << std::left << std::setw(14) << "tuple" << std::setw(8) << "sign" << "integral\n";
  for (const auto& term : nhm::integral_terms(w, opt.max_arity)) {
    terms.push_back(
        {{"tuple", nhm::tuple_label(term.tuple)}, {"weight", term.weight}, {"value", nhm::to_string(term.value)}});
    t << std::setw(14) << nhm::tuple_label(term.tuple) << std::setw(8) << (term.weight > 0 ? "+" : "-")
      << nhm::to_string(term.value) << "\n";
  }
  auto value = nhm::integrate(w, opt.max_arity);
  auto direct = nhm::integrate_by_classes(w);
  o.payload = {{"value", nhm::to_string(value)}, {"by_classes", nhm::to_string(direct)}, {"match", value == direct},
               {"terms", terms}};
  t << "integral: " << nhm::to_string(value) << "\n"
    << "by glued classes: " << nhm::to_string(direct) << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_stokes(const nhm::SystemDocument& doc, const Options& opt) {
  Outcome o;
  auto w = load_cochain(opt, doc.system);
  auto d = nhm::stokes_defect(w);
  o.payload = {{"lhs", nhm::to_string(d.lhs)}, {"rhs", nhm::to_string(d.rhs)}, {"agree", d.lhs == d.rhs},
               {"defect_vanishes", d.lhs == 0}};
  std::ostringstream t;
  t << "integral of dw:          " << nhm::to_string(d.lhs) << "\n"
    << "minus frontier integral: " << nhm::to_string(d.rhs) << "\n"
    << "agree: " << (d.lhs == d.rhs ? "yes" : "no") << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_mv(const nhm::SystemDocument& doc, const Options& opt) {
  Outcome o;
  auto r = nhm::mv_report(doc.system, parse_flavor(opt.flavor), &doc.cores);
  json degrees = json::array();
  std::ostringstream t;
  t << std::left << std::setw(4) << "q" << std::setw(10) << "pieces" << std::setw(14) << "intersection"
    << std::setw(8) << "rank" << std::setw(8) << "kernel" << std::setw(10) << "cokernel" << "H^q(M)\n";
  for (const auto& d : r.degrees) {
    degrees.push_back({{"degree", d.degree}, {"pieces", d.pieces}, {"intersection", d.intersection},
                       {"restriction_rank", d.restriction_rank}, {"kernel", d.kernel}, {"cokernel", d.cokernel},
                       {"derived", d.derived}});
    t << std::setw(4) << d.degree << std::setw(10) << d.pieces << std::setw(14) << d.intersection << std::setw(8)
      << d.restriction_rank << std::setw(8) << d.kernel << std::setw(10) << d.cokernel << d.derived << "\n";
  }
  o.payload = {{"flavor", opt.flavor}, {"degrees", degrees}, {"derived_betti", r.derived_betti},
               {"bicomplex_betti", r.bicomplex_betti}, {"alternating_sum", r.alternating_sum},
               {"matches_bicomplex", r.matches_bicomplex()}};
  t << "derived Betti:   " << betti_text(r.derived_betti) << "\n"
    << "bicomplex Betti: " << betti_text(r.bicomplex_betti) << "\n"
    << "alternating dimension sum: " << r.alternating_sum << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_compare(const nhm::SystemDocument& doc, const Options& opt) {
  Outcome o;
  auto c = nhm::de_rham_compare(doc.system, &doc.cores, opt.max_arity);
  std::string verdict = !c.closed ? "UNDEFINED" : (c.equal ? "EQUAL" : "UNEQUAL");
  o.payload = {{"dr", c.closed ? json(*c.closed) : json(nullptr)},
               {"sing", c.open},
               {"verdict", verdict},
               {"hypotheses",
                {{"closure_intersection", c.closure_intersection},
                 {"regions_regular_open", c.regions_regular_open},
                 {"unions_regular_open", c.unions_regular_open}}}};
  std::ostringstream t;
  t << "dr:   " << (c.closed ? betti_text(*c.closed) : "undefined (closure-intersection property fails)") << "\n"
    << "sing: " << betti_text(c.open) << "\n"
    << "verdict: " << verdict << "\n"
    << "regions regular open: " << (c.regions_regular_open ? "yes" : "no") << "\n"
    << "unions regular open:  " << (c.unions_regular_open ? "yes" : "no") << "\n"
    << "closure-intersection: " << (c.closure_intersection ? "yes" : "no") << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_gauss_bonnet(const nhm::SystemDocument& doc, const Options& opt) {
  Outcome o;
  if (!doc.has_metric()) throw nhm::PreconditionError("gauss-bonnet requires edge_lengths");
  auto metrics = doc.metrics();
  auto g = nhm::gauss_bonnet_report(doc.system, metrics, &doc.cores, opt.max_arity);
  json tuples = json::array();
  std::ostringstream t;
  t << std::left << std::setw(12) << "tuple" << std::setw(6) << "sign" << std::setw(24) << "curvature"
    << std::setw(24) << "turning" << "chi(closure)\n";
  for (const auto& tc : g.ledger.tuples) {
    tuples.push_back({{"tuple", nhm::tuple_label(tc.tuple)}, {"weight", tc.weight}, {"curvature", fmt(tc.curvature)},
                      {"turning", fmt(tc.turning)}, {"closure_euler", tc.closure_euler}});
    t << std::setw(12) << nhm::tuple_label(tc.tuple) << std::setw(6) << (tc.weight > 0 ? "+" : "-") << std::setw(24)
      << fmt(tc.curvature) << std::setw(24) << fmt(tc.turning) << tc.closure_euler << "\n";
  }
  bool balanced = std::abs(g.residual) <= 1e-9;
  o.payload = {{"euler", g.euler},       {"lhs", fmt(g.lhs)},           {"curvature", fmt(g.curvature)},
               {"counterterms", fmt(g.counterterms)}, {"rhs", fmt(g.rhs)}, {"residual", fmt(g.residual)},
               {"balanced", balanced},   {"tuples", tuples}};
  t << "chi:          " << g.euler << "\n"
    << "lhs 2 pi chi: " << fmt(g.lhs) << "\n"
    << "curvature:    " << fmt(g.curvature) << "\n"
    << "counterterms: " << fmt(g.counterterms) << "\n"
    << "rhs:          " << fmt(g.rhs) << "\n"
    << "residual:     " << fmt(g.residual) << "\n";
  o.text = t.str();
  return o;
}

int emit(const std::string& command, const Outcome& o, const Options& opt) {
  if (opt.json_out) {
    json report = {{"command", command},
                   {"status", status_name(o.code)},
                   {"payload", o.payload},
                   {"diagnostics", diagnostics_json(o.diagnostics)}};
    if (!opt.quiet) std::cout << report.dump(2) << "\n";
  } else if (!opt.quiet) {
    std::cout << o.text;
    for (const auto& d : o.diagnostics)
      if (o.code != kOk && o.text.find(d.message) == std::string::npos)
        std::cerr << "[" << d.rule << "] " << d.location << ": " << d.message << "\n";
  }
  return o.code;
}

int fail(const std::string& command, int code, const std::string& rule, const std::string& message,
         const Options& opt, std::vector<nhm::Diagnostic> diagnostics = {}) {
  Outcome o;
  o.code = code;
  o.payload = nullptr;
  diagnostics.push_back({rule, opt.file, message});
  o.diagnostics = std::move(diagnostics);
  if (opt.json_out) return emit(command, o, opt);
  if (!opt.quiet)
    for (const auto& d : o.diagnostics) std::cerr << "nhm " << command << ": [" << d.rule << "] " << d.message << "\n";
  return code;
}

int run(const std::string& command, const std::function<Outcome(const nhm::SystemDocument&, const Options&)>& body,
        const Options& opt, bool check_structure = true) {
  nhm::SystemDocument doc;
  try {
    doc = nhm::load_system(opt.file);
  } catch (const nhm::ParseError& e) {
    return fail(command, kParse, "parse", e.what(), opt);
  }
  if (check_structure) {
    auto report = structural_report(doc);
    if (!report.ok()) return fail(command, kInvalid, "validation", "the system is not valid", opt, report.entries);
  }
  try {
    return emit(command, body(doc, opt), opt);
  } catch (const nhm::ParseError& e) {
    return fail(command, kParse, "parse", e.what(), opt);
  } catch (const nhm::PreconditionError& e) {
    return fail(command, kPrecondition, "precondition", e.what(), opt);
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* cap = std::getenv("NH_MAX_TUPLE"); cap && *cap) {
    char* end = nullptr;
    long v = std::strtol(cap, &end, 10);
    if (*end != '\0' || v < 1) {
      std::cerr << "nhm: NH_MAX_TUPLE must be a positive integer\n";
      return kParse;
    }
    opt.max_arity = static_cast<std::size_t>(v);
  }

  CLI::App app{"Cohomology, integration and curvature of non-Hausdorff cell-complex gluings"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.json_out, "Machine-readable JSON report");
  app.add_flag("--quiet", opt.quiet, "Suppress the report; only the exit code is meaningful");

  struct Command {
    const char* name;
    const char* help;
    std::function<Outcome(const nhm::SystemDocument&, const Options&)> body;
    bool flavor = false;
    bool cochain = false;
  };
  std::vector<Command> commands = {
      {"validate", "Check complexes, gluing axioms, closure and metric conditions", cmd_validate},
      {"hausdorff", "List Hausdorff-violating pairs and glued cell classes", cmd_hausdorff},
      {"betti", "Betti numbers of the total complex", cmd_betti, true},
      {"euler", "Euler characteristic by inclusion-exclusion and by Betti numbers", cmd_euler},
      {"integrate", "Integrate a top-degree cochain", cmd_integrate, false, true},
      {"stokes-check", "Compare the integral of dw with the frontier term", cmd_stokes, false, true},
      {"mv-report", "Binary Mayer-Vietoris sequence", cmd_mv, true},
      {"compare", "Compare the dr and sing flavors", cmd_compare},
      {"gauss-bonnet", "Curvature ledger against 2 pi chi", cmd_gauss_bonnet},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_flag("--json", opt.json_out, "Machine-readable JSON report");
    sub->add_flag("--quiet", opt.quiet, "Suppress the report");
    if (c.flavor) sub->add_option("--flavor", opt.flavor, "dr or sing")->check(CLI::IsMember({"dr", "sing"}));
    sub->add_option("file", opt.file, "System document")->required();
    if (c.cochain) sub->add_option("cochain", opt.cochain, "Cochain document")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  for (const auto& c : commands) {
    if (!app.got_subcommand(c.name)) continue;
    // validate reports structural problems itself rather than stopping at them
    return run(c.name, c.body, opt, std::string(c.name) != "validate");
  }
  return kParse;
}

#include "cli.hpp"

#include "cdga/catalog.hpp"
#include "cdga/cohomology.hpp"
#include "cdga/dsl.hpp"
#include "cdga/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cdga::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string command;
  std::string file;
  std::string block;
  std::string fixture;
  std::vector<std::string> classes;
  std::optional<int> max_degree;
  bool json = false;
  bool check = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  json result = json::object();
  json witnesses = json::array();
  std::ostringstream text;
  int max_degree = 0;
  int code = exit_ok;
};

std::optional<int> env_max_degree() {
  const char* v = std::getenv("CDGA_MAX_DEGREE");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used != std::string_view(v).size() || n < 0) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw UsageError(std::string("CDGA_MAX_DEGREE must be a non-negative integer, got '") + v + "'");
  }
}

int resolve_max_degree(const Options& o, std::optional<int> from_input, int fallback) {
  if (o.max_degree) return *o.max_degree;
  if (auto e = env_max_degree()) return *e;
  if (from_input) return *from_input;
  return fallback;
}

DslDocument load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const AlgebraBlock& algebra_block(const DslDocument& doc, const std::string& name) {
  if (name.empty()) {
    if (doc.algebras.empty()) throw UsageError("no algebra block in input");
    return doc.algebras.front();
  }
  const AlgebraBlock* b = doc.algebra(name);
  if (!b) throw UsageError("no algebra block named '" + name + "'");
  return *b;
}

json presentation_json(const Presentation& p) {
  json gens = json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    gens.push_back({{"name", p.generators()[i].name},
                    {"degree", p.generators()[i].degree},
                    {"d", p.differential(i).to_string()}});
  return {{"name", p.name()}, {"generators", gens}};
}

std::string presentation_text(const Presentation& p) {
  std::ostringstream os;
  os << p.name() << ":";
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << "\n  " << p.generators()[i].name << " (" << p.generators()[i].degree << ")";
    if (!p.differential(i).is_zero()) os << "  d = " << p.differential(i).to_string();
  }
  return os.str();
}

std::string kind_text(WitnessKind k) { return k == WitnessKind::Massey ? "massey" : "ideal"; }

json witness_json(const Witness& w) {
  json triple = json::array();
  for (const auto& t : w.triple) triple.push_back(t.to_string());
  return {{"kind", kind_text(w.kind)},
          {"degree", w.degree},
          {"element", w.element.to_string()},
          {"triple", triple},
          {"indeterminacy_dim", w.indeterminacy_dim},
          {"complement_independent", w.complement_independent},
          {"description", w.describe()}};
}

int verdict_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::Formal:
      return exit_ok;
    case VerdictKind::NonFormal:
      return exit_nonformal;
    case VerdictKind::Inconclusive:
      return exit_inconclusive;
  }
  return exit_error;
}

json verdict_json(const FormalityVerdict& v, const Presentation& model) {
  json out = {{"verdict", to_string(v.kind)}, {"degree_bound", v.degree_bound}};
  if (!v.reason.empty()) out["reason"] = v.reason;
  json comp = json::object();
  for (std::size_t k = 0; k < v.complement.size(); ++k)
    if (!v.complement[k].empty()) comp[std::to_string(k)] = v.complement[k];
  out["complement"] = comp;
  if (v.certificate) {
    json cert = json::object();
    const GradedAlgebra& h = *v.certificate->target();
    for (std::size_t i = 0; i < model.size(); ++i) {
      const int deg = model.generators()[i].degree;
      if (deg > h.top_degree()) continue;
      cert[model.generators()[i].name] = h.format(deg, v.certificate->image(i));
    }
    out["certificate"] = cert;
  }
  return out;
}

void verdict_text(std::ostream& os, const FormalityVerdict& v) {
  os << "verdict: " << to_string(v.kind) << " (N = " << v.degree_bound << ")\n";
  if (v.witness) os << "witness: " << v.witness->describe() << "\n";
  if (!v.reason.empty()) os << "reason: " << v.reason << "\n";
}

// --- commands ---------------------------------------------------------------

void cmd_validate(const Options& o, Report& r) {
  const DslDocument doc = load(o.file);
  json algs = json::array();
  for (const auto& b : doc.algebras) {
    const int N = resolve_max_degree(o, doc.max_degree, default_max_degree(b));
    const Presentation p = presentation(b, N);
    algs.push_back(presentation_json(p));
    r.text << "algebra " << b.name << ": " << p.size() << " generators, d^2 = 0, minimal: "
           << (is_minimal(p) ? "yes" : "no") << "\n";
    r.max_degree = std::max(r.max_degree, N);
  }
  json fibs = json::array();
  for (const auto& f : doc.fibrations) {
    const AlgebraBlock& base = algebra_block(doc, f.base);
    const int N = resolve_max_degree(o, doc.max_degree, default_max_degree(base));
    const FibrationModel fm = build_fibration_model(presentation(base, N), f.fiber, f.u);
    fibs.push_back({{"name", f.name}, {"base", f.base}, {"fiber", f.fiber.describe()}, {"primitive", fm.primitive}});
    r.text << "fibration " << f.name << ": " << f.fiber.describe() << " over " << f.base
           << (fm.primitive ? ", primitive" : ", non-primitive") << "\n";
  }
  r.result = {{"valid", true}, {"algebras", algs}, {"fibrations", fibs}};
}

void cmd_print(const Options& o, Report& r) {
  const DslDocument doc = load(o.file);
  const std::string text = print(doc);
  r.text << text;
  r.result = {{"document", text}};
  if (doc.max_degree) r.max_degree = *doc.max_degree;
}

void cmd_cohomology(const Options& o, Report& r) {
  const DslDocument doc = load(o.file);
  const AlgebraBlock& b = algebra_block(doc, o.block);
  const int N = resolve_max_degree(o, doc.max_degree, default_max_degree(b));
  r.max_degree = N;
  const Presentation p = presentation(b, N);
  const CohomologyTable H = cohomology(p);
  const auto& alg = dynamic_cast<const FreeAlgebra&>(H.algebra());
  json betti = json::array();
  json reps = json::object();
  r.text << "cohomology of " << p.name() << " up to degree " << N << "\n";
  for (int k = 0; k <= N; ++k) {
    betti.push_back(H.betti(k));
    if (H.betti(k) == 0) continue;
    json list = json::array();
    for (const auto& v : H.representatives(k)) list.push_back(alg.to_poly(k, v).to_string());
    r.text << "  H^" << k << " = " << H.betti(k) << ":";
    for (const auto& s : list) r.text << "  [" << s.get<std::string>() << "]";
    r.text << "\n";
    reps[std::to_string(k)] = list;
  }
  const int cl = cup_length(H);
  r.text << "cup length: " << cl << "\n";
  r.result = {{"algebra", p.name()}, {"betti", betti}, {"representatives", reps}, {"cup_length", cl}};
}

void cmd_minimal_model(const Options& o, Report& r) {
  const DslDocument doc = load(o.file);
  const AlgebraBlock& b = algebra_block(doc, o.block);
  const int N = resolve_max_degree(o, doc.max_degree, default_max_degree(b));
  r.max_degree = N;
  const Presentation p = presentation(b, N);
  const MinimalModel m = minimal_model(p);
  json gens = json::array();
  r.text << "minimal model of " << p.name() << " up to degree " << N << "\n";
  for (std::size_t i = 0; i < m.model.size(); ++i) {
    const auto& g = m.model.generators()[i];
    json entry = {{"name", g.name}, {"degree", g.degree}, {"d", m.model.differential(i).to_string()}};
    r.text << "  " << g.name << " (" << g.degree << ")  d = " << m.model.differential(i).to_string();
    if (m.morphism) {
      entry["image"] = m.morphism->image(i).to_string();
      r.text << "  -> " << m.morphism->image(i).to_string();
    }
    r.text << "\n";
    gens.push_back(entry);
  }
  const QuasiIsoReport q = verify_quasi_iso(m.map, N);
  r.text << "quasi-isomorphism up to degree " << N << ": " << (q.passed() ? "verified" : "FAILED") << "\n";
  r.result = {{"algebra", p.name()}, {"minimal", is_minimal(p)}, {"generators", gens}, {"verified", q.passed()}};
}

void cmd_formality(const Options& o, Report& r) {
  const DslDocument doc = load(o.file);
  const AlgebraBlock& b = algebra_block(doc, o.block);
  const int N = resolve_max_degree(o, doc.max_degree, default_max_degree(b));
  r.max_degree = N;
  const Presentation p = presentation(b, N);
  const bool minimal = is_minimal(p);
  const Presentation model = minimal ? p : minimal_model(p).model;
  const FormalityVerdict v = dgms_check(model);
  if (!minimal) r.text << presentation_text(model) << "\n";
  verdict_text(r.text, v);
  r.result = verdict_json(v, model);
  r.result["algebra"] = p.name();
  r.result["model"] = presentation_json(model);
  if (v.witness) r.witnesses.push_back(witness_json(*v.witness));
  if (const auto nw = nonformality_witness(model); nw && (!v.witness || nw->kind != v.witness->kind)) {
    if (v.kind == VerdictKind::NonFormal || nw->kind == WitnessKind::Massey) {
      r.witnesses.push_back(witness_json(*nw));
      r.text << "also: " << nw->describe() << "\n";
    }
  }
  r.code = verdict_code(v.kind);
}

void cmd_fibration(const Options& o, Report& r) {
  const DslDocument doc = load(o.file);
  const FibrationBlock* fb = nullptr;
  if (o.block.empty()) {
    if (doc.fibrations.empty()) throw UsageError("no fibration block in input");
    fb = &doc.fibrations.front();
  } else {
    fb = doc.fibration(o.block);
    if (!fb) throw UsageError("no fibration block named '" + o.block + "'");
  }
  const AlgebraBlock& base_block = algebra_block(doc, fb->base);
  const int N = resolve_max_degree(o, doc.max_degree, default_max_degree(base_block));
  r.max_degree = N;
  const Presentation base = presentation(base_block, N);
  const FibrationModel fm = build_fibration_model(base, fb->fiber, fb->u);
  r.text << "fibration " << fb->name << ": " << fb->fiber.describe() << " over " << base.name() << ", u = "
         << fm.u.to_string() << "\n";
  r.text << "total model " << presentation_text(fm.total) << "\n";
  r.text << "primitive: " << (fm.primitive ? "yes" : "no") << "\n";
  r.result = {{"fibration", fb->name},
              {"fiber", fb->fiber.describe()},
              {"u", fm.u.to_string()},
              {"total", presentation_json(fm.total)},
              {"primitive", fm.primitive}};

  const TheoremCHypotheses h = theoremC_hypotheses(fm);
  r.result["hypotheses"] = {{"applicable", !fm.fiber.odd()},
                            {"hurewicz_n", h.hurewicz_n},
                            {"hurewicz_top", h.hurewicz_top},
                            {"connectivity", h.connectivity},
                            {"connectivity_route", h.connectivity_route},
                            {"low_degree_route", h.low_degree_route},
                            {"satisfied", h.satisfied()}};
  if (fm.fiber.odd())
    r.text << "base hypotheses for passing formality down: not applicable to odd fibers\n";
  else
    r.text << "base hypotheses for passing formality down: " << (h.satisfied() ? "satisfied" : "not satisfied")
           << " (rational connectivity " << h.connectivity << ")\n";

  Presentation total = fm.total;
  if (fm.u.is_zero()) {
    r.text << "trivial twist: the total space is a product\n";
  } else if (fm.primitive && !fm.fiber.odd()) {
    const ReductionResult red = theoremC_reduce(fm);
    total = red.reduced;
    json phi = json::object();
    for (std::size_t i = 0; i < fm.total.size(); ++i)
      phi[fm.total.generators()[i].name] = red.phi.image(i).to_string();
    r.result["reduction"] = {{"model", presentation_json(red.reduced)},
                             {"phi", phi},
                             {"eliminated", base.generators()[*red.u_prime].name},
                             {"quasi_isomorphism", verify_quasi_iso(red.phi).passed()}};
    r.text << "reduced model " << presentation_text(red.reduced) << "\n";
  }
  if (!is_minimal(total)) total = minimal_model(total).model;
  const FormalityVerdict vb = dgms_check(base);
  const FormalityVerdict ve = dgms_check(total);
  r.text << "base ";
  verdict_text(r.text, vb);
  r.text << "total ";
  verdict_text(r.text, ve);
  r.result["base_verdict"] = verdict_json(vb, base);
  r.result["total_verdict"] = verdict_json(ve, total);
  r.result["total_model"] = presentation_json(total);
  if (vb.witness) r.witnesses.push_back(witness_json(*vb.witness));
  if (ve.witness) r.witnesses.push_back(witness_json(*ve.witness));
}

void cmd_massey(const Options& o, Report& r) {
  if (o.classes.size() != 3) throw UsageError("massey needs three classes A B C");
  const DslDocument doc = load(o.file);
  const AlgebraBlock& b = algebra_block(doc, o.block);
  const int N = resolve_max_degree(o, doc.max_degree, default_max_degree(b));
  r.max_degree = N;
  const Presentation p = presentation(b, N);
  const CohomologyTable H = cohomology(p);
  const auto& alg = dynamic_cast<const FreeAlgebra&>(H.algebra());
  std::vector<CohomologyClass> cls;
  for (const auto& text : o.classes) {
    const Poly x = parse_expression(text, p.space());
    const auto deg = x.degree();
    if (!deg || *deg > N) throw UsageError("'" + text + "' is not a homogeneous element of degree <= " + std::to_string(N));
    const QVector v = alg.to_vector(x, *deg);
    if (!H.is_cocycle(*deg, v)) throw UsageError("'" + text + "' is not closed");
    cls.push_back(CohomologyClass{*deg, H.class_of(*deg, v)});
  }
  json triple = json::array();
  for (const auto& t : o.classes) triple.push_back(parse_expression(t, p.space()).to_string());
  r.result = {{"algebra", p.name()}, {"triple", triple}};
  if (!massey_defined(H, cls[0], cls[1], cls[2])) {
    r.result["defined"] = false;
    r.text << "<" << o.classes[0] << ", " << o.classes[1] << ", " << o.classes[2] << "> is not defined\n";
    return;
  }
  const MasseyResult m = massey_triple(H, cls[0], cls[1], cls[2]);
  const std::string rep = alg.to_poly(m.degree, m.representative).to_string();
  r.result["defined"] = true;
  r.result["degree"] = m.degree;
  r.result["representative"] = rep;
  r.result["indeterminacy_dim"] = m.indeterminacy.size();
  r.result["contains_zero"] = m.contains_zero;
  r.text << "<" << o.classes[0] << ", " << o.classes[1] << ", " << o.classes[2] << "> = [" << rep << "] in degree "
         << m.degree << ", indeterminacy of dimension " << m.indeterminacy.size() << ", "
         << (m.contains_zero ? "contains zero" : "does not contain zero") << "\n";
  if (!m.contains_zero) {
    Witness w{.kind = WitnessKind::Massey,
              .degree = m.degree,
              .element = alg.to_poly(m.degree, m.representative),
              .triple = {},
              .indeterminacy_dim = static_cast<Index>(m.indeterminacy.size())};
    for (const auto& t : o.classes) w.triple.push_back(parse_expression(t, p.space()));
    r.witnesses.push_back(witness_json(w));
  }
}

void cmd_fixture(const Options& o, Report& r) {
  Fixture f = fixture(o.fixture);
  const int N = resolve_max_degree(o, std::nullopt, f.presentation.truncation());
  if (N != f.presentation.truncation()) f.presentation = f.presentation.with_truncation(N);
  r.max_degree = N;
  const std::string text = print(document_of(f));
  r.text << "# " << f.description << "\n" << text;
  r.result = {{"name", f.name}, {"description", f.description}, {"document", text}};
  if (!o.check) return;
  const FixtureReport rep = check_fixture(f);
  json checks = json::array();
  r.text << "\n";
  for (const auto& l : rep.lines) {
    const auto src = f.expected.source.find(l.field);
    checks.push_back({{"field", l.field},
                      {"expected", l.expected},
                      {"actual", l.actual},
                      {"ok", l.ok},
                      {"source", src == f.expected.source.end() ? "" : to_string(src->second)}});
    r.text << (l.ok ? "ok   " : "FAIL ") << l.field << ": " << l.actual;
    if (!l.ok) r.text << " (expected " << l.expected << ")";
    r.text << "\n";
  }
  r.result["checks"] = checks;
  r.result["passed"] = rep.passed();
  if (rep.total_model) {
    r.text << "total space model " << presentation_text(*rep.total_model) << "\n";
    r.result["total_model"] = presentation_json(*rep.total_model);
  }
  if (rep.verdict) {
    r.result["verdict"] = verdict_json(*rep.verdict, f.presentation);
    if (rep.verdict->witness) r.witnesses.push_back(witness_json(*rep.verdict->witness));
  }
  r.text << (rep.passed() ? "all checks passed" : "some checks FAILED") << "\n";
  if (!rep.passed()) r.code = exit_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"cdga: rational homotopy computations on commutative differential graded algebras", "cdga"};
  app.set_version_flag("--version", version);
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_flag("--json", o.json, "emit a JSON report");
  app.add_option("--max-degree", o.max_degree, "truncation degree N (overrides CDGA_MAX_DEGREE and the input)")
      ->check(CLI::NonNegativeNumber);

  auto file_cmd = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "input .cdga file")->required();
    c->add_option("--block", o.block, "block name (default: the first block)");
    return c;
  };
  file_cmd("validate", "parse and validate every block");
  file_cmd("print", "print the canonical form of the input");
  file_cmd("cohomology", "Betti numbers and class representatives");
  file_cmd("minimal-model", "minimal Sullivan model with its quasi-isomorphism");
  file_cmd("formality", "formality verdict with certificate or witness");
  file_cmd("fibration", "fibration model, primitivity and reduction");
  CLI::App* massey = file_cmd("massey", "triple Massey product <A, B, C>");
  massey->add_option("classes", o.classes, "three closed elements")->expected(3)->required();
  CLI::App* fix = app.add_subcommand("fixture", "show (and check) a built-in fixture");
  fix->add_option("name", o.fixture, "fixture name, e.g. hpn:2")->required();
  fix->add_flag("--check", o.check, "recompute every expected value");

  std::vector<const char*> argv{"cdga"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_error;
  }
  o.command = app.get_subcommands().front()->get_name();

  Report r;
  try {
    if (o.command == "validate") cmd_validate(o, r);
    else if (o.command == "print") cmd_print(o, r);
    else if (o.command == "cohomology") cmd_cohomology(o, r);
    else if (o.command == "minimal-model") cmd_minimal_model(o, r);
    else if (o.command == "formality") cmd_formality(o, r);
    else if (o.command == "fibration") cmd_fibration(o, r);
    else if (o.command == "massey") cmd_massey(o, r);
    else if (o.command == "fixture") cmd_fixture(o, r);
  } catch (const std::exception& e) {
    err << "cdga " << o.command << ": " << e.what() << "\n";
    return exit_error;
  }

  if (o.json) {
    const json report = {{"command", o.command},
                         {"input", o.command == "fixture" ? o.fixture : o.file},
                         {"max_degree", r.max_degree},
                         {"result", r.result},
                         {"witnesses", r.witnesses},
                         {"version", version}};
    out << report.dump(2) << "\n";
  } else {
    out << r.text.str();
  }
  return r.code;
}

}  // namespace cdga::cli

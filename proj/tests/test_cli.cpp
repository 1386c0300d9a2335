#include "catch_amalgamated.hpp"

#include "cdga/dsl.hpp"
#include "cli.hpp"
#include "gen.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cdga;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(CDGA_SOURCE_DIR) + "/samples/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("cdga_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value) setenv("CDGA_MAX_DEGREE", value, 1);
    else unsetenv("CDGA_MAX_DEGREE");
  }
  ~EnvGuard() { unsetenv("CDGA_MAX_DEGREE"); }
};

int expected_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::Formal:
      return cli::exit_ok;
    case VerdictKind::NonFormal:
      return cli::exit_nonformal;
    case VerdictKind::Inconclusive:
      return cli::exit_inconclusive;
  }
  return -1;
}

}  // namespace

TEST_CASE("formality exit codes follow the verdict") {
  EnvGuard env(nullptr);
  REQUIRE(run({"formality", sample("sphere2.cdga")}).code == cli::exit_ok);
  REQUIRE(run({"formality", sample("sec6_prim.cdga")}).code == cli::exit_ok);
  const Run h = run({"formality", sample("heisenberg.cdga")});
  REQUIRE(h.code == cli::exit_nonformal);
  REQUIRE(h.out.find("NonFormal") != std::string::npos);
  const Run b = run({"--json", "formality", sample("sec6_nonprim.cdga")});
  REQUIRE(b.code == cli::exit_nonformal);
  const json j = json::parse(b.out);
  REQUIRE(j["result"]["verdict"] == "NonFormal");
  bool has_nb = false;
  for (const auto& w : j["witnesses"]) has_nb = has_nb || (w["kind"] == "ideal" && w["element"] == "b*n");
  REQUIRE(has_nb);
}

TEST_CASE("the exit code is a bijection with the verdict on random inputs") {
  EnvGuard env(nullptr);
  gen::Rng r(81);
  std::map<int, int> seen;
  for (int t = 0; t < 200; ++t) {
    const Presentation p = gen::presentation(r, gen::uniform(r, 1, 4), 5, 12);
    DslDocument doc;
    doc.max_degree = 12;
    doc.algebras.push_back(AlgebraBlock{"R", p.space(), p.differentials(), {}, {}});
    const std::string path = temp_file("bijection.cdga", print(doc));
    const Run res = run({"--json", "formality", path});
    const VerdictKind k = dgms_check(p).kind;
    REQUIRE(res.code == expected_code(k));
    REQUIRE(json::parse(res.out)["result"]["verdict"] == to_string(k));
    ++seen[res.code];
  }
  REQUIRE(seen[cli::exit_ok] > 0);
  REQUIRE(seen[cli::exit_nonformal] > 0);
}

TEST_CASE("exit code values") {
  REQUIRE(cli::exit_inconclusive == 3);
  REQUIRE(cli::exit_error == 1);
  REQUIRE(cli::exit_nonformal == 2);
  REQUIRE(cli::exit_ok == 0);
}

TEST_CASE("JSON reports carry the common fields") {
  EnvGuard env(nullptr);
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--json", "validate", sample("sphere2.cdga")},
           {"--json", "print", sample("twistor_hp2.cdga")},
           {"--json", "cohomology", sample("sec6_nonprim.cdga")},
           {"--json", "minimal-model", sample("sphere2.cdga")},
           {"--json", "fibration", sample("twistor_hp2.cdga")},
           {"--json", "massey", sample("heisenberg.cdga"), "x", "x", "y"},
           {"--json", "fixture", "hpn:2", "--check"}}) {
    INFO(args[1]);
    const Run res = run(args);
    REQUIRE(res.code == cli::exit_ok);
    const json j = json::parse(res.out);
    REQUIRE(j["command"] == args[1]);
    REQUIRE(j["version"] == "0.1.0");
    REQUIRE(j.contains("input"));
    REQUIRE(j["max_degree"].is_number_integer());
    REQUIRE(j["result"].is_object());
    REQUIRE(j["witnesses"].is_array());
  }
}

TEST_CASE("cohomology and Massey reports") {
  EnvGuard env(nullptr);
  const json c = json::parse(run({"--json", "cohomology", sample("sec6_nonprim.cdga")}).out);
  const std::vector<int> betti = c["result"]["betti"];
  REQUIRE(betti == std::vector<int>{1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1});
  const json m = json::parse(run({"--json", "massey", sample("heisenberg.cdga"), "x", "x", "y"}).out);
  REQUIRE(m["result"]["defined"] == true);
  REQUIRE(m["result"]["degree"] == 8);
  REQUIRE(m["result"]["contains_zero"] == false);
  REQUIRE(json::parse(run({"--json", "massey", sample("sphere2.cdga"), "x", "x", "x"}).out)["result"]["defined"] == true);
  const Run undefined = run({"--json", "massey", sample("twistor_hp2.cdga"), "u", "u", "u"});
  REQUIRE(undefined.code == cli::exit_ok);
  REQUIRE(json::parse(undefined.out)["result"]["defined"] == false);
  REQUIRE(run({"massey", sample("heisenberg.cdga"), "z", "x", "y"}).code == cli::exit_error);
}

TEST_CASE("max-degree precedence: flag, then environment, then input, then default") {
  const std::string with = sample("sec6_nonprim.cdga");  // max_degree 20 in the file
  const std::string without = temp_file("nomax.cdga", "algebra S\n  gen x:2 y:3\n  d y = x^2\n");
  auto degree = [](const Run& r) { return json::parse(r.out)["max_degree"].get<int>(); };
  {
    EnvGuard env(nullptr);
    REQUIRE(degree(run({"--json", "cohomology", with})) == 20);
    REQUIRE(degree(run({"--json", "cohomology", without})) == 8);
    REQUIRE(degree(run({"--json", "--max-degree", "9", "cohomology", with})) == 9);
    REQUIRE(degree(run({"cohomology", with, "--json", "--max-degree", "9"})) == 9);
  }
  {
    EnvGuard env("11");
    REQUIRE(degree(run({"--json", "cohomology", with})) == 11);
    REQUIRE(degree(run({"--json", "cohomology", without})) == 11);
    REQUIRE(degree(run({"--json", "--max-degree", "7", "cohomology", with})) == 7);
  }
  {
    EnvGuard env("eleven");
    REQUIRE(run({"cohomology", with}).code == cli::exit_error);
  }
}

TEST_CASE("errors exit with 1 and a message") {
  EnvGuard env(nullptr);
  const Run missing = run({"cohomology", "/nonexistent/file.cdga"});
  REQUIRE(missing.code == cli::exit_error);
  REQUIRE(missing.err.find("cannot read") != std::string::npos);
  const Run bad = run({"validate", temp_file("bad.cdga", "algebra A\n  gen x:2 y:3\n  d y = x^2 + q\n")});
  REQUIRE(bad.code == cli::exit_error);
  REQUIRE(bad.err.find("line 3, column 15") != std::string::npos);
  REQUIRE(run({"fixture", "nope"}).code == cli::exit_error);
  REQUIRE(run({}).code == cli::exit_error);
  REQUIRE(run({"frobnicate"}).code == cli::exit_error);
  REQUIRE(run({"--max-degree", "-2", "cohomology", sample("sphere2.cdga")}).code == cli::exit_error);
  REQUIRE(run({"cohomology", sample("sphere2.cdga"), "--block", "nope"}).code == cli::exit_error);
}

TEST_CASE("print and fixture output parse back") {
  EnvGuard env(nullptr);
  for (const auto& name : fixture_names()) {
    INFO(name);
    const Run res = run({"--json", "fixture", name});
    REQUIRE(res.code == cli::exit_ok);
    const std::string text = json::parse(res.out)["result"]["document"];
    REQUIRE(parse(text) == document_of(fixture(name)));
  }
  const Run p = run({"print", sample("sec6_prim.cdga")});
  REQUIRE(p.code == cli::exit_ok);
  REQUIRE(print(parse(p.out)) == p.out);
}

TEST_CASE("fibration command") {
  EnvGuard env(nullptr);
  const json t = json::parse(run({"--json", "fibration", sample("twistor_hp2.cdga")}).out);
  REQUIRE(t["result"]["primitive"] == true);
  REQUIRE(t["result"]["hypotheses"]["satisfied"] == true);
  REQUIRE(t["result"]["total_verdict"]["verdict"] == "Formal");
  const json s = json::parse(run({"--json", "fibration", sample("sec6_prim.cdga")}).out);
  REQUIRE(s["result"]["hypotheses"]["applicable"] == false);
  REQUIRE(s["result"]["base_verdict"]["verdict"] == "Formal");
  REQUIRE(s["result"]["total_verdict"]["verdict"] == "NonFormal");
}

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "cdga/catalog.hpp"
#include "cdga/cohomology.hpp"
#include "cdga/dsl.hpp"
#include "cdga/fibration.hpp"
#include "cdga/formality.hpp"
#include "cli.hpp"
#include "gen.hpp"
#include "json.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace cdga;

namespace {

struct Failure {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<long> as_long(const std::vector<Index>& v) { return {v.begin(), v.end()}; }

std::string criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const FormalityVerdict h = dgms_check(fixture("heisenberg-like:3").presentation);
  check(h.kind == VerdictKind::NonFormal, "heisenberg-like:3 not NonFormal");
  check(h.witness->kind == WitnessKind::Massey && h.witness->degree == 8 && h.witness->indeterminacy_dim == 0,
        "heisenberg witness is not a degree-8 Massey product with zero indeterminacy");

  const FixtureReport prim = check_fixture(fixture("sec6-primitive"));
  check(prim.passed(), "sec6-primitive fixture lines");
  check(prim.verdict->kind == VerdictKind::Formal, "sec6-primitive base not Formal");
  check(fibration_model(fixture("sec6-primitive")).primitive, "sec6-primitive twist not primitive");
  check(dgms_check(*prim.total_model).kind == VerdictKind::NonFormal, "sec6-primitive total not NonFormal");

  const Presentation b = fixture("sec6-nonprimitive").presentation;
  const FixtureReport nonprim = check_fixture(fixture("sec6-nonprimitive"));
  check(nonprim.passed(), "sec6-nonprimitive fixture lines");
  check(nonprim.verdict->kind == VerdictKind::NonFormal, "sec6-nonprimitive base not NonFormal");
  const auto w = nonformality_witness(b);
  check(w && w->kind == WitnessKind::IdealN && w->element == b.generator("n") * b.generator("b"),
        "sec6-nonprimitive witness is not n*b");
  const Presentation& e = *nonprim.total_model;
  std::vector<int> degs;
  for (std::size_t i = 0; i < e.size(); ++i) degs.push_back(e.generators()[i].degree);
  std::sort(degs.begin(), degs.end());
  check(degs == std::vector<int>{3, 6}, "sec6-nonprimitive total model is not on generators of degrees 3, 6");
  for (const auto& dg : e.differentials()) check(dg.is_zero(), "sec6-nonprimitive total model not free");
  check(dgms_check(e).kind == VerdictKind::Formal, "sec6-nonprimitive total not Formal");

  const double s = seconds_since(t0);
  check(s < 5.0, "runtime " + std::to_string(s) + " s");
  return "N = 20, " + std::to_string(s) + " s";
}

std::string criterion2() {
  std::ostringstream note;
  for (int n = 1; n <= 3; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string name = "twistor:hpn:" + std::to_string(n);
    const FibrationModel fm = fibration_model(fixture(name));
    const ReductionResult red = theoremC_reduce(fm);
    const int N = fm.total.truncation();
    check(N >= 4 * n + 4, name + " truncation below 4n+4");
    std::vector<long> want(static_cast<std::size_t>(N + 1), 0);
    for (int k = 0; k <= 4 * n + 2; k += 2) want[static_cast<std::size_t>(k)] = 1;
    check(oracle::betti(red.reduced, N) == want, name + " oracle Betti numbers differ from CP^" + std::to_string(2 * n + 1));
    check(as_long(cohomology(red.reduced, N).betti_numbers()) == want, name + " Betti numbers");
    const FormalityVerdict vb = dgms_check(fm.base);
    check(vb.kind == VerdictKind::Formal, name + " base not Formal");
    const AlgebraMap mu = tilde_mu_E(fm, *vb.certificate);
    check(check_formal_map(fm, base_inclusion(fm), *vb.certificate, mu).passed(), name + " check_formal_map");
    const double s = seconds_since(t0);
    check(s < 60.0, name + " runtime");
    note << (n > 1 ? ", " : "") << "n=" << n << " " << s << " s";
  }
  return note.str();
}

std::string criterion3() {
  gen::Rng r(301);
  int closures = 0;
  const std::vector<std::string> names = {"twistor:hpn:1", "twistor:hpn:2", "twistor:hpn:3",
                                          "s6-projective", "tower:2",       "tower:3"};
  for (const auto& name : names) {
    const FibrationModel fm = fibration_model(fixture(name));
    const ReductionResult red = theoremC_reduce(fm);
    const int N = fm.total.truncation();
    check(verify_quasi_iso(red.phi, N).passed(), name + " phi not a quasi-isomorphism");
    check(compose(red.phi, red.psi).images() == Morphism::identity(red.reduced).images(), name + " phi o psi != id");
    for (int t = 0; t < 200; ++t) {
      const Poly p = gen::mixed(r, fm.total.space(), N);
      check(d(red.phi(p), red.reduced) == red.phi(d(p, fm.total)), name + " d phi != phi d");
    }
    const CohomologyTable h = cohomology(red.reduced);
    FreeAlgebra a(red.reduced, N);
    for (int k = 1; k <= N; ++k) {
      for (const auto& z : h.cocycle_basis(k)) {
        const Poly x = a.to_poly(k, z);
        const Poly y = closure_correction(fm, red, x);
        check(d(y, fm.total).is_zero(), name + " closure correction not closed");
        check(red.phi(y) == x, name + " phi of closure correction differs");
        ++closures;
      }
    }
  }
  return std::to_string(names.size()) + " fixtures, " + std::to_string(closures) + " closure corrections";
}

std::string criterion4() {
  for (int n = 1; n <= 3; ++n) {
    const FibrationModel fm = fibration_model(fixture("twistor:hpn:" + std::to_string(n)));
    const FormalityVerdict vb = dgms_check(fm.base);
    const AlgebraMap mu = tilde_mu_E(fm, *vb.certificate);
    const QuasiIsoReport rep = verify_quasi_iso(mu, fm.total.truncation());
    check(rep.chain_map() && rep.passed(), "tilde_mu_E on HP^" + std::to_string(n));
  }
  return "n = 1..3";
}

std::string criterion5() {
  for (int n = 1; n <= 4; ++n)
    check(cup_length(cohomology(fixture("hpn:" + std::to_string(n)).presentation)) == n,
          "cup length of HP^" + std::to_string(n));
  return "n = 1..4";
}

std::string criterion6() {
  gen::Rng r(601);
  int dsq = 0, koszul = 0, leibniz = 0;
  while (dsq < 1000 || koszul < 1000 || leibniz < 1000) {
    const Presentation p = gen::presentation(r, gen::uniform(r, 2, 5), 6, 12, gen::uniform(r, 0, 1));
    const Poly m = gen::mixed(r, p.space(), 10);
    check(d(d(m, p), p).is_zero(), "d^2 != 0");
    ++dsq;
    const int da = gen::uniform(r, 0, 8), db = gen::uniform(r, 0, 8);
    const Poly a = gen::homogeneous(r, p.space(), da), b = gen::homogeneous(r, p.space(), db);
    if (a.is_zero() || b.is_zero()) continue;
    check(a * b == Rational((da * db) % 2 ? -1 : 1) * (b * a), "Koszul sign law");
    ++koszul;
    check(d(a * b, p) == d(a, p) * b + Rational(da % 2 ? -1 : 1) * (a * d(b, p)), "Leibniz rule");
    ++leibniz;
  }
  int fixtures = 0;
  for (const auto& name : fixture_names()) {
    const Presentation p = fixture(name).presentation;
    const int N = p.truncation();
    check(as_long(cohomology(p, N).betti_numbers()) == oracle::betti(p, N), name + " Betti numbers differ from oracle");
    ++fixtures;
  }
  return std::to_string(dsq) + " d^2, " + std::to_string(koszul) + " Koszul, " + std::to_string(leibniz) +
         " Leibniz cases; " + std::to_string(fixtures) + " fixtures";
}

std::string criterion7() {
  const FixtureReport hp1 = check_fixture(fixture("hp1-projective"));
  check(hp1.passed(), "hp1-projective fixture lines");
  const FibrationModel trivial = fibration_model(fixture("hp1-projective"));
  check(!trivial.primitive, "hp1-projective twist should vanish");
  check(dgms_check(trivial.base).kind == VerdictKind::Formal, "HP^1 base not Formal");

  const FibrationModel fm = fibration_model(fixture("s6-projective"));
  const TheoremCHypotheses hyp = theoremC_hypotheses(fm);
  check(hyp.connectivity_only && hyp.satisfied(), "connectivity hypothesis over S^6");
  const ReductionResult red = theoremC_reduce(fm);
  check(red.primitive_case, "S^6 case not primitive");
  check(dgms_check(fm.base).kind == VerdictKind::Formal, "S^6 base not Formal");
  check(dgms_check(red.reduced).kind == VerdictKind::Formal, "reduced model not Formal");

  auto s = make_space({{"z", 2}, {"u4", 4}, {"u6", 6}});
  const Poly z = Poly::generator(s, 0), u4 = Poly::generator(s, 1), u6 = Poly::generator(s, 2);
  for (int i = 1; i <= 8; ++i) {
    const auto ui = static_cast<unsigned>(i);
    Poly telescoping(s);
    for (int j = 0; j < i; ++j) telescoping += z.pow(static_cast<unsigned>(2 * j)) * u4.pow(static_cast<unsigned>(i - 1 - j));
    check(correction_sum(z, u4, 2, i) == telescoping, "d = 2 correction sum");
    check((z.pow(3) - u6) * correction_sum(z, u6, 3, i) == z.pow(3 * ui) - u6.pow(ui), "d = 3 correction identity");
  }
  return "HP^1 via product path, S^6 via connectivity, correction sums i = 1..8";
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

std::string criterion8() {
  int fixtures = 0;
  for (const auto& name : fixture_names()) {
    const DslDocument doc = document_of(fixture(name));
    const std::string text = print(doc);
    check(parse(text) == doc && print(parse(text)) == text, name + " round trip");
    ++fixtures;
  }

  unsetenv("CDGA_MAX_DEGREE");
  gen::Rng r(801);
  const auto path = (std::filesystem::temp_directory_path() / "cdga_acceptance.cdga").string();
  std::map<int, int> seen;
  for (int t = 0; t < 100; ++t) {
    const Presentation p = gen::presentation(r, gen::uniform(r, 1, 4), 5, 12);
    DslDocument doc;
    doc.max_degree = 12;
    doc.algebras.push_back(AlgebraBlock{"R", p.space(), p.differentials(), {}, {}});
    std::ofstream(path) << print(doc);
    const VerdictKind k = dgms_check(p).kind;
    const int want = k == VerdictKind::Formal      ? cli::exit_ok
                     : k == VerdictKind::NonFormal ? cli::exit_nonformal
                                                   : cli::exit_inconclusive;
    const Run res = run_cli({"--json", "formality", path});
    check(res.code == want, "exit code " + std::to_string(res.code) + " for " + to_string(k));
    check(nlohmann::json::parse(res.out)["result"]["verdict"] == to_string(k), "JSON verdict");
    ++seen[res.code];
  }
  check(run_cli({"fixture", "no-such-fixture"}).code == cli::exit_error, "error exit code");
  check(seen.size() >= 2, "random inputs hit a single verdict only");

  const std::string cmd = std::string(CDGA_PYTHON) + " " + CDGA_SOURCE_DIR + "/tests/validate_reports.py --schema " +
                          CDGA_SOURCE_DIR + "/docs/report.schema.json --cli " + CDGA_TOOL + " --samples " +
                          CDGA_SOURCE_DIR + "/samples > /dev/null";
  check(std::system(cmd.c_str()) == 0, "JSON schema validation");
  return std::to_string(fixtures) + " fixtures round-trip, 100 exit codes, schema valid";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"1 sec6 regression", criterion1},        {"2 twistor pipeline", criterion2},
      {"3 phi-soundness", criterion3},          {"4 tilde_mu_E quasi-isomorphism", criterion4},
      {"5 cup length", criterion5},             {"6 core invariants", criterion6},
      {"7 projective-like fiber, d = 3", criterion7}, {"8 CLI contract", criterion8}};
  int failed = 0;
  for (const auto& [name, body] : criteria) {
    try {
      const std::string note = body();
      std::cout << "PASS " << name << " (" << note << ")\n";
    } catch (const Failure& f) {
      ++failed;
      std::cout << "FAIL " << name << ": " << f.what << "\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "FAIL " << name << ": exception: " << e.what() << "\n";
    }
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}

#include "cdga/catalog.hpp"

#include "cdga/cohomology.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace cdga {

namespace {

int default_bound(const std::vector<Generator>& gens) {
  int top = 0;
  for (const auto& g : gens) top = std::max(top, g.degree);
  return 2 * top + 2;
}

struct Builder {
  Space space;
  explicit Builder(std::vector<Generator> gens) : space(make_space(std::move(gens))) {}
  Poly g(const std::string& name) const { return Poly::generator(space, space->index_of(name)); }
  Poly zero() const { return Poly(space); }
  Presentation build(const std::string& name, std::vector<Poly> diffs, int bound) const {
    return Presentation(name, space, std::move(diffs), bound);
  }
};

int parse_param(const std::string& full, const std::string& text, int lo) {
  int v = 0;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || v < lo) throw UnknownFixture(full);
  return v;
}

std::vector<Index> ones_every(int step, int last, int bound) {
  std::vector<Index> b(static_cast<std::size_t>(bound + 1), 0);
  for (int k = 0; k <= last; k += step) b[static_cast<std::size_t>(k)] = 1;
  return b;
}

Presentation sphere(int n) {
  if (n % 2 != 0) {
    Builder b({{"x", n}});
    return b.build("S" + std::to_string(n), {b.zero()}, default_bound({{"x", n}}));
  }
  Builder b({{"x", n}, {"y", 2 * n - 1}});
  return b.build("S" + std::to_string(n), {b.zero(), b.g("x").pow(2)}, 4 * n);
}

Presentation cpn(int m) {
  Builder b({{"x", 2}, {"y", 2 * m + 1}});
  return b.build("CP" + std::to_string(m), {b.zero(), b.g("x").pow(static_cast<unsigned>(m + 1))}, 4 * m + 4);
}

Presentation hpn(int n) {
  Builder b({{"u", 4}, {"w", 4 * n + 3}});
  return b.build("HP" + std::to_string(n), {b.zero(), b.g("u").pow(static_cast<unsigned>(n + 1))}, 4 * n + 4);
}

Fixture make_sphere(const std::string& name, int n) {
  Fixture f{name, "rational sphere S^" + std::to_string(n), sphere(n), std::nullopt, {}};
  std::vector<Index> betti(static_cast<std::size_t>(f.presentation.truncation() + 1), 0);
  betti[0] = 1;
  betti[static_cast<std::size_t>(n)] = 1;
  f.expected.betti = betti;
  f.expected.cup_length = 1;
  f.expected.verdict = VerdictKind::Formal;
  f.expected.source = {{"betti", Source::Immediate}, {"cup_length", Source::Immediate}, {"verdict", Source::Immediate}};
  return f;
}

Fixture make_cpn(const std::string& name, int m) {
  Fixture f{name, "complex projective space CP^" + std::to_string(m), cpn(m), std::nullopt, {}};
  f.expected.betti = ones_every(2, 2 * m, f.presentation.truncation());
  f.expected.cup_length = m;
  f.expected.verdict = VerdictKind::Formal;
  f.expected.source = {{"betti", Source::Immediate}, {"cup_length", Source::Immediate}, {"verdict", Source::Literature}};
  return f;
}

Fixture make_hpn(const std::string& name, int n) {
  Fixture f{name, "quaternionic projective space HP^" + std::to_string(n), hpn(n), std::nullopt, {}};
  f.expected.betti = ones_every(4, 4 * n, f.presentation.truncation());
  f.expected.cup_length = n;
  f.expected.verdict = VerdictKind::Formal;
  f.expected.source = {{"betti", Source::Computed}, {"cup_length", Source::Literature}, {"verdict", Source::Literature}};
  return f;
}

Fixture make_twistor(const std::string& name, int n) {
  Fixture f{name, "twistor fibration CP^" + std::to_string(2 * n + 1) + " -> HP^" + std::to_string(n), hpn(n),
            std::nullopt, {}};
  f.fibration = FibrationRecipe{Fiber::even_sphere(2), f.presentation.generator("u")};
  f.expected.betti = ones_every(4, 4 * n, f.presentation.truncation());
  f.expected.verdict = VerdictKind::Formal;
  f.expected.primitive = true;
  f.expected.reduced_betti = ones_every(2, 4 * n + 2, f.presentation.truncation());
  f.expected.total_verdict = VerdictKind::Formal;
  f.expected.total_model_degrees = std::vector<int>{2, 4 * n + 3};
  f.expected.total_model_free = false;
  f.expected.formal_map = true;
  f.expected.source = {{"betti", Source::Computed},         {"verdict", Source::Literature},
                       {"primitive", Source::Immediate},    {"reduced_betti", Source::Computed},
                       {"total_verdict", Source::Literature}, {"total_model_degrees", Source::Computed},
                       {"total_model_free", Source::Computed}, {"formal_map", Source::Literature}};
  return f;
}

Fixture make_heisenberg(const std::string& name, int n) {
  if (n % 2 == 0) throw UnknownFixture(name);
  Builder b({{"x", n}, {"y", n}, {"z", 2 * n - 1}});
  Fixture f{name, "Heisenberg-type algebra dz = xy in degree " + std::to_string(n),
            b.build("H" + std::to_string(n), {b.zero(), b.zero(), b.g("x") * b.g("y")}, std::max(20, 4 * n)), std::nullopt,
            {}};
  std::vector<Index> betti(static_cast<std::size_t>(f.presentation.truncation() + 1), 0);
  betti[0] = 1;
  betti[static_cast<std::size_t>(n)] += 2;
  betti[static_cast<std::size_t>(3 * n - 1)] += 2;
  betti[static_cast<std::size_t>(4 * n - 1)] += 1;
  f.expected.betti = betti;
  f.expected.verdict = VerdictKind::NonFormal;
  f.expected.witness_kind = WitnessKind::Massey;
  f.expected.witness_degree = 3 * n - 1;
  f.expected.zero_indeterminacy = true;
  f.expected.source = {{"betti", Source::Computed},
                       {"verdict", Source::Literature},
                       {"witness_kind", Source::Computed},
                       {"witness_degree", Source::Computed},
                       {"zero_indeterminacy", Source::Computed}};
  return f;
}

Fixture make_sec6_primitive(const std::string& name) {
  Builder b({{"y", 2}, {"b", 3}, {"c", 3}, {"u", 4}, {"n", 5}});
  Fixture f{name, "formal base with a primitive S^3 fibration whose total space is not formal",
            b.build("B", {b.zero(), b.zero(), b.zero(), b.zero(), b.g("b") * b.g("c") + b.g("u") * b.g("y")}, 20),
            std::nullopt, {}};
  f.fibration = FibrationRecipe{Fiber::odd_sphere(3), b.g("u")};
  f.expected.betti = {1, 0, 1, 2, 2, 2, 2, 4, 3, 2, 3, 4, 3, 2, 3, 4, 3, 2, 3, 4, 3};
  f.expected.verdict = VerdictKind::Formal;
  f.expected.primitive = true;
  f.expected.total_verdict = VerdictKind::NonFormal;
  f.expected.total_model_degrees = std::vector<int>{2, 3, 3, 5};
  f.expected.source = {{"betti", Source::Computed},
                       {"verdict", Source::Literature},
                       {"primitive", Source::Literature},
                       {"total_verdict", Source::Literature},
                       {"total_model_degrees", Source::Computed}};
  return f;
}

Fixture make_sec6_nonprimitive(const std::string& name) {
  Builder b({{"b", 3}, {"c", 4}, {"n", 6}});
  Fixture f{name, "non-formal base with an S^3 fibration whose total space is free",
            b.build("B", {b.zero(), b.zero(), b.g("b") * b.g("c")}, 20), std::nullopt, {}};
  f.fibration = FibrationRecipe{Fiber::odd_sphere(3), b.g("c")};
  f.expected.betti = {1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1};
  f.expected.verdict = VerdictKind::NonFormal;
  f.expected.witness = b.g("n") * b.g("b");
  f.expected.witness_degree = 9;
  f.expected.primitive = true;
  f.expected.total_verdict = VerdictKind::Formal;
  f.expected.total_model_degrees = std::vector<int>{3, 6};
  f.expected.total_model_free = true;
  f.expected.source = {{"betti", Source::Computed},
                       {"verdict", Source::Literature},
                       {"witness", Source::Literature},
                       {"witness_degree", Source::Computed},
                       {"primitive", Source::Immediate},
                       {"total_verdict", Source::Literature},
                       {"total_model_degrees", Source::Literature},
                       {"total_model_free", Source::Literature}};
  return f;
}

Fixture make_tower(const std::string& name, int dd) {
  const int ud = 2 * dd;
  Builder b({{"a", 3}, {"u", ud}, {"b", ud + 2}, {"c", 2 * ud + 2}});
  Fixture f{name, "projective-like fibration with non-trivial closure corrections",
            b.build("T" + std::to_string(dd),
                    {b.zero(), b.zero(), b.g("u") * b.g("a"), b.g("u").pow(2) * b.g("a")},
                    default_bound(b.space->generators())),
            std::nullopt, {}};
  f.fibration = FibrationRecipe{Fiber::projective(2, dd), b.g("u")};
  f.expected.primitive = true;
  f.expected.total_model_degrees = std::vector<int>{2, 3, ud + 2, 2 * ud + 2};
  f.expected.source = {{"primitive", Source::Immediate}, {"total_model_degrees", Source::Immediate}};
  return f;
}

Fixture make_s6_projective(const std::string& name) {
  Fixture f{name, "CP^2-like fiber (z^3) over S^6 twisted by the fundamental class", sphere(6), std::nullopt, {}};
  f.fibration = FibrationRecipe{Fiber::projective(2, 3), f.presentation.generator("x")};
  f.expected.betti = std::vector<Index>(25, 0);
  f.expected.betti[0] = f.expected.betti[6] = 1;
  f.expected.verdict = VerdictKind::Formal;
  f.expected.primitive = true;
  f.expected.reduced_betti = ones_every(2, 10, 24);
  f.expected.total_verdict = VerdictKind::Formal;
  f.expected.total_model_degrees = std::vector<int>{2, 11};
  f.expected.formal_map = true;
  f.expected.source = {{"betti", Source::Immediate},         {"verdict", Source::Immediate},
                       {"primitive", Source::Immediate},     {"reduced_betti", Source::Computed},
                       {"total_verdict", Source::Computed},  {"total_model_degrees", Source::Computed},
                       {"formal_map", Source::Computed}};
  return f;
}

Fixture make_hp1_projective(const std::string& name) {
  Fixture f{name, "CP^2-like fiber (z^3) over HP^1; no degree-6 class, so the fibration is trivial", hpn(1),
            std::nullopt, {}};
  f.fibration = FibrationRecipe{Fiber::projective(2, 3), f.presentation.zero()};
  f.expected.verdict = VerdictKind::Formal;
  f.expected.primitive = false;
  f.expected.reduced_betti = {1, 0, 1, 0, 2, 0, 1, 0, 1};
  f.expected.total_verdict = VerdictKind::Formal;
  f.expected.total_model_degrees = std::vector<int>{2, 4, 5, 7};
  f.expected.source = {{"verdict", Source::Literature},
                       {"primitive", Source::Immediate},
                       {"reduced_betti", Source::Computed},
                       {"total_verdict", Source::Literature},
                       {"total_model_degrees", Source::Immediate}};
  return f;
}

std::string join(const std::vector<Index>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string kind_name(WitnessKind k) { return k == WitnessKind::Massey ? "Massey" : "I(N)"; }

bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto& [m, c] = *b.terms().begin();
  const Rational ac = a.coefficient(m);
  if (ac == 0) return false;
  return a == (ac / c) * b;
}

std::vector<Index> betti_prefix(const Presentation& p, std::size_t len) {
  const int top = std::min(p.truncation(), static_cast<int>(len) - 1);
  return cohomology(p, top).betti_numbers();
}

Presentation fiber_presentation(const FibrationModel& fm) {
  std::vector<Generator> gens;
  std::vector<std::size_t> idx{fm.z};
  if (fm.z_prime) idx.push_back(*fm.z_prime);
  for (auto i : idx) gens.push_back(fm.total.generators()[i]);
  Space space = make_space(std::move(gens));
  std::vector<Poly> diffs;
  for (auto i : idx) diffs.push_back(transport(fm.total.differential(i), space));
  return Presentation("F", space, std::move(diffs), fm.total.truncation());
}

}  // namespace

std::string to_string(Source s) {
  switch (s) {
    case Source::Literature:
      return "literature";
    case Source::Computed:
      return "computed";
    case Source::Immediate:
      return "immediate";
  }
  return "";
}

Fixture fixture(const std::string& name) {
  const auto colon = name.find(':');
  const std::string family = name.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : name.substr(colon + 1);
  const bool has_param = colon != std::string::npos;
  if (family == "sphere" && has_param) return make_sphere(name, parse_param(name, param, 2));
  if (family == "cpn" && has_param) return make_cpn(name, parse_param(name, param, 1));
  if (family == "hpn" && has_param) return make_hpn(name, parse_param(name, param, 1));
  if (family == "twistor" && param.rfind("hpn:", 0) == 0) return make_twistor(name, parse_param(name, param.substr(4), 1));
  if (family == "heisenberg-like" && has_param) return make_heisenberg(name, parse_param(name, param, 3));
  if (family == "tower" && has_param) return make_tower(name, parse_param(name, param, 2));
  if (has_param) throw UnknownFixture(name);
  if (family == "sec6-primitive") return make_sec6_primitive(name);
  if (family == "sec6-nonprimitive") return make_sec6_nonprimitive(name);
  if (family == "s6-projective") return make_s6_projective(name);
  if (family == "hp1-projective") return make_hp1_projective(name);
  throw UnknownFixture(name);
}

std::vector<std::string> fixture_names() {
  return {"sphere:2",         "sphere:3",          "sphere:4",          "sphere:5",
          "cpn:1",            "cpn:2",             "cpn:3",             "hpn:1",
          "hpn:2",            "hpn:3",             "hpn:4",             "twistor:hpn:1",
          "twistor:hpn:2",    "twistor:hpn:3",     "heisenberg-like:3", "heisenberg-like:5",
          "sec6-primitive",   "sec6-nonprimitive", "tower:2",           "tower:3",
          "s6-projective",    "hp1-projective"};
}

FibrationModel fibration_model(const Fixture& f) {
  if (!f.fibration) throw std::invalid_argument("fixture '" + f.name + "' has no fibration");
  return build_fibration_model(f.presentation, f.fibration->fiber, f.fibration->u);
}

bool FixtureReport::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.ok; });
}

FixtureReport check_fixture(const Fixture& f) {
  FixtureReport rep;
  rep.name = f.name;
  const Expected& e = f.expected;
  const Presentation& P = f.presentation;
  auto line = [&](const std::string& field, const std::string& want, const std::string& got) {
    rep.lines.push_back(CheckLine{field, want, got, want == got});
  };

  if (!e.betti.empty()) line("betti", join(e.betti), join(betti_prefix(P, e.betti.size())));
  if (e.cup_length) line("cup_length", std::to_string(*e.cup_length), std::to_string(cup_length(cohomology(P))));

  std::optional<FormalityVerdict> base_verdict;
  auto verdict = [&]() -> const FormalityVerdict& {
    if (!base_verdict) base_verdict = dgms_check(P);
    return *base_verdict;
  };
  if (e.verdict) line("verdict", to_string(*e.verdict), to_string(verdict().kind));
  const Witness* w = nullptr;
  if (e.witness || e.witness_kind || e.witness_degree || e.zero_indeterminacy) {
    if (verdict().witness) w = &*verdict().witness;
  }
  if (e.witness_kind) line("witness_kind", kind_name(*e.witness_kind), w ? kind_name(w->kind) : "none");
  if (e.witness_degree) line("witness_degree", std::to_string(*e.witness_degree), w ? std::to_string(w->degree) : "none");
  if (e.zero_indeterminacy)
    line("zero_indeterminacy", *e.zero_indeterminacy ? "true" : "false",
         w ? (w->indeterminacy_dim == 0 ? "true" : "false") : "none");
  if (e.witness) {
    const bool ok = w && proportional(transport(w->element, P.space()), *e.witness);
    rep.lines.push_back(CheckLine{"witness", e.witness->to_string(), w ? w->element.to_string() : "none", ok});
  }
  if (base_verdict) rep.verdict = base_verdict;

  if (!f.fibration) return rep;
  const FibrationModel fm = fibration_model(f);
  if (e.primitive) line("primitive", *e.primitive ? "true" : "false", fm.primitive ? "true" : "false");

  std::optional<FormalityVerdict> total_verdict;
  Presentation total = fm.total;
  if (fm.u.is_zero()) {
    const Presentation F = fiber_presentation(fm);
    total_verdict = product_formality(verdict(), P, dgms_check(F), F);
  } else if (fm.primitive && !fm.fiber.odd()) {
    total = theoremC_reduce(fm).reduced;
  }
  if (!is_minimal(total)) total = minimal_model(total, total.truncation()).model;
  rep.total_model = total;

  if (!e.reduced_betti.empty())
    line("reduced_betti", join(e.reduced_betti), join(betti_prefix(total, e.reduced_betti.size())));
  if (e.total_verdict) {
    if (!total_verdict) total_verdict = dgms_check(total);
    line("total_verdict", to_string(*e.total_verdict), to_string(total_verdict->kind));
  }
  if (e.total_model_degrees) {
    std::vector<int> degs;
    for (const auto& g : total.generators().generators()) degs.push_back(g.degree);
    std::sort(degs.begin(), degs.end());
    line("total_model_degrees", join(*e.total_model_degrees), join(degs));
  }
  if (e.total_model_free) {
    const bool free = std::all_of(total.differentials().begin(), total.differentials().end(),
                                  [](const Poly& p) { return p.is_zero(); });
    line("total_model_free", *e.total_model_free ? "true" : "false", free ? "true" : "false");
  }
  if (e.formal_map) {
    std::string got = "no base certificate";
    if (verdict().certificate) {
      const AlgebraMap mu_e = tilde_mu_E(fm, *verdict().certificate);
      got = check_formal_map(fm, base_inclusion(fm), *verdict().certificate, mu_e).passed() ? "true" : "false";
    }
    line("formal_map", *e.formal_map ? "true" : "false", got);
  }
  return rep;
}

}  // namespace cdga

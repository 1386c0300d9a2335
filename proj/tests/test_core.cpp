#include "catch_amalgamated.hpp"

#include "cdga/graded_algebra.hpp"
#include "gen.hpp"
#include "oracle.hpp"

using namespace cdga;

namespace {

Space random_space(gen::Rng& r) {
  std::vector<Generator> g;
  const int n = gen::uniform(r, 1, 5);
  for (int i = 0; i < n; ++i) g.push_back({"x" + std::to_string(i), gen::uniform(r, 1, 5)});
  return make_space(g);
}

int sign_of(int da, int db) { return (da * db) % 2 ? -1 : 1; }

}  // namespace

TEST_CASE("canonical text of polynomials") {
  auto s = make_space({{"y", 2}, {"b", 3}, {"c", 3}, {"u", 4}});
  auto g = [&](const char* n) { return Poly::generator(s, s->index_of(n)); };
  REQUIRE((g("b") * g("c") + g("u") * g("y")).to_string() == "y*u + b*c");
  REQUIRE((Rational(-1) / 2 * g("y").pow(2)).to_string() == "-1/2*y^2");
  REQUIRE(Poly(s).to_string() == "0");
  REQUIRE((g("b") * g("b")).is_zero());
  REQUIRE(g("c") * g("b") == -(g("b") * g("c")));
  REQUIRE(g("y") * g("b") == g("b") * g("y"));
}

TEST_CASE("a d-squared violation is rejected with the offending generator") {
  auto s = make_space({{"a", 2}, {"b", 3}, {"c", 4}});
  auto g = [&](std::size_t i) { return Poly::generator(s, i); };
  try {
    Presentation p("bad", s, {Poly(s), g(0).pow(2), g(0) * g(1)}, 10);
    FAIL("accepted");
  } catch (const InvalidPresentation& e) {
    REQUIRE(e.violations().size() == 1);
    REQUIRE(e.violations()[0].generator == 2);
    REQUIRE(e.violations()[0].value == g(0).pow(3));
  }
  REQUIRE(check_d_squared(s, {Poly(s), g(0).pow(2), g(0) * g(1)}).size() == 1);
}

TEST_CASE("differentials of the wrong degree are rejected") {
  auto s = make_space({{"a", 2}, {"b", 3}});
  REQUIRE_THROWS_AS(Presentation("bad", s, {Poly(s), Poly::generator(s, 0)}, 6), InvalidPresentation);
}

TEST_CASE("monomial bases and coordinates") {
  auto s = make_space({{"x", 2}, {"y", 3}});
  Presentation p("S2", s, {Poly(s), Poly::generator(s, 0).pow(2)}, 8);
  REQUIRE(basis_of_degree(p, 5).size() == 1);
  REQUIRE(basis_of_degree(p, 6).size() == 1);
  REQUIRE(basis_of_degree(p, 1).empty());
  FreeAlgebra a(p, 9);
  const Poly q = Rational(3) * p.generator("x").pow(2) * p.generator("y");
  REQUIRE(a.to_poly(7, a.to_vector(q, 7)) == q);
  REQUIRE_THROWS(a.to_vector(q, 6));
}

TEST_CASE("morphisms compose and transport by name") {
  auto s = make_space({{"x", 2}, {"y", 3}});
  Presentation p("S2", s, {Poly(s), Poly::generator(s, 0).pow(2)}, 8);
  Morphism scale(p, p, {Rational(2) * p.generator("x"), Rational(4) * p.generator("y")});
  REQUIRE(scale.is_chain_map());
  const Morphism twice = compose(scale, scale);
  REQUIRE(twice.image(1) == Rational(16) * p.generator("y"));
  Morphism bad(p, p, {Rational(2) * p.generator("x"), p.generator("y")});
  REQUIRE(bad.first_chain_violation() == std::optional<std::size_t>(1));
  auto t = make_space({{"y", 3}, {"x", 2}, {"w", 5}});
  const Poly moved = transport(p.generator("x") * p.generator("y"), t);
  REQUIRE(moved.to_string() == "y*x");
  REQUIRE_THROWS_AS(transport(Poly::generator(t, 2), s), std::out_of_range);
}

TEST_CASE("property: Koszul sign law", "[property]") {
  gen::Rng r(21);
  int cases = 0;
  while (cases < 1000) {
    const Space s = random_space(r);
    const int da = gen::uniform(r, 0, 8), db = gen::uniform(r, 0, 8);
    const Poly a = gen::homogeneous(r, s, da), b = gen::homogeneous(r, s, db);
    if (a.is_zero() || b.is_zero()) continue;
    ++cases;
    REQUIRE(a * b == Rational(sign_of(da, db)) * (b * a));
  }
}

TEST_CASE("property: associativity and distributivity", "[property]") {
  gen::Rng r(22);
  for (int t = 0; t < 1000; ++t) {
    const Space s = random_space(r);
    const Poly a = gen::mixed(r, s, 6), b = gen::mixed(r, s, 6), c = gen::mixed(r, s, 6);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("property: monomial products agree with the closed-form sign of the oracle", "[property]") {
  gen::Rng r(23);
  int cases = 0;
  while (cases < 1000) {
    const Space s = random_space(r);
    oracle::Algebra o;
    for (const auto& g : s->generators()) o.deg.push_back(g.degree);
    const Poly a = gen::homogeneous(r, s, gen::uniform(r, 0, 8), 1);
    const Poly b = gen::homogeneous(r, s, gen::uniform(r, 0, 8), 1);
    if (a.is_zero() || b.is_zero()) continue;
    ++cases;
    const auto& [ma, ca] = *a.terms().begin();
    const auto& [mb, cb] = *b.terms().begin();
    oracle::Exps xa(s->size(), 0), xb(s->size(), 0);
    for (const auto& f : ma.factors()) xa[f.generator] = static_cast<int>(f.exponent);
    for (const auto& f : mb.factors()) xb[f.generator] = static_cast<int>(f.exponent);
    const auto [sign, z] = oracle::times(o, xa, xb);
    const Normalized n = multiply(ma, mb, *s);
    REQUIRE(n.sign == sign);
    if (sign == 0) continue;
    for (const auto& f : n.monomial.factors()) REQUIRE(z[f.generator] == static_cast<int>(f.exponent));
  }
}

TEST_CASE("property: Leibniz rule", "[property]") {
  gen::Rng r(24);
  int cases = 0;
  while (cases < 1000) {
    const Presentation p = gen::presentation(r, gen::uniform(r, 2, 5), 6, 12, gen::uniform(r, 0, 1));
    for (int t = 0; t < 10; ++t) {
      const int da = gen::uniform(r, 0, 8);
      const Poly a = gen::homogeneous(r, p.space(), da), b = gen::mixed(r, p.space(), 8);
      if (a.is_zero() || b.is_zero()) continue;
      ++cases;
      REQUIRE(d(a * b, p) == d(a, p) * b + Rational(da % 2 ? -1 : 1) * (a * d(b, p)));
    }
  }
}

TEST_CASE("property: d squares to zero", "[property]") {
  gen::Rng r(25);
  int cases = 0;
  while (cases < 1000) {
    const Presentation p = gen::presentation(r, gen::uniform(r, 2, 5), 6, 12, gen::uniform(r, 0, 1));
    REQUIRE(check_d_squared(p).empty());
    for (int t = 0; t < 10; ++t, ++cases) {
      const Poly a = gen::mixed(r, p.space(), 10);
      REQUIRE(d(d(a, p), p).is_zero());
    }
  }
}

TEST_CASE("property: the differential matches the oracle's Leibniz expansion", "[property]") {
  gen::Rng r(26);
  int cases = 0;
  while (cases < 1000) {
    const Presentation p = gen::presentation(r, gen::uniform(r, 2, 4), 6, 12, gen::uniform(r, 0, 1));
    const oracle::Algebra o = oracle::from_presentation(p);
    for (int t = 0; t < 10; ++t) {
      const Poly a = gen::homogeneous(r, p.space(), gen::uniform(r, 0, 9), 1);
      if (a.is_zero()) continue;
      ++cases;
      const auto& [m, c] = *a.terms().begin();
      oracle::Exps x(p.size(), 0);
      for (const auto& f : m.factors()) x[f.generator] = static_cast<int>(f.exponent);
      const oracle::Elem want = oracle::d_monomial(o, x);
      const Poly got = d(Poly::monomial(p.space(), m), p);
      REQUIRE(got.size() == want.size());
      for (const auto& [mm, cc] : got.terms()) {
        oracle::Exps y(p.size(), 0);
        for (const auto& f : mm.factors()) y[f.generator] = static_cast<int>(f.exponent);
        REQUIRE(want.count(y) == 1);
        REQUIRE(oracle::Q(cdga::to_string(cc)) == want.at(y));
      }
    }
  }
}

#include "cdga/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdga {

GeneratorList::GeneratorList(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Generator& g = generators_[i];
    if (g.name.empty()) throw std::invalid_argument("generator with empty name");
    if (g.degree < 1)
      throw std::invalid_argument("generator '" + g.name + "' must have degree >= 1");
    if (!by_name_.emplace(g.name, i).second)
      throw std::invalid_argument("duplicate generator name '" + g.name + "'");
  }
}

std::optional<std::size_t> GeneratorList::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t GeneratorList::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw std::out_of_range("unknown generator '" + std::string(name) + "'");
  return *i;
}

int GeneratorList::max_degree() const {
  int m = 0;
  for (const auto& g : generators_) m = std::max(m, g.degree);
  return m;
}

Space make_space(std::vector<Generator> generators) {
  return std::make_shared<const GeneratorList>(std::move(generators));
}

bool same_space(const Space& a, const Space& b) {
  return a == b || (a && b && *a == *b);
}

int Monomial::degree(const GeneratorList& gens) const {
  int d = 0;
  for (const auto& f : factors_) d += gens[f.generator].degree * static_cast<int>(f.exponent);
  return d;
}

unsigned Monomial::word_length() const {
  unsigned w = 0;
  for (const auto& f : factors_) w += f.exponent;
  return w;
}

unsigned Monomial::exponent_of(std::size_t generator) const {
  for (const auto& f : factors_)
    if (f.generator == generator) return f.exponent;
  return 0;
}

Monomial Monomial::without(std::size_t generator) const {
  std::vector<Factor> out;
  for (const auto& f : factors_)
    if (f.generator != generator) out.push_back(f);
  return Monomial(std::move(out));
}

Normalized normalize(std::vector<Factor> factors, const GeneratorList& gens) {
  auto odd = [&](const Factor& f) { return gens[f.generator].odd() && f.exponent % 2 == 1; };
  for (const auto& f : factors) {
    if (f.exponent == 0) throw std::invalid_argument("normalize: zero exponent");
    if (f.generator >= gens.size()) throw std::out_of_range("normalize: generator index");
    if (gens[f.generator].odd() && f.exponent > 1) return {0, Monomial()};
  }
  // Insertion sort; each swap of two odd factors flips the sign.
  int sign = 1;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    for (std::size_t j = i; j > 0 && factors[j].generator < factors[j - 1].generator; --j) {
      if (odd(factors[j]) && odd(factors[j - 1])) sign = -sign;
      std::swap(factors[j], factors[j - 1]);
    }
  }
  std::vector<Factor> merged;
  for (const auto& f : factors) {
    if (!merged.empty() && merged.back().generator == f.generator) {
      if (gens[f.generator].odd()) return {0, Monomial()};
      merged.back().exponent += f.exponent;
    } else {
      merged.push_back(f);
    }
  }
  return {sign, Monomial(std::move(merged))};
}

Normalized multiply(const Monomial& a, const Monomial& b, const GeneratorList& gens) {
  // Merge of two sorted lists: moving a factor of b left past the remaining
  // factors of a costs (-1)^{|f| * |rest of a|}.
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::vector<int> suffix_parity(fa.size() + 1, 0);
  for (std::size_t i = fa.size(); i-- > 0;) {
    const int p = (gens[fa[i].generator].degree * static_cast<int>(fa[i].exponent)) & 1;
    suffix_parity[i] = suffix_parity[i + 1] ^ p;
  }
  std::vector<Factor> out;
  out.reserve(fa.size() + fb.size());
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].generator < fb[j].generator)) {
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].generator < fa[i].generator) {
      const int p = (gens[fb[j].generator].degree * static_cast<int>(fb[j].exponent)) & 1;
      if (p && suffix_parity[i]) sign = -sign;
      out.push_back(fb[j++]);
    } else {
      if (gens[fa[i].generator].odd()) return {0, Monomial()};
      // Even generator: commutes with everything.
      out.push_back(Factor{fa[i].generator, fa[i].exponent + fb[j].exponent});
      ++i;
      ++j;
    }
  }
  return {sign, Monomial(std::move(out))};
}

Poly Poly::constant(Space space, const Rational& c) {
  Poly p(std::move(space));
  p.add_term(Monomial(), c);
  return p;
}

Poly Poly::generator(Space space, std::size_t index, const Rational& c) {
  if (index >= space->size()) throw std::out_of_range("Poly::generator: index");
  Poly p(std::move(space));
  p.add_term(Monomial::generator(index), c);
  return p;
}

Poly Poly::monomial(Space space, Monomial m, const Rational& c) {
  Poly p(std::move(space));
  p.add_term(m, c);
  return p;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_homogeneous() const {
  return is_zero() || degree().has_value();
}

std::optional<int> Poly::degree() const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    const int md = m.degree(*space_);
    if (d && *d != md) return std::nullopt;
    d = md;
  }
  return d;
}

bool Poly::is_decomposable() const {
  for (const auto& [m, c] : terms_)
    if (m.word_length() < 2) return false;
  return true;
}

Poly Poly::linear_part() const {
  Poly out(space_);
  for (const auto& [m, c] : terms_)
    if (m.word_length() == 1) out.terms_.emplace(m, c);
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly acc = constant(space_, 1);
  for (unsigned i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

void Poly::require_same_space(const Poly& other) const {
  if (!same_space(space_, other.space_))
    throw std::invalid_argument("polynomials live over different generator lists");
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_space(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_space(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same_space(b);
  Poly out(a.space_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Normalized n = multiply(ma, mb, *a.space_);
      if (n.sign == 0) continue;
      out.add_term(n.monomial, n.sign > 0 ? ca * cb : -(ca * cb));
    }
  }
  return out;
}

bool Poly::operator==(const Poly& other) const {
  return same_space(space_, other.space_) && terms_ == other.terms_;
}

std::string to_string(const Monomial& m, const GeneratorList& gens) {
  if (m.is_unit()) return "1";
  std::string s;
  for (const auto& f : m.factors()) {
    if (!s.empty()) s += '*';
    s += gens[f.generator].name;
    if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
  }
  return s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_unit()) {
      s += cdga::to_string(mag);
    } else {
      if (mag != 1) s += cdga::to_string(mag) + "*";
      s += cdga::to_string(m, *space_);
    }
  }
  return s;
}

}  // namespace cdga

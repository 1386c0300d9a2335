#include "cdga/presentation.hpp"

#include <algorithm>
#include <functional>

namespace cdga {

namespace {

Poly monomial_poly(const Space& space, std::vector<Factor> factors) {
  return Poly::monomial(space, Monomial(std::move(factors)));
}

}  // namespace

Presentation::Presentation(std::string name, Space space, std::vector<Poly> differential, int truncation) {
  if (!space) throw InvalidPresentation("presentation without generator list");
  if (differential.size() != space->size())
    throw InvalidPresentation("presentation '" + name + "': differential table has " +
                              std::to_string(differential.size()) + " entries for " +
                              std::to_string(space->size()) + " generators");
  if (truncation < 1) throw InvalidPresentation("presentation '" + name + "': truncation degree must be positive");
  for (std::size_t i = 0; i < differential.size(); ++i) {
    const Generator& g = (*space)[i];
    Poly& dg = differential[i];
    if (!same_space(dg.space(), space))
      throw InvalidPresentation("d(" + g.name + ") is not written in the generators of '" + name + "'");
    dg = transport(dg, space);
    if (dg.is_zero()) continue;
    auto deg = dg.degree();
    if (!deg || *deg != g.degree + 1)
      throw InvalidPresentation("d(" + g.name + ") = " + dg.to_string() + " is not homogeneous of degree " +
                                std::to_string(g.degree + 1));
  }
  auto violations = check_d_squared(space, differential);
  if (!violations.empty()) {
    std::string msg = "presentation '" + name + "': d^2 != 0 on";
    for (const auto& v : violations) msg += " " + (*space)[v.generator].name;
    throw InvalidPresentation(msg, std::move(violations));
  }
  data_ = std::make_shared<const Data>(Data{std::move(name), std::move(space), std::move(differential), truncation});
}

Poly Presentation::generator(std::string_view name) const {
  return generator(generators().index_of(name));
}

bool Presentation::simply_connected() const {
  for (const auto& g : generators().generators())
    if (g.degree < 2) return false;
  return true;
}

Presentation Presentation::with_truncation(int truncation) const {
  if (truncation < 1) throw InvalidPresentation("truncation degree must be positive");
  auto data = std::make_shared<Data>(*data_);
  data->truncation = truncation;
  return Presentation(std::shared_ptr<const Data>(std::move(data)));
}

Presentation Presentation::with_name(std::string name) const {
  auto data = std::make_shared<Data>(*data_);
  data->name = std::move(name);
  return Presentation(std::shared_ptr<const Data>(std::move(data)));
}

bool Presentation::operator==(const Presentation& other) const {
  if (!(generators() == other.generators())) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (!(differential(i) == other.differential(i))) return false;
  return true;
}

Poly apply_derivation(const Poly& p, const std::vector<Poly>& differential) {
  const Space& space = p.space();
  const GeneratorList& gens = *space;
  Poly out(space);
  for (const auto& [m, c] : p.terms()) {
    const auto& fs = m.factors();
    int prefix_degree = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Factor f = fs[i];
      const Poly& dg = differential[f.generator];
      if (!dg.is_zero()) {
        std::vector<Factor> prefix(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(i));
        std::vector<Factor> suffix(fs.begin() + static_cast<std::ptrdiff_t>(i) + 1, fs.end());
        if (f.exponent > 1) prefix.push_back(Factor{f.generator, f.exponent - 1});
        // g^{e-1} is even, so it may sit in front of d(g) without a sign.
        Poly term = monomial_poly(space, std::move(prefix)) * dg * monomial_poly(space, std::move(suffix));
        Rational coeff = c * Rational(f.exponent);
        if (prefix_degree % 2 != 0) coeff = -coeff;
        out += coeff * term;
      }
      prefix_degree += gens[f.generator].degree * static_cast<int>(f.exponent);
    }
  }
  return out;
}

Poly d(const Poly& p, const Presentation& pres) {
  if (!same_space(p.space(), pres.space()))
    throw std::invalid_argument("d: polynomial does not live in presentation '" + pres.name() + "'");
  return apply_derivation(transport(p, pres.space()), pres.differentials());
}

std::vector<DSquaredViolation> check_d_squared(const Space& space, const std::vector<Poly>& differential) {
  std::vector<DSquaredViolation> out;
  for (std::size_t i = 0; i < space->size(); ++i) {
    Poly dd = apply_derivation(differential[i], differential);
    if (!dd.is_zero()) out.push_back(DSquaredViolation{i, std::move(dd)});
  }
  return out;
}

std::vector<DSquaredViolation> check_d_squared(const Presentation& pres) {
  return check_d_squared(pres.space(), pres.differentials());
}

std::vector<Monomial> basis_of_degree(const GeneratorList& gens, int k) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  std::vector<Factor> current;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (i == gens.size()) return;
    const Generator& g = gens[i];
    const int max_exp = g.odd() ? 1 : remaining / g.degree;
    rec(i + 1, remaining);
    for (int e = 1; e <= max_exp; ++e) {
      current.push_back(Factor{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(e)});
      rec(i + 1, remaining - e * g.degree);
      current.pop_back();
    }
  };
  rec(0, k);
  std::sort(out.begin(), out.end());
  return out;
}

Morphism::Morphism(Presentation source, Presentation target, std::vector<Poly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.size())
    throw std::invalid_argument("morphism: expected " + std::to_string(source_.size()) + " generator images");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const Generator& g = source_.generators()[i];
    images_[i] = transport(images_[i], target_.space());
    const Poly& img = images_[i];
    if (img.is_zero()) continue;
    auto deg = img.degree();
    if (!deg || *deg != g.degree)
      throw std::invalid_argument("morphism " + source_.name() + " -> " + target_.name() + ": image of " + g.name +
                                  " is not homogeneous of degree " + std::to_string(g.degree));
  }
}

Morphism Morphism::identity(const Presentation& pres) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < pres.size(); ++i) images.push_back(pres.generator(i));
  return Morphism(pres, pres, std::move(images));
}

Poly Morphism::apply(const Poly& p) const {
  if (!same_space(p.space(), source_.space()))
    throw std::invalid_argument("morphism applied to a polynomial outside its source");
  return substitute(transport(p, source_.space()), images_, target_.space());
}

Poly substitute(const Poly& p, const std::vector<Poly>& images, const Space& target) {
  Poly out(target);
  for (const auto& [m, c] : p.terms()) {
    Poly acc = Poly::constant(target, 1);
    for (const auto& f : m.factors()) acc = acc * images[f.generator].pow(f.exponent);
    out += c * acc;
  }
  return out;
}

std::optional<std::size_t> Morphism::first_chain_violation() const {
  for (std::size_t i = 0; i < source_.size(); ++i) {
    if (!(d(images_[i], target_) == apply(source_.differential(i)))) return i;
  }
  return std::nullopt;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target().generators() == g.source().generators()))
    throw std::invalid_argument("compose: target of the first map is not the source of the second");
  std::vector<Poly> images;
  for (const auto& img : f.images()) images.push_back(g.apply(transport(img, g.source().space())));
  return Morphism(f.source(), g.target(), std::move(images));
}

Poly transport(const Poly& p, const Space& target) {
  if (p.space() == target) return p;
  const GeneratorList& from = *p.space();
  Poly out(target);
  for (const auto& [m, c] : p.terms()) {
    std::vector<Factor> fs;
    for (const auto& f : m.factors()) {
      const std::size_t j = target->index_of(from[f.generator].name);
      if ((*target)[j].degree != from[f.generator].degree)
        throw std::invalid_argument("transport: generator '" + from[f.generator].name + "' changes degree");
      fs.push_back(Factor{static_cast<std::uint32_t>(j), f.exponent});
    }
    Normalized n = normalize(std::move(fs), *target);
    if (n.sign != 0) out.add_term(n.monomial, n.sign > 0 ? c : Rational(-c));
  }
  return out;
}

}  // namespace cdga

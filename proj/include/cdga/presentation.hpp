#ifndef CDGA_PRESENTATION_HPP
#define CDGA_PRESENTATION_HPP

#include "cdga/algebra.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdga {

struct DSquaredViolation {
  std::size_t generator = 0;
  Poly value;  // d(d(generator)), nonzero
};

class InvalidPresentation : public std::invalid_argument {
 public:
  InvalidPresentation(const std::string& what, std::vector<DSquaredViolation> violations = {})
      : std::invalid_argument(what), violations_(std::move(violations)) {}
  const std::vector<DSquaredViolation>& violations() const { return violations_; }

 private:
  std::vector<DSquaredViolation> violations_;
};

/// A free CDGA (Lambda V, d) given by generators, the differential of each
/// generator, and the truncation degree N up to which every computation on it
/// is certified. Immutable; validated on construction (d(g) homogeneous of
/// degree |g|+1 and d(d(g)) = 0 for every generator).
class Presentation {
 public:
  Presentation(std::string name, Space space, std::vector<Poly> differential, int truncation);

  const std::string& name() const { return data_->name; }
  const Space& space() const { return data_->space; }
  const GeneratorList& generators() const { return *data_->space; }
  std::size_t size() const { return data_->space->size(); }
  const Poly& differential(std::size_t generator) const { return data_->differential[generator]; }
  const std::vector<Poly>& differentials() const { return data_->differential; }
  int truncation() const { return data_->truncation; }

  Poly generator(std::size_t index) const { return Poly::generator(space(), index); }
  Poly generator(std::string_view name) const;
  Poly zero() const { return Poly(space()); }
  Poly one() const { return Poly::constant(space(), 1); }

  /// All generators have degree >= 2.
  bool simply_connected() const;

  Presentation with_truncation(int truncation) const;
  Presentation with_name(std::string name) const;

  /// Same generators and differentials (names, degrees, polynomials).
  bool operator==(const Presentation& other) const;

 private:
  struct Data {
    std::string name;
    Space space;
    std::vector<Poly> differential;
    int truncation = 0;
  };
  explicit Presentation(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// Extend the differential to p as a graded derivation:
/// d(ab) = d(a) b + (-1)^{|a|} a d(b).
Poly d(const Poly& p, const Presentation& pres);

/// Leibniz extension for a raw differential table, before it is validated.
Poly apply_derivation(const Poly& p, const std::vector<Poly>& differential);

/// Generators g with d(d(g)) != 0 for a raw generator/differential table.
std::vector<DSquaredViolation> check_d_squared(const Space& space, const std::vector<Poly>& differential);
std::vector<DSquaredViolation> check_d_squared(const Presentation& pres);

/// Canonical monomials of total degree k in monomial order. Degree-1
/// generators would make this infinite only through odd squares, which vanish,
/// so the enumeration is always finite.
std::vector<Monomial> basis_of_degree(const GeneratorList& gens, int k);
inline std::vector<Monomial> basis_of_degree(const Presentation& pres, int k) {
  return basis_of_degree(pres.generators(), k);
}

/// Every monomial of p has word length >= 2.
inline bool is_decomposable(const Poly& p, const Presentation&) { return p.is_decomposable(); }

/// Degree-preserving algebra map between free presentations, given on
/// generators and extended multiplicatively.
class Morphism {
 public:
  Morphism(Presentation source, Presentation target, std::vector<Poly> images);

  static Morphism identity(const Presentation& pres);

  const Presentation& source() const { return source_; }
  const Presentation& target() const { return target_; }
  const Poly& image(std::size_t generator) const { return images_[generator]; }
  const std::vector<Poly>& images() const { return images_; }

  Poly apply(const Poly& p) const;
  Poly operator()(const Poly& p) const { return apply(p); }

  /// First source generator g with d(f(g)) != f(d(g)), if any.
  std::optional<std::size_t> first_chain_violation() const;
  bool is_chain_map() const { return !first_chain_violation().has_value(); }

 private:
  Presentation source_;
  Presentation target_;
  std::vector<Poly> images_;
};

/// g after f.
Morphism compose(const Morphism& g, const Morphism& f);

/// The algebra map sending generator i to images[i], applied to p. Images
/// must live in `target`.
Poly substitute(const Poly& p, const std::vector<Poly>& images, const Space& target);

/// Re-express a polynomial over another generator list by generator name.
/// Throws std::out_of_range when a generator is missing in the target.
Poly transport(const Poly& p, const Space& target);

}  // namespace cdga

#endif  // CDGA_PRESENTATION_HPP

#ifndef CDGA_ALGEBRA_HPP
#define CDGA_ALGEBRA_HPP

// Free graded-commutative algebras: polynomial on even generators, exterior
// on odd ones. Elements are exact rational combinations of canonical
// monomials.

#include "cdga/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cdga {

struct Generator {
  std::string name;
  int degree = 0;

  bool odd() const { return degree % 2 != 0; }
  bool operator==(const Generator&) const = default;
};

/// Ordered, immutable list of generators. The position of a generator is its
/// index; monomial order follows it.
class GeneratorList {
 public:
  explicit GeneratorList(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Generator>& generators() const { return generators_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws std::out_of_range for unknown names.
  std::size_t index_of(std::string_view name) const;
  int max_degree() const;

  bool operator==(const GeneratorList& other) const { return generators_ == other.generators_; }

 private:
  std::vector<Generator> generators_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

using Space = std::shared_ptr<const GeneratorList>;

Space make_space(std::vector<Generator> generators);
bool same_space(const Space& a, const Space& b);

struct Factor {
  std::uint32_t generator = 0;
  std::uint32_t exponent = 0;

  auto operator<=>(const Factor&) const = default;
};

/// A canonical monomial: factors sorted by generator index, exponents >= 1,
/// odd generators with exponent 1. Ordered lexicographically on the factor
/// list, which is the basis order used everywhere.
class Monomial {
 public:
  Monomial() = default;
  /// Factors must already be canonical; use normalize() otherwise.
  explicit Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {}

  static Monomial generator(std::size_t index) {
    return Monomial({Factor{static_cast<std::uint32_t>(index), 1}});
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  int degree(const GeneratorList& gens) const;
  unsigned word_length() const;
  unsigned exponent_of(std::size_t generator) const;
  /// The monomial with every factor of `generator` removed.
  Monomial without(std::size_t generator) const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

struct Normalized {
  int sign = 1;  // 0 when an odd generator repeats
  Monomial monomial;
};

/// Sort an arbitrary product of generator powers into canonical form,
/// accumulating the Koszul sign of every transposition of odd factors.
Normalized normalize(std::vector<Factor> factors, const GeneratorList& gens);

/// a * b in canonical form, with sign.
Normalized multiply(const Monomial& a, const Monomial& b, const GeneratorList& gens);

/// Exact rational combination of canonical monomials over a fixed generator
/// list. Zero coefficients are never stored.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit Poly(Space space) : space_(std::move(space)) {}

  static Poly constant(Space space, const Rational& c);
  static Poly generator(Space space, std::size_t index, const Rational& c = Rational(1));
  static Poly monomial(Space space, Monomial m, const Rational& c = Rational(1));

  const Space& space() const { return space_; }
  const GeneratorList& generators() const { return *space_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Rational& c);

  bool is_homogeneous() const;
  /// Degree of a nonzero homogeneous polynomial; nullopt for zero or mixed degree.
  std::optional<int> degree() const;
  /// Every term has word length >= 2.
  bool is_decomposable() const;
  /// Sum of the word-length-one terms.
  Poly linear_part() const;

  Poly pow(unsigned e) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, Poly p) { return p *= c; }
  friend Poly operator*(Poly p, const Rational& c) { return p *= c; }

  bool operator==(const Poly& other) const;

  /// Canonical text, e.g. "b*c + u*y", "-1/2*x^2", "0".
  std::string to_string() const;

 private:
  void require_same_space(const Poly& other) const;

  Space space_;
  Terms terms_;
};

/// Format a monomial as "x*y^2"; "1" for the unit.
std::string to_string(const Monomial& m, const GeneratorList& gens);

/// Graded-commutative product, Koszul signs via normalize.
inline Poly mul(const Poly& p, const Poly& q) { return p * q; }

}  // namespace cdga

#endif  // CDGA_ALGEBRA_HPP

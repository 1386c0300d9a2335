#ifndef CDGA_GRADED_ALGEBRA_HPP
#define CDGA_GRADED_ALGEBRA_HPP

// Finite-type connected CDGAs seen degree by degree through an explicit
// basis: what the cohomology, model and formality code actually consume.

#include "cdga/presentation.hpp"
#include "cdga/qlinalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cdga {

class GradedAlgebra {
 public:
  virtual ~GradedAlgebra() = default;

  /// Bases are available for degrees 0..top_degree().
  virtual int top_degree() const = 0;
  virtual Index dim(int degree) const = 0;
  /// d: A^k -> A^{k+1} as a dim(k+1) x dim(k) matrix; requires k < top_degree().
  virtual const QMatrix& differential(int degree) const = 0;
  virtual QVector multiply(int da, const QVector& a, int db, const QVector& b) const = 0;
  virtual std::string format(int degree, const QVector& v) const = 0;
  /// d = 0 everywhere; then differential() may be unavailable at the top degree.
  virtual bool zero_differential() const { return false; }

  /// The unit in degree 0 (which is one-dimensional).
  QVector unit() const {
    QVector e = QVector::Zero(1);
    e(0) = 1;
    return e;
  }
};

/// A presentation with its monomial bases and differential matrices
/// materialized for degrees 0..top.
class FreeAlgebra final : public GradedAlgebra {
 public:
  FreeAlgebra(Presentation pres, int top_degree);

  const Presentation& presentation() const { return pres_; }
  const std::vector<Monomial>& basis(int degree) const;

  int top_degree() const override { return top_; }
  Index dim(int degree) const override;
  const QMatrix& differential(int degree) const override;
  QVector multiply(int da, const QVector& a, int db, const QVector& b) const override;
  std::string format(int degree, const QVector& v) const override;

  /// Coordinates of a polynomial that is zero or homogeneous of `degree`.
  QVector to_vector(const Poly& p, int degree) const;
  Poly to_poly(int degree, const QVector& v) const;

 private:
  Presentation pres_;
  int top_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::map<Monomial, Index>> position_;
  std::vector<QMatrix> differential_;
};

std::shared_ptr<const FreeAlgebra> make_free_algebra(const Presentation& pres, int top_degree);

/// Algebra map from a free presentation into any GradedAlgebra, given by the
/// coordinates of each generator's image.
class AlgebraMap {
 public:
  AlgebraMap(Presentation source, std::shared_ptr<const GradedAlgebra> target, std::vector<QVector> images);

  /// A free-to-free morphism seen through the target's monomial basis.
  static AlgebraMap from_morphism(const Morphism& f, int top_degree);

  const Presentation& source() const { return source_; }
  const std::shared_ptr<const GradedAlgebra>& target() const { return target_; }
  const QVector& image(std::size_t generator) const { return images_[generator]; }
  const std::vector<QVector>& images() const { return images_; }

  QVector evaluate(const Monomial& m) const;
  /// p must be zero or homogeneous of `degree`.
  QVector evaluate(const Poly& p, int degree) const;

  /// Matrix of the map A^k -> T^k in the source monomial basis of `source_alg`.
  QMatrix chain_matrix(const FreeAlgebra& source_alg, int degree) const;

  /// The map precomposed with a free morphism f: S -> source().
  AlgebraMap after(const Morphism& f) const;

 private:
  Presentation source_;
  std::shared_ptr<const GradedAlgebra> target_;
  std::vector<QVector> images_;
};

}  // namespace cdga

#endif  // CDGA_GRADED_ALGEBRA_HPP

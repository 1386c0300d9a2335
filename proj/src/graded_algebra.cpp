#include "cdga/graded_algebra.hpp"

#include <stdexcept>

namespace cdga {

FreeAlgebra::FreeAlgebra(Presentation pres, int top_degree) : pres_(std::move(pres)), top_(top_degree) {
  if (top_ < 0) throw std::invalid_argument("FreeAlgebra: negative top degree");
  for (int k = 0; k <= top_; ++k) {
    basis_.push_back(basis_of_degree(pres_, k));
    std::map<Monomial, Index> pos;
    for (std::size_t i = 0; i < basis_.back().size(); ++i) pos.emplace(basis_.back()[i], static_cast<Index>(i));
    position_.push_back(std::move(pos));
  }
  for (int k = 0; k < top_; ++k) {
    QMatrix m = QMatrix::Zero(dim(k + 1), dim(k));
    for (std::size_t j = 0; j < basis_[k].size(); ++j) {
      Poly dm = d(Poly::monomial(pres_.space(), basis_[k][j]), pres_);
      for (const auto& [mono, c] : dm.terms()) m(position_[k + 1].at(mono), static_cast<Index>(j)) = c;
    }
    differential_.push_back(std::move(m));
  }
}

const std::vector<Monomial>& FreeAlgebra::basis(int degree) const {
  if (degree < 0 || degree > top_) throw std::out_of_range("FreeAlgebra::basis: degree " + std::to_string(degree));
  return basis_[degree];
}

Index FreeAlgebra::dim(int degree) const {
  if (degree < 0) return 0;
  return static_cast<Index>(basis(degree).size());
}

const QMatrix& FreeAlgebra::differential(int degree) const {
  if (degree < 0 || degree >= top_)
    throw std::out_of_range("FreeAlgebra::differential: degree " + std::to_string(degree));
  return differential_[degree];
}

QVector FreeAlgebra::to_vector(const Poly& p, int degree) const {
  const auto& pos = position_.at(static_cast<std::size_t>(degree));
  QVector v = QVector::Zero(dim(degree));
  const Poly q = transport(p, pres_.space());
  for (const auto& [m, c] : q.terms()) {
    auto it = pos.find(m);
    if (it == pos.end())
      throw std::invalid_argument("to_vector: " + q.to_string() + " is not homogeneous of degree " +
                                  std::to_string(degree));
    v(it->second) = c;
  }
  return v;
}

Poly FreeAlgebra::to_poly(int degree, const QVector& v) const {
  const auto& b = basis(degree);
  if (v.size() != static_cast<Index>(b.size())) throw std::invalid_argument("to_poly: wrong vector length");
  Poly p = pres_.zero();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (v(static_cast<Index>(i)) != 0) p.add_term(b[i], v(static_cast<Index>(i)));
  return p;
}

QVector FreeAlgebra::multiply(int da, const QVector& a, int db, const QVector& b) const {
  return to_vector(to_poly(da, a) * to_poly(db, b), da + db);
}

std::string FreeAlgebra::format(int degree, const QVector& v) const {
  return to_poly(degree, v).to_string();
}

std::shared_ptr<const FreeAlgebra> make_free_algebra(const Presentation& pres, int top_degree) {
  return std::make_shared<const FreeAlgebra>(pres, top_degree);
}

AlgebraMap::AlgebraMap(Presentation source, std::shared_ptr<const GradedAlgebra> target, std::vector<QVector> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (!target_) throw std::invalid_argument("AlgebraMap: null target");
  if (images_.size() != source_.size()) throw std::invalid_argument("AlgebraMap: wrong number of generator images");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const int deg = source_.generators()[i].degree;
    if (deg > target_->top_degree()) {
      if (images_[i].size() != 0) throw std::invalid_argument("AlgebraMap: image beyond the target's top degree");
      continue;
    }
    if (images_[i].size() != target_->dim(deg))
      throw std::invalid_argument("AlgebraMap: image of " + source_.generators()[i].name + " has wrong length");
  }
}

AlgebraMap AlgebraMap::from_morphism(const Morphism& f, int top_degree) {
  auto target = make_free_algebra(f.target(), top_degree);
  std::vector<QVector> images;
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    const int deg = f.source().generators()[i].degree;
    images.push_back(deg <= top_degree ? target->to_vector(f.image(i), deg) : QVector());
  }
  return AlgebraMap(f.source(), target, std::move(images));
}

QVector AlgebraMap::evaluate(const Monomial& m) const {
  QVector acc = target_->unit();
  int acc_degree = 0;
  for (const auto& f : m.factors()) {
    const int gd = source_.generators()[f.generator].degree;
    for (std::uint32_t e = 0; e < f.exponent; ++e) {
      if (acc_degree + gd > target_->top_degree())
        throw std::out_of_range("AlgebraMap::evaluate: product beyond the target's top degree");
      acc = target_->multiply(acc_degree, acc, gd, images_[f.generator]);
      acc_degree += gd;
    }
  }
  return acc;
}

QVector AlgebraMap::evaluate(const Poly& p, int degree) const {
  QVector out = QVector::Zero(target_->dim(degree));
  const Poly q = transport(p, source_.space());
  for (const auto& [m, c] : q.terms()) {
    if (m.degree(source_.generators()) != degree)
      throw std::invalid_argument("AlgebraMap::evaluate: polynomial is not of degree " + std::to_string(degree));
    out += c * evaluate(m);
  }
  return out;
}

QMatrix AlgebraMap::chain_matrix(const FreeAlgebra& source_alg, int degree) const {
  const auto& b = source_alg.basis(degree);
  QMatrix m(target_->dim(degree), static_cast<Index>(b.size()));
  for (std::size_t j = 0; j < b.size(); ++j) m.col(static_cast<Index>(j)) = evaluate(b[j]);
  return m;
}

AlgebraMap AlgebraMap::after(const Morphism& f) const {
  if (!(f.target().generators() == source_.generators()))
    throw std::invalid_argument("AlgebraMap::after: morphism does not land in the map's source");
  std::vector<QVector> images;
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    const int deg = f.source().generators()[i].degree;
    images.push_back(deg <= target_->top_degree() ? evaluate(f.image(i), deg) : QVector());
  }
  return AlgebraMap(f.source(), target_, std::move(images));
}

}  // namespace cdga

#include "cdga/cohomology.hpp"

namespace cdga {

CohomologyTable::CohomologyTable(std::shared_ptr<const GradedAlgebra> algebra, int max_degree)
    : algebra_(std::move(algebra)), max_degree_(max_degree) {
  if (!algebra_) throw std::invalid_argument("CohomologyTable: null algebra");
  zero_differential_ = algebra_->zero_differential();
  const int limit = zero_differential_ ? algebra_->top_degree() : algebra_->top_degree() - 1;
  if (max_degree_ < 0 || max_degree_ > limit)
    throw std::out_of_range("CohomologyTable: degree bound " + std::to_string(max_degree_) +
                            " exceeds what the algebra provides");
  for (int k = 0; k <= max_degree_; ++k) {
    Level lv;
    const Index n = algebra_->dim(k);
    if (zero_differential_) {
      for (Index j = 0; j < n; ++j) {
        QVector e = QVector::Zero(n);
        e(j) = 1;
        lv.cocycles.push_back(std::move(e));
        lv.free_columns.push_back(j);
      }
    } else {
      const QMatrix& dk = algebra_->differential(k);
      lv.cocycles = kernel_basis(dk);
      auto r = rref(dk);
      std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
      for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
      for (Index j = 0; j < n; ++j)
        if (!is_pivot[static_cast<std::size_t>(j)]) lv.free_columns.push_back(j);
      if (k > 0) {
        const QMatrix& prev = algebra_->differential(k - 1);
        // Column space of d_{k-1}, via the reduced form of its transpose.
        auto rt = rref(QMatrix(prev.transpose()));
        for (Index i = 0; i < rt.rank(); ++i) lv.coboundaries.push_back(rt.reduced.row(i).transpose());
      }
    }
    std::vector<QVector> sub;
    for (const auto& b : lv.coboundaries) {
      QVector c(static_cast<Index>(lv.free_columns.size()));
      for (std::size_t i = 0; i < lv.free_columns.size(); ++i) c(static_cast<Index>(i)) = b(lv.free_columns[i]);
      sub.push_back(std::move(c));
    }
    lv.quotient = std::make_shared<const Quotient<Rational>>(static_cast<Index>(lv.cocycles.size()), sub);
    for (Index pos : lv.quotient->representative_positions()) {
      lv.class_positions.push_back(pos);
      lv.representatives.push_back(lv.cocycles[static_cast<std::size_t>(pos)]);
    }
    levels_.push_back(std::move(lv));
  }
}

const CohomologyTable::Level& CohomologyTable::level(int k) const {
  if (k < 0 || k > max_degree_)
    throw std::out_of_range("cohomology degree " + std::to_string(k) + " outside 0.." + std::to_string(max_degree_));
  return levels_[static_cast<std::size_t>(k)];
}

Index CohomologyTable::betti(int k) const {
  return static_cast<Index>(level(k).representatives.size());
}

std::vector<Index> CohomologyTable::betti_numbers() const {
  std::vector<Index> out;
  for (int k = 0; k <= max_degree_; ++k) out.push_back(betti(k));
  return out;
}

const QVector& CohomologyTable::representative(int k, Index i) const {
  return level(k).representatives.at(static_cast<std::size_t>(i));
}

bool CohomologyTable::is_cocycle(int k, const QVector& v) const {
  level(k);
  if (v.size() != algebra_->dim(k)) throw std::invalid_argument("is_cocycle: wrong vector length");
  if (zero_differential_) return true;
  return all_zero(algebra_->differential(k) * v);
}

std::optional<QVector> CohomologyTable::primitive(int k, const QVector& v) const {
  if (k == 0) {
    if (all_zero(v)) return QVector();
    return std::nullopt;
  }
  if (zero_differential_) {
    if (all_zero(v)) return QVector::Zero(algebra_->dim(k - 1));
    return std::nullopt;
  }
  return solve(algebra_->differential(k - 1), v);
}

bool CohomologyTable::is_exact(int k, const QVector& v) const {
  return is_cocycle(k, v) && level(k).quotient->contains(cocycle_coordinates(k, v));
}

QVector CohomologyTable::cocycle_coordinates(int k, const QVector& v) const {
  const Level& lv = level(k);
  QVector c(static_cast<Index>(lv.free_columns.size()));
  for (std::size_t i = 0; i < lv.free_columns.size(); ++i) c(static_cast<Index>(i)) = v(lv.free_columns[i]);
  return c;
}

QVector CohomologyTable::class_of(int k, const QVector& v) const {
  if (!is_cocycle(k, v)) throw std::invalid_argument("class_of: vector is not a cocycle");
  return level(k).quotient->project(cocycle_coordinates(k, v));
}

QVector CohomologyTable::cocycle_of(int k, const QVector& coords) const {
  const Level& lv = level(k);
  if (coords.size() != static_cast<Index>(lv.representatives.size()))
    throw std::invalid_argument("cocycle_of: wrong coordinate length");
  QVector v = QVector::Zero(algebra_->dim(k));
  for (std::size_t i = 0; i < lv.representatives.size(); ++i)
    if (coords(static_cast<Index>(i)) != 0) v += coords(static_cast<Index>(i)) * lv.representatives[i];
  return v;
}

QVector CohomologyTable::product(int ka, const QVector& a, int kb, const QVector& b) const {
  const QVector x = cocycle_of(ka, a);
  const QVector y = cocycle_of(kb, b);
  return class_of(ka + kb, algebra_->multiply(ka, x, kb, y));
}

CohomologyTable cohomology(const Presentation& pres) {
  return cohomology(pres, pres.truncation());
}

CohomologyTable cohomology(const Presentation& pres, int max_degree) {
  return CohomologyTable(make_free_algebra(pres, max_degree + 1), max_degree);
}

CohomologyAlgebra::CohomologyAlgebra(std::shared_ptr<const CohomologyTable> table) : table_(std::move(table)) {
  if (!table_) throw std::invalid_argument("CohomologyAlgebra: null table");
  for (int k = 0; k < table_->max_degree(); ++k) zero_.push_back(QMatrix::Zero(dim(k + 1), dim(k)));
}

Index CohomologyAlgebra::dim(int degree) const {
  if (degree < 0) return 0;
  return table_->betti(degree);
}

const QMatrix& CohomologyAlgebra::differential(int degree) const {
  if (degree < 0 || degree >= table_->max_degree())
    throw std::out_of_range("CohomologyAlgebra::differential: degree " + std::to_string(degree));
  return zero_[static_cast<std::size_t>(degree)];
}

QVector CohomologyAlgebra::multiply(int da, const QVector& a, int db, const QVector& b) const {
  return table_->product(da, a, db, b);
}

std::string CohomologyAlgebra::format(int degree, const QVector& v) const {
  const QVector cocycle = table_->cocycle_of(degree, v);
  return "[" + table_->algebra().format(degree, cocycle) + "]";
}

int cup_length(const CohomologyTable& table) {
  const int top = table.max_degree();
  // power[k]: spanning set (class coordinates) of products of m positive classes in degree k.
  std::vector<std::vector<QVector>> power(static_cast<std::size_t>(top + 1));
  bool any = false;
  for (int k = 1; k <= top; ++k) {
    for (Index i = 0; i < table.betti(k); ++i) power[k].push_back(basis_class(table, k, i).coords);
    any = any || !power[k].empty();
  }
  if (!any) return 0;
  int m = 1;
  while (true) {
    std::vector<std::vector<QVector>> next(static_cast<std::size_t>(top + 1));
    bool nonzero = false;
    for (int i = 1; i <= top; ++i) {
      for (const auto& p : power[i]) {
        for (int j = 1; i + j <= top; ++j) {
          for (Index h = 0; h < table.betti(j); ++h) {
            QVector prod = table.product(i, p, j, basis_class(table, j, h).coords);
            if (!all_zero(prod)) next[i + j].push_back(std::move(prod));
          }
        }
      }
    }
    for (int k = 1; k <= top; ++k) {
      if (next[k].empty()) continue;
      // Keep a basis only.
      auto r = rref(QMatrix(columns(table.betti(k), next[k]).transpose()));
      next[k].clear();
      for (Index i = 0; i < r.rank(); ++i) next[k].push_back(r.reduced.row(i).transpose());
      nonzero = true;
    }
    if (!nonzero) return m;
    power = std::move(next);
    ++m;
  }
}

CohomologyClass basis_class(const CohomologyTable& table, int k, Index i) {
  CohomologyClass c{k, QVector::Zero(table.betti(k))};
  c.coords(i) = 1;
  return c;
}

bool massey_defined(const CohomologyTable& table, const CohomologyClass& a, const CohomologyClass& b,
                    const CohomologyClass& c) {
  if (a.degree + b.degree + c.degree - 1 > table.max_degree()) return false;
  return all_zero(table.product(a.degree, a.coords, b.degree, b.coords)) &&
         all_zero(table.product(b.degree, b.coords, c.degree, c.coords));
}

MasseyResult massey_triple(const CohomologyTable& table, const CohomologyClass& a, const CohomologyClass& b,
                           const CohomologyClass& c) {
  const GradedAlgebra& alg = table.algebra();
  const int deg = a.degree + b.degree + c.degree - 1;
  if (deg > table.max_degree())
    throw MasseyNotDefined("Massey product lands in degree " + std::to_string(deg) + " beyond the bound " +
                           std::to_string(table.max_degree()));
  const QVector x = table.cocycle_of(a.degree, a.coords);
  const QVector y = table.cocycle_of(b.degree, b.coords);
  const QVector z = table.cocycle_of(c.degree, c.coords);
  const QVector xy = alg.multiply(a.degree, x, b.degree, y);
  const QVector yz = alg.multiply(b.degree, y, c.degree, z);
  auto s = table.primitive(a.degree + b.degree, xy);
  if (!s) throw MasseyNotDefined("a*b is not zero in cohomology");
  auto t = table.primitive(b.degree + c.degree, yz);
  if (!t) throw MasseyNotDefined("b*c is not zero in cohomology");

  MasseyResult out;
  out.degree = deg;
  out.s = *s;
  out.t = *t;
  const int s_deg = a.degree + b.degree - 1;
  const int t_deg = b.degree + c.degree - 1;
  QVector sc = alg.multiply(s_deg, *s, c.degree, z);
  QVector at = alg.multiply(a.degree, x, t_deg, *t);
  out.representative = (a.degree % 2 == 0) ? QVector(sc - at) : QVector(sc + at);
  out.class_coords = table.class_of(deg, out.representative);

  std::vector<QVector> span;
  for (Index i = 0; i < table.betti(t_deg); ++i)
    span.push_back(table.product(a.degree, a.coords, t_deg, basis_class(table, t_deg, i).coords));
  for (Index i = 0; i < table.betti(s_deg); ++i)
    span.push_back(table.product(s_deg, basis_class(table, s_deg, i).coords, c.degree, c.coords));
  auto r = rref(QMatrix(columns(table.betti(deg), span).transpose()));
  for (Index i = 0; i < r.rank(); ++i) out.indeterminacy.push_back(r.reduced.row(i).transpose());
  out.contains_zero = Quotient<Rational>(table.betti(deg), out.indeterminacy).contains(out.class_coords);
  return out;
}

}  // namespace cdga

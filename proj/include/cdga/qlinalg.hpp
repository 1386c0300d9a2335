#ifndef CDGA_QLINALG_HPP
#define CDGA_QLINALG_HPP

// Exact dense linear algebra over a field scalar (Rational in practice).
// Every routine pivots on the first nonzero entry, scanning columns left to
// right and rows top to bottom, so bases come out identical run to run.

#include "cdga/rational.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

namespace cdga {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = MatrixX<Rational>;
using QVector = VectorX<Rational>;
using Index = Eigen::Index;

/// Exact zero test; Eigen's isZero() is tolerance based.
template <typename Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

template <typename Scalar>
struct RrefResult {
  MatrixX<Scalar> reduced;
  std::vector<Index> pivots;  // strictly increasing column indices

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

template <typename Derived>
RrefResult<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  RrefResult<Scalar> out{m, {}};
  MatrixX<Scalar>& a = out.reduced;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index pivot = -1;
    for (Index r = row; r < a.rows(); ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    for (Index c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Scalar f = a(r, col);
      for (Index c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank();
}

/// Null-space basis read off the reduced form: one vector per free column,
/// with a 1 in that column.
template <typename Derived>
std::vector<VectorX<typename Derived::Scalar>> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto r = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<VectorX<Scalar>> basis;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    VectorX<Scalar> k = VectorX<Scalar>::Zero(m.cols());
    k(f) = Scalar(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      k(r.pivots[i]) = -r.reduced(static_cast<Index>(i), f);
    basis.push_back(std::move(k));
  }
  return basis;
}

/// A particular solution of m x = b with free variables set to zero, or
/// nullopt when b is not in the image.
template <typename DerivedM, typename DerivedB>
std::optional<VectorX<typename DerivedM::Scalar>> solve(const Eigen::MatrixBase<DerivedM>& m,
                                                        const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedM::Scalar;
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  MatrixX<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  const auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  VectorX<Scalar> x = VectorX<Scalar>::Zero(m.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    x(r.pivots[i]) = r.reduced(static_cast<Index>(i), m.cols());
  return x;
}

/// Stack vectors as the columns of a matrix with `rows` rows.
template <typename Scalar>
MatrixX<Scalar> columns(Index rows, const std::vector<VectorX<Scalar>>& vs) {
  MatrixX<Scalar> m(rows, static_cast<Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Index>(j)) = vs[j];
  return m;
}

/// The quotient of a coordinate space by a subspace. Representatives are the
/// standard basis vectors at the non-pivot positions of the subspace's
/// reduced form; projection reduces a vector against that form and reads off
/// the remaining coordinates.
template <typename Scalar>
class Quotient {
 public:
  Quotient(Index space_dim, const std::vector<VectorX<Scalar>>& subspace) : dim_(space_dim) {
    MatrixX<Scalar> rows(static_cast<Index>(subspace.size()), space_dim);
    for (std::size_t i = 0; i < subspace.size(); ++i) {
      if (subspace[i].size() != space_dim)
        throw std::invalid_argument("quotient_basis: vector length differs from space dimension");
      rows.row(static_cast<Index>(i)) = subspace[i].transpose();
    }
    auto r = rref(rows);
    basis_ = r.reduced.topRows(r.rank());
    pivots_ = r.pivots;
    std::vector<bool> is_pivot(static_cast<std::size_t>(dim_), false);
    for (Index p : pivots_) is_pivot[static_cast<std::size_t>(p)] = true;
    for (Index j = 0; j < dim_; ++j)
      if (!is_pivot[static_cast<std::size_t>(j)]) free_.push_back(j);
  }

  Index space_dim() const { return dim_; }
  Index subspace_dim() const { return static_cast<Index>(pivots_.size()); }
  Index dim() const { return static_cast<Index>(free_.size()); }

  /// Positions of the standard vectors that represent the quotient.
  const std::vector<Index>& representative_positions() const { return free_; }

  std::vector<VectorX<Scalar>> representatives() const {
    std::vector<VectorX<Scalar>> out;
    for (Index j : free_) {
      VectorX<Scalar> e = VectorX<Scalar>::Zero(dim_);
      e(j) = Scalar(1);
      out.push_back(std::move(e));
    }
    return out;
  }

  /// Coordinates of v + subspace with respect to representatives().
  VectorX<Scalar> project(const VectorX<Scalar>& v) const {
    VectorX<Scalar> w = reduce(v);
    VectorX<Scalar> out(dim());
    for (std::size_t i = 0; i < free_.size(); ++i) out(static_cast<Index>(i)) = w(free_[i]);
    return out;
  }

  /// v minus its component in the subspace along the representative positions.
  VectorX<Scalar> reduce(const VectorX<Scalar>& v) const {
    if (v.size() != dim_) throw std::invalid_argument("Quotient::project: wrong vector length");
    VectorX<Scalar> w = v;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const Scalar c = w(pivots_[i]);
      if (c != 0) w -= c * basis_.row(static_cast<Index>(i)).transpose();
    }
    return w;
  }

  bool contains(const VectorX<Scalar>& v) const { return all_zero(reduce(v)); }

 private:
  Index dim_;
  MatrixX<Scalar> basis_;
  std::vector<Index> pivots_;
  std::vector<Index> free_;
};

template <typename Scalar>
Quotient<Scalar> quotient_basis(Index space_dim, const std::vector<VectorX<Scalar>>& subspace) {
  return Quotient<Scalar>(space_dim, subspace);
}

}  // namespace cdga

#endif  // CDGA_QLINALG_HPP

#ifndef CDGA_COHOMOLOGY_HPP
#define CDGA_COHOMOLOGY_HPP

#include "cdga/graded_algebra.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cdga {

/// Degreewise cohomology of a GradedAlgebra up to a bound.
///
/// In each degree the cocycles are the kernel basis of d (one vector per free
/// column of the reduced differential, carrying a 1 there), so a cocycle's
/// coordinates in that basis are just its entries at the free columns. Class
/// representatives are the cocycle basis vectors left over after reducing
/// against the coboundaries.
class CohomologyTable {
 public:
  CohomologyTable(std::shared_ptr<const GradedAlgebra> algebra, int max_degree);

  int max_degree() const { return max_degree_; }
  const GradedAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const GradedAlgebra>& algebra_ptr() const { return algebra_; }

  Index betti(int k) const;
  std::vector<Index> betti_numbers() const;

  const std::vector<QVector>& cocycle_basis(int k) const { return level(k).cocycles; }
  const std::vector<QVector>& coboundary_basis(int k) const { return level(k).coboundaries; }
  const std::vector<QVector>& representatives(int k) const { return level(k).representatives; }
  const QVector& representative(int k, Index i) const;

  bool is_cocycle(int k, const QVector& v) const;
  bool is_exact(int k, const QVector& v) const;
  /// Some x in degree k-1 with d x = v, if v is exact.
  std::optional<QVector> primitive(int k, const QVector& v) const;

  /// Coordinates of the class of a cocycle. Throws std::invalid_argument if
  /// v is not closed.
  QVector class_of(int k, const QVector& v) const;
  /// The cocycle sum_i coords(i) * representative(k, i).
  QVector cocycle_of(int k, const QVector& coords) const;
  /// Product of two classes, in class coordinates of degree ka + kb.
  QVector product(int ka, const QVector& a, int kb, const QVector& b) const;

 private:
  struct Level {
    std::vector<QVector> cocycles;
    std::vector<Index> free_columns;
    std::vector<QVector> coboundaries;
    std::vector<Index> class_positions;  // cocycle indices representing the classes
    std::vector<QVector> representatives;
    std::shared_ptr<const Quotient<Rational>> quotient;  // in cocycle coordinates
  };
  const Level& level(int k) const;
  QVector cocycle_coordinates(int k, const QVector& v) const;

  std::shared_ptr<const GradedAlgebra> algebra_;
  int max_degree_;
  bool zero_differential_;
  std::vector<Level> levels_;
};

/// Cohomology of a presentation up to its truncation degree (or `max_degree`).
CohomologyTable cohomology(const Presentation& pres);
CohomologyTable cohomology(const Presentation& pres, int max_degree);

/// (H, 0): the cohomology of a table as a CDGA with zero differential, in
/// class coordinates. Products above the table's bound are unavailable.
class CohomologyAlgebra final : public GradedAlgebra {
 public:
  explicit CohomologyAlgebra(std::shared_ptr<const CohomologyTable> table);

  const CohomologyTable& table() const { return *table_; }
  const std::shared_ptr<const CohomologyTable>& table_ptr() const { return table_; }

  int top_degree() const override { return table_->max_degree(); }
  Index dim(int degree) const override;
  const QMatrix& differential(int degree) const override;
  QVector multiply(int da, const QVector& a, int db, const QVector& b) const override;
  std::string format(int degree, const QVector& v) const override;
  bool zero_differential() const override { return true; }

 private:
  std::shared_ptr<const CohomologyTable> table_;
  std::vector<QMatrix> zero_;
};

/// Largest m such that some product of m positive-degree classes is nonzero
/// in degrees <= the table's bound.
int cup_length(const CohomologyTable& table);

struct CohomologyClass {
  int degree = 0;
  QVector coords;
};

struct MasseyResult {
  int degree = 0;
  QVector representative;              // a cocycle s*c + (-1)^{|a|+1} a*t
  QVector class_coords;                // its class
  std::vector<QVector> indeterminacy;  // basis of a*H + H*c, class coordinates
  bool contains_zero = false;
  QVector s;  // d s = a*b
  QVector t;  // d t = b*c
};

class MasseyNotDefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// ab = 0 and bc = 0 in cohomology, and the triple fits under the bound.
bool massey_defined(const CohomologyTable& table, const CohomologyClass& a, const CohomologyClass& b,
                    const CohomologyClass& c);

/// The triple Massey product <a, b, c> with the convention
/// [s*c + (-1)^{|a|+1} a*t], d s = a*b, d t = b*c.
/// Throws MasseyNotDefined when a*b or b*c is not zero in cohomology.
MasseyResult massey_triple(const CohomologyTable& table, const CohomologyClass& a, const CohomologyClass& b,
                           const CohomologyClass& c);

/// Standard basis class i in degree k.
CohomologyClass basis_class(const CohomologyTable& table, int k, Index i);

}  // namespace cdga

#endif  // CDGA_COHOMOLOGY_HPP

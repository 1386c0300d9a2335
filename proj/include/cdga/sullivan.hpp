#ifndef CDGA_SULLIVAN_HPP
#define CDGA_SULLIVAN_HPP

#include "cdga/cohomology.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdga {

/// V = V^{>=2} and every generator differential is decomposable.
bool is_minimal(const Presentation& pres);

/// A minimal Sullivan algebra with a map into a target inducing isomorphisms
/// on H^{<=N} and an injection on H^{N+1}.
struct MinimalModel {
  Presentation model;
  AlgebraMap map;
  /// The same map as a free morphism, when the target is a presentation.
  std::optional<Morphism> morphism;
  /// One entry per model generator: what it was introduced for.
  std::vector<std::string> provenance;
  int degree_bound = 0;
};

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Degree-by-degree construction up to N. New generators are named v{k}_{i}.
/// The target must provide H^{<=N+1}; simply connected targets only.
MinimalModel minimal_model(std::shared_ptr<const GradedAlgebra> target, int max_degree,
                           const std::string& name = "M");
/// Minimal model of a presentation up to its truncation degree. An already
/// minimal presentation is returned as itself with the identity map.
MinimalModel minimal_model(const Presentation& pres);
MinimalModel minimal_model(const Presentation& pres, int max_degree);

/// A minimal presentation seen as its own model.
MinimalModel identity_model(const Presentation& pres);

struct DegreeComparison {
  int degree = 0;
  Index source_dim = 0;
  Index target_dim = 0;
  Index rank = 0;
  bool iso() const { return source_dim == target_dim && rank == source_dim; }
};

struct QuasiIsoReport {
  int degree_bound = 0;
  std::optional<std::string> chain_violation;  // offending generator
  std::vector<DegreeComparison> degrees;
  std::optional<int> first_failure;
  bool chain_map() const { return !chain_violation; }
  bool passed() const { return chain_map() && !first_failure; }
};

/// H^k(f) as a matrix in class coordinates. `src` must be the cohomology of a
/// FreeAlgebra on f.source() and `tgt` the cohomology of f.target().
QMatrix induced_cohomology_map(const AlgebraMap& f, const CohomologyTable& src, const CohomologyTable& tgt, int k);

QuasiIsoReport verify_quasi_iso(const AlgebraMap& f, int max_degree);
QuasiIsoReport verify_quasi_iso(const Morphism& f, int max_degree);
QuasiIsoReport verify_quasi_iso(const Morphism& f);

/// A surjective quasi-isomorphism onto a minimal presentation obtained by
/// cancelling the linear part of the differential.
struct Retraction {
  Presentation minimal;
  Morphism projection;
};
Retraction eliminate_linear_part(const Presentation& pres);

/// Inverse of a morphism between minimal presentations whose linear part is
/// invertible in every degree; nullopt otherwise.
std::optional<Morphism> invert(const Morphism& g);

class LiftingError : public std::runtime_error {
 public:
  LiftingError(const std::string& what, int degree) : std::runtime_error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// A chain map f^: mA.model -> mB.model such that mB o f^ and f o mA induce the
/// same map on cohomology. Both models must carry free morphisms into the
/// source and target of f.
Morphism sullivan_representative(const Morphism& f, const MinimalModel& mA, const MinimalModel& mB);

/// Every degree-k generator of the model is closed.
bool hurewicz_injective_in_degree(const MinimalModel& m, int k);
/// Largest k with V^{<=k} = 0 (the degree bound when V = 0 up to it).
int rational_connectivity(const MinimalModel& m);
/// Every generator differential is a sum of word-length-two monomials.
bool is_coformal(const MinimalModel& m);

}  // namespace cdga

#endif  // CDGA_SULLIVAN_HPP

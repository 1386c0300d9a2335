#ifndef CDGA_FIBRATION_HPP
#define CDGA_FIBRATION_HPP

#include "cdga/sullivan.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace cdga {

enum class FiberKind { EvenSphere, OddSphere, ProjectiveLike };

/// Rational fiber type. EvenSphere(n) is ProjectiveLike(n, 2) with a
/// different name; OddSphere(n) has a single generator.
struct Fiber {
  FiberKind kind = FiberKind::EvenSphere;
  int n = 2;
  int d = 2;

  static Fiber even_sphere(int n) { return {FiberKind::EvenSphere, n, 2}; }
  static Fiber odd_sphere(int n) { return {FiberKind::OddSphere, n, 1}; }
  static Fiber projective(int n, int d) { return {FiberKind::ProjectiveLike, n, d}; }

  bool odd() const { return kind == FiberKind::OddSphere; }
  /// Degree of the twisting class u.
  int twist_degree() const { return odd() ? n + 1 : d * n; }
  std::string describe() const;
  bool operator==(const Fiber&) const = default;
};

class FibrationError : public std::invalid_argument {
 public:
  enum class Kind { WrongDegree, NotClosed, ParityMismatch, NameClash, NoLinearPart, DegeneratePresentation,
                    ZeroTwist, Unsupported, NotClosedInReduction, BaseNotCertified };
  FibrationError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Base model tensored with the fiber generators: z closed and
/// d z' = z^d - u (even and projective-like fibers), or d z = u (odd fibers).
struct FibrationModel {
  Presentation base;
  Fiber fiber;
  Poly u;  // in the base
  Presentation total;
  std::size_t z = 0;                   // index in total
  std::optional<std::size_t> z_prime;  // index in total, even and projective-like fibers
  bool primitive = false;
};

FibrationModel build_fibration_model(const Presentation& base, const Fiber& fiber, const Poly& u,
                                     const std::string& z_name = "z", const std::string& z_prime_name = "z'",
                                     const std::string& total_name = "");

/// The base inclusion into the total model.
Morphism base_inclusion(const FibrationModel& fm);

struct ReductionResult {
  Presentation reduced;  // minimal model of the total space
  Morphism phi;          // total -> reduced
  Morphism psi;          // reduced -> total, phi o psi = id
  bool primitive_case = false;
  std::optional<std::size_t> u_prime;  // base generator index eliminated by phi
  Rational u_prime_coefficient{1};
  Poly v_remainder;  // u - c*u'
};

/// Primitive case: eliminate the lowest-index generator u' of degree |u| with
/// nonzero coefficient c in u, setting phi(u') = (z^d - phi(u - c u'))/c and
/// phi(z') = 0. Non-primitive case: the total model itself with identity maps.
ReductionResult theoremC_reduce(const FibrationModel& fm);

/// sum_{l + d*m = d*i - d} z^l u^m.
Poly correction_sum(const Poly& z, const Poly& u, int d, int i);

/// psi(x) + x~ where x~ lies in the ideal of z' and cancels the u-powers in
/// d(psi(x)); the result is closed in the total model and maps to x under phi.
Poly closure_correction(const FibrationModel& fm, const ReductionResult& r, const Poly& x);

/// The generator-level map total -> (H(total), 0): base generators go to the
/// pullback of their class under mu_B, z to [z], z' to 0. mu_B must map the
/// base into its cohomology algebra (over a FreeAlgebra on fm.base).
AlgebraMap tilde_mu_E(const FibrationModel& fm, const AlgebraMap& mu_B);

struct FormalMapReport {
  int degree_bound = 0;
  std::vector<int> checked_degrees;
  std::optional<int> first_failure;
  bool passed() const { return !first_failure; }
};

/// Compares mu_E o p^ with p* o mu_B on cohomology up to the degree bound.
/// p_hat: fm.base -> source of mu_E. mu_E must land in (H(total), 0) over a
/// FreeAlgebra on fm.total.
FormalMapReport check_formal_map(const FibrationModel& fm, const Morphism& p_hat, const AlgebraMap& mu_B,
                                 const AlgebraMap& mu_E);

struct TheoremCHypotheses {
  bool hurewicz_n = false;
  bool hurewicz_top = false;  // degree d*n (2n for spheres)
  int connectivity = 0;
  bool connectivity_route = false;  // rationally (d*n - 1)-connected
  bool low_degree_route = false;        // Hurewicz at n and 3k+1 >= 2n
  bool connectivity_only = false;   // projective-like fibers: only the connectivity route applies
  bool satisfied() const {
    if (connectivity_only) return connectivity_route;
    return (hurewicz_n && hurewicz_top) || connectivity_route || low_degree_route;
  }
};

/// Side conditions on the base under which formality passes from the total
/// space to the base. The base presentation must be minimal.
TheoremCHypotheses theoremC_hypotheses(const FibrationModel& fm);

}  // namespace cdga

#endif  // CDGA_FIBRATION_HPP

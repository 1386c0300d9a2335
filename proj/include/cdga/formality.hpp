#ifndef CDGA_FORMALITY_HPP
#define CDGA_FORMALITY_HPP

#include "cdga/sullivan.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cdga {

/// A complement adapted to the closed elements of a minimal presentation. In
/// each degree C^i collects the generators g_f that complete to a closed
/// element k_f = g_f + (generators of N^i) + (decomposables); the remaining
/// generators span N^i. Generators are taken from the end of the list first,
/// so when d restricted to V^i already has the closed part, N^i is spanned by
/// the pivot columns of that matrix.
struct Complement {
  Presentation original;
  /// Same generator names, with each free generator g_f standing for k_f.
  Presentation adapted;
  Morphism to_original;    // adapted -> original, g_f -> k_f, an isomorphism
  Morphism from_original;  // original -> adapted
  std::vector<bool> in_complement;  // per generator: spans N
  /// C^i = 0 or C^i = V^i, so N^i is the only possible complement.
  bool unique_in_degree(int i) const;
};

Complement canonical_complement(const Presentation& minimal);

enum class WitnessKind { Massey, IdealN };

struct Witness {
  WitnessKind kind = WitnessKind::IdealN;
  int degree = 0;
  Poly element;              // closed, not exact
  std::vector<Poly> triple;  // Massey: cocycles representing a, b, c
  Index indeterminacy_dim = 0;
  /// IdealN: every monomial contains a generator of a degree with H = 0, so
  /// any quasi-isomorphism onto (H, 0) kills the element.
  bool complement_independent = true;
  std::string describe() const;
};

enum class VerdictKind { Formal, NonFormal, Inconclusive };

std::string to_string(VerdictKind k);

struct FormalityVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  int degree_bound = 0;
  std::optional<AlgebraMap> certificate;  // model -> (H, 0)
  std::optional<Witness> witness;
  std::string reason;
  /// Names of the generators spanning N^i, by degree.
  std::vector<std::vector<std::string>> complement;
};

struct Obstruction {
  std::string generator;
  int degree = 0;
};

/// The multiplicative extension of g_f -> [k_f], complement generators -> 0,
/// into (H, 0) computed up to the truncation degree plus one. Returned when
/// it is a chain map, otherwise the first complement generator x with
/// [mu(dx)] != 0.
std::variant<AlgebraMap, Obstruction> build_certificate(const Presentation& minimal, const Complement& complement);

/// First Massey triple of basis classes, by target degree, whose value does
/// not contain zero.
std::optional<Witness> massey_witness(const Presentation& pres, int max_degree);
/// Lowest-degree closed, non-exact element of the ideal generated by the
/// canonical complement.
std::optional<Witness> ideal_witness(const Presentation& minimal, const Complement& complement);

/// Lowest-degree closed, non-exact element of the ideal generated by the
/// generators whose degree carries no cohomology. Its existence rules out
/// formality whatever the generators or complement.
std::optional<Witness> acyclic_ideal_witness(const Presentation& minimal);
/// DGMS test with the canonical complement; NonFormal only with a Massey
/// witness or an acyclic-ideal witness.
FormalityVerdict dgms_check(const Presentation& minimal);
FormalityVerdict dgms_check(const MinimalModel& m);

/// Lowest-degree witness of either kind (the ideal kind wins ties), or none.
std::optional<Witness> nonformality_witness(const Presentation& minimal);
std::optional<Witness> nonformality_witness(const MinimalModel& m);

/// Generators of A followed by those of B; names must be disjoint.
Presentation tensor_product(const Presentation& a, const Presentation& b, const std::string& name = "");

/// Verdict for A (x) B from verdicts on the factors.
FormalityVerdict product_formality(const FormalityVerdict& va, const Presentation& a, const FormalityVerdict& vb,
                                   const Presentation& b);

}  // namespace cdga

#endif  // CDGA_FORMALITY_HPP

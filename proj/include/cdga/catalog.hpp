#ifndef CDGA_CATALOG_HPP
#define CDGA_CATALOG_HPP

#include "cdga/fibration.hpp"
#include "cdga/formality.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdga {

class UnknownFixture : public std::out_of_range {
 public:
  explicit UnknownFixture(const std::string& name) : std::out_of_range("unknown fixture '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Where an expected value comes from: stated in the literature, computed by
/// an independent method, or immediate from the definitions.
enum class Source { Literature, Computed, Immediate };

std::string to_string(Source s);

struct FibrationRecipe {
  Fiber fiber;
  Poly u;  // in the fixture presentation
};

struct Expected {
  std::vector<Index> betti;  // H^0, H^1, ... (prefix)
  std::optional<int> cup_length;
  std::optional<VerdictKind> verdict;
  std::optional<WitnessKind> witness_kind;
  std::optional<Poly> witness;  // up to a nonzero scalar
  std::optional<int> witness_degree;
  std::optional<bool> zero_indeterminacy;
  std::optional<bool> primitive;
  std::vector<Index> reduced_betti;
  std::optional<VerdictKind> total_verdict;
  std::optional<std::vector<int>> total_model_degrees;  // sorted generator degrees
  std::optional<bool> total_model_free;                 // zero differential
  std::optional<bool> formal_map;
  std::map<std::string, Source> source;  // per field name
};

struct Fixture {
  std::string name;
  std::string description;
  Presentation presentation;  // the algebra, or the base of the recipe
  std::optional<FibrationRecipe> fibration;
  Expected expected;
};

/// Names: sphere:n, cpn:m, hpn:n, twistor:hpn:n, heisenberg-like:n (n odd),
/// sec6-primitive, sec6-nonprimitive, tower:d, s6-projective, hp1-projective.
/// Throws UnknownFixture.
Fixture fixture(const std::string& name);

/// Every registered family at the parameters exercised by the test suite.
std::vector<std::string> fixture_names();

FibrationModel fibration_model(const Fixture& f);

struct CheckLine {
  std::string field;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct FixtureReport {
  std::string name;
  std::vector<CheckLine> lines;
  std::optional<FormalityVerdict> verdict;
  std::optional<Presentation> total_model;  // reduced (or minimal) model of the total space
  bool passed() const;
};

/// Recompute every expected value of a fixture.
FixtureReport check_fixture(const Fixture& f);

}  // namespace cdga

#endif  // CDGA_CATALOG_HPP

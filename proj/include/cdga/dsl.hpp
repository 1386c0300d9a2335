#ifndef CDGA_DSL_HPP
#define CDGA_DSL_HPP

#include "cdga/catalog.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdga {

struct Span {
  int line = 0;
  int col = 0;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(Span at, std::string expected);
  Span where() const { return at_; }
  const std::string& expected() const { return expected_; }

 private:
  Span at_;
  std::string expected_;
};

class SemanticError : public std::runtime_error {
 public:
  SemanticError(Span at, const std::string& message);
  Span where() const { return at_; }

 private:
  Span at_;
};

struct AlgebraBlock {
  std::string name;
  Space space;
  std::vector<Poly> differential;  // per generator, zero when not given
  Span span;
  std::vector<Span> differential_span;  // of each `d` line; {} when not given
};

struct FibrationBlock {
  std::string name;
  std::string base;
  Fiber fiber;
  Poly u;  // over the base block's generators
  Span span;
};

struct DslDocument {
  std::optional<int> max_degree;
  std::vector<AlgebraBlock> algebras;
  std::vector<FibrationBlock> fibrations;

  const AlgebraBlock* algebra(std::string_view name) const;
  const FibrationBlock* fibration(std::string_view name) const;
};

/// Structural equality; source positions are ignored.
bool operator==(const AlgebraBlock& a, const AlgebraBlock& b);
bool operator==(const FibrationBlock& a, const FibrationBlock& b);
bool operator==(const DslDocument& a, const DslDocument& b);

DslDocument parse(std::string_view text);
std::string print(const DslDocument& doc);

/// A polynomial over `space`, in the expression syntax of `d` lines.
Poly parse_expression(std::string_view text, const Space& space);

/// 2 * (largest generator degree) + 2.
int default_max_degree(const AlgebraBlock& block);

/// Validated presentation truncated at `max_degree`; an invalid block raises
/// SemanticError at the block header.
Presentation presentation(const AlgebraBlock& block, int max_degree);

/// The fixture as a document: its presentation, and its fibration recipe
/// when it has one.
DslDocument document_of(const Fixture& f);

}  // namespace cdga

#endif  // CDGA_DSL_HPP

#include "cdga/dsl.hpp"

#include <cctype>
#include <memory>
#include <sstream>

namespace cdga {

namespace {

std::string at_text(Span s) { return "line " + std::to_string(s.line) + ", column " + std::to_string(s.col); }

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const Span here{lineno, static_cast<int>(i) + 1};
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), here});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::Number, std::string(line.substr(i, j - i)), here});
      i = j;
    } else if (std::string_view(":=+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), here});
      ++i;
    } else {
      throw SyntaxError(here, "a name, number or one of : = + - * / ^ ( )");
    }
  }
  out.push_back({Tok::End, "", Span{lineno, static_cast<int>(line.size()) + 1}});
  return out;
}

struct Expr {
  enum Kind { Num, Var, Add, Sub, Mul, Neg, Pow } kind = Num;
  Rational value{0};
  std::string name;
  unsigned exponent = 0;
  Span span;
  std::unique_ptr<Expr> lhs, rhs;
};
using ExprPtr = std::unique_ptr<Expr>;

ExprPtr node(Expr::Kind k, Span s, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto e = std::make_unique<Expr>();
  e->kind = k;
  e->span = s;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

// expr    := ['+' | '-'] term {('+' | '-') term}
// term    := factor {'*' factor}
// factor  := primary ['^' NUMBER]
// primary := NAME | NUMBER ['/' NUMBER] | '(' expr ')'
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t pos) : t_(toks), i_(pos) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) throw SyntaxError(peek().span, "an operator or end of line");
    return e;
  }

 private:
  const Token& peek() const { return t_[i_]; }
  bool is(const char* sym) const { return peek().kind == Tok::Sym && peek().text == sym; }
  const Token& take() { return t_[i_++]; }

  ExprPtr expr() {
    ExprPtr e;
    if (is("+") || is("-")) {
      const Token op = take();
      e = term(op, "a term after '" + op.text + "'");
      if (op.text == "-") e = node(Expr::Neg, op.span, std::move(e));
    } else {
      e = term(peek(), "an expression");
    }
    while (is("+") || is("-")) {
      const Token op = take();
      ExprPtr r = term(op, "a term after '" + op.text + "'");
      e = node(op.text == "+" ? Expr::Add : Expr::Sub, op.span, std::move(e), std::move(r));
    }
    return e;
  }

  // `blame` is where a missing operand is reported.
  ExprPtr term(const Token& blame, const std::string& what) {
    ExprPtr e = factor(blame, what);
    while (is("*")) {
      const Token op = take();
      e = node(Expr::Mul, op.span, std::move(e), factor(op, "a factor after '*'"));
    }
    return e;
  }

  ExprPtr factor(const Token& blame, const std::string& what) {
    ExprPtr e = primary(blame, what);
    if (is("^")) {
      const Token op = take();
      if (peek().kind != Tok::Number) throw SyntaxError(peek().kind == Tok::End ? op.span : peek().span, "an exponent after '^'");
      const Token n = take();
      auto p = node(Expr::Pow, op.span, std::move(e));
      p->exponent = static_cast<unsigned>(std::stoul(n.text));
      e = std::move(p);
    }
    return e;
  }

  ExprPtr primary(const Token& blame, const std::string& what) {
    const Token& tk = peek();
    if (tk.kind == Tok::Ident) {
      auto e = node(Expr::Var, tk.span);
      e->name = take().text;
      return e;
    }
    if (tk.kind == Tok::Number) {
      const Token num = take();
      std::string text = num.text;
      if (is("/")) {
        const Token slash = take();
        if (peek().kind != Tok::Number) throw SyntaxError(peek().kind == Tok::End ? slash.span : peek().span, "a denominator after '/'");
        text += "/" + take().text;
        if (Integer(text.substr(text.find('/') + 1)) == 0) throw SemanticError(num.span, "zero denominator in " + text);
      }
      auto e = node(Expr::Num, num.span);
      e->value = parse_rational(text);
      return e;
    }
    if (is("(")) {
      const Token open = take();
      ExprPtr e = expr();
      if (!is(")")) throw SyntaxError(peek().span, "')' closing the '(' at " + at_text(open.span));
      take();
      return e;
    }
    throw SyntaxError(tk.kind == Tok::End ? blame.span : tk.span, what);
  }

  const std::vector<Token>& t_;
  std::size_t i_;
};

Poly evaluate(const Expr& e, const Space& space) {
  switch (e.kind) {
    case Expr::Num:
      return Poly::constant(space, e.value);
    case Expr::Var: {
      const auto idx = space->find(e.name);
      if (!idx) throw SemanticError(e.span, "unknown generator '" + e.name + "'");
      return Poly::generator(space, *idx);
    }
    case Expr::Add:
      return evaluate(*e.lhs, space) + evaluate(*e.rhs, space);
    case Expr::Sub:
      return evaluate(*e.lhs, space) - evaluate(*e.rhs, space);
    case Expr::Mul:
      return evaluate(*e.lhs, space) * evaluate(*e.rhs, space);
    case Expr::Neg:
      return -evaluate(*e.lhs, space);
    case Expr::Pow:
      return evaluate(*e.lhs, space).pow(e.exponent);
  }
  return Poly(space);
}

struct PendingDiff {
  std::string generator;
  Span span;
  ExprPtr rhs;
};

struct PendingAlgebra {
  std::string name;
  Span span;
  std::vector<Generator> gens;
  std::vector<Span> gen_spans;
  std::vector<PendingDiff> diffs;
};

struct PendingFibration {
  std::string name;
  Span span;
  std::optional<std::pair<std::string, Span>> base;
  std::optional<Fiber> fiber;
  Span fiber_span;
  ExprPtr u;
  Span u_span;
};

class DocParser {
 public:
  DslDocument run(std::string_view text) {
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      const std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      ++lineno;
      line_(tokenize(line, lineno));
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    return finish();
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  DslDocument doc_;
  std::optional<Span> max_degree_span_;
  std::vector<PendingAlgebra> algebras_;
  std::vector<PendingFibration> fibrations_;
  enum class Current { None, Algebra, Fibration } current_ = Current::None;

  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) throw SyntaxError(peek().span, what);
    return take();
  }
  void expect_sym(const char* sym) {
    if (peek().kind != Tok::Sym || peek().text != sym) throw SyntaxError(peek().span, std::string("'") + sym + "'");
    take();
  }
  void expect_end() {
    if (peek().kind != Tok::End) throw SyntaxError(peek().span, "end of line");
  }
  int number(const std::string& what) {
    const Token& t = expect(Tok::Number, what);
    try {
      return std::stoi(t.text);
    } catch (const std::out_of_range&) {
      throw SemanticError(t.span, "number " + t.text + " is too large");
    }
  }

  void check_new_block_name(const Token& t) {
    for (const auto& a : algebras_)
      if (a.name == t.text) throw SemanticError(t.span, "block '" + t.text + "' already defined at " + at_text(a.span));
    for (const auto& f : fibrations_)
      if (f.name == t.text) throw SemanticError(t.span, "block '" + t.text + "' already defined at " + at_text(f.span));
  }

  PendingAlgebra& algebra(const Token& kw) {
    if (current_ != Current::Algebra) throw SemanticError(kw.span, "'" + kw.text + "' outside an algebra block");
    return algebras_.back();
  }
  PendingFibration& fibration(const Token& kw) {
    if (current_ != Current::Fibration) throw SemanticError(kw.span, "'" + kw.text + "' outside a fibration block");
    return fibrations_.back();
  }

  void line_(std::vector<Token> toks) {
    toks_ = std::move(toks);
    i_ = 0;
    if (peek().kind == Tok::End) return;
    const Token kw = expect(Tok::Ident, "a keyword (max_degree, algebra, fibration, gen, d, base, fiber, u)");
    if (kw.text == "max_degree") {
      if (max_degree_span_) throw SemanticError(kw.span, "max_degree already given at " + at_text(*max_degree_span_));
      doc_.max_degree = number("a degree bound");
      max_degree_span_ = kw.span;
      expect_end();
    } else if (kw.text == "algebra" || kw.text == "fibration") {
      const Token name = expect(Tok::Ident, "a block name");
      expect_end();
      check_new_block_name(name);
      if (kw.text == "algebra") {
        algebras_.push_back(PendingAlgebra{name.text, kw.span, {}, {}, {}});
        current_ = Current::Algebra;
      } else {
        fibrations_.push_back(PendingFibration{name.text, kw.span, std::nullopt, std::nullopt, {}, nullptr, {}});
        current_ = Current::Fibration;
      }
    } else if (kw.text == "gen") {
      PendingAlgebra& a = algebra(kw);
      do {
        const Token name = expect(Tok::Ident, "a generator name");
        expect_sym(":");
        const int deg = number("a generator degree");
        for (std::size_t j = 0; j < a.gens.size(); ++j)
          if (a.gens[j].name == name.text)
            throw SemanticError(name.span, "generator '" + name.text + "' already declared at " + at_text(a.gen_spans[j]));
        if (deg < 1) throw SemanticError(name.span, "generator '" + name.text + "' needs a positive degree");
        a.gens.push_back(Generator{name.text, deg});
        a.gen_spans.push_back(name.span);
      } while (peek().kind != Tok::End);
    } else if (kw.text == "d") {
      PendingAlgebra& a = algebra(kw);
      const Token g = expect(Tok::Ident, "a generator name");
      expect_sym("=");
      for (const auto& p : a.diffs)
        if (p.generator == g.text) throw SemanticError(g.span, "d " + g.text + " already given at " + at_text(p.span));
      a.diffs.push_back(PendingDiff{g.text, g.span, ExprParser(toks_, i_).parse_all()});
    } else if (kw.text == "base") {
      PendingFibration& f = fibration(kw);
      const Token b = expect(Tok::Ident, "the name of an algebra block");
      expect_end();
      if (f.base) throw SemanticError(kw.span, "base already given");
      f.base = std::make_pair(b.text, b.span);
    } else if (kw.text == "fiber") {
      PendingFibration& f = fibration(kw);
      if (f.fiber) throw SemanticError(kw.span, "fiber already given");
      const Token kind = expect(Tok::Ident, "a fiber kind (even, odd, projective)");
      const int n = number("the fiber generator degree");
      if (kind.text == "even") {
        f.fiber = Fiber::even_sphere(n);
      } else if (kind.text == "odd") {
        f.fiber = Fiber::odd_sphere(n);
      } else if (kind.text == "projective") {
        f.fiber = Fiber::projective(n, number("the height d"));
      } else {
        throw SyntaxError(kind.span, "a fiber kind (even, odd, projective)");
      }
      expect_end();
      f.fiber_span = kind.span;
    } else if (kw.text == "u") {
      PendingFibration& f = fibration(kw);
      expect_sym("=");
      if (f.u) throw SemanticError(kw.span, "u already given");
      f.u_span = kw.span;
      f.u = ExprParser(toks_, i_).parse_all();
    } else {
      throw SyntaxError(kw.span, "a keyword (max_degree, algebra, fibration, gen, d, base, fiber, u)");
    }
  }

  DslDocument finish() {
    for (auto& p : algebras_) {
      AlgebraBlock b{p.name, make_space(p.gens), {}, p.span, std::vector<Span>(p.gens.size())};
      b.differential.assign(p.gens.size(), Poly(b.space));
      for (auto& dl : p.diffs) {
        const auto idx = b.space->find(dl.generator);
        if (!idx) throw SemanticError(dl.span, "unknown generator '" + dl.generator + "'");
        b.differential[*idx] = evaluate(*dl.rhs, b.space);
        b.differential_span[*idx] = dl.span;
      }
      doc_.algebras.push_back(std::move(b));
    }
    for (auto& p : fibrations_) {
      if (!p.base) throw SemanticError(p.span, "fibration '" + p.name + "' has no base");
      if (!p.fiber) throw SemanticError(p.span, "fibration '" + p.name + "' has no fiber");
      if (!p.u) throw SemanticError(p.span, "fibration '" + p.name + "' has no u");
      const AlgebraBlock* base = doc_.algebra(p.base->first);
      if (!base) throw SemanticError(p.base->second, "unknown algebra '" + p.base->first + "'");
      doc_.fibrations.push_back(FibrationBlock{p.name, p.base->first, *p.fiber, evaluate(*p.u, base->space), p.span});
    }
    return std::move(doc_);
  }
};

}  // namespace

SyntaxError::SyntaxError(Span at, std::string expected)
    : std::runtime_error("syntax error at " + at_text(at) + ": expected " + expected), at_(at), expected_(std::move(expected)) {}

SemanticError::SemanticError(Span at, const std::string& message)
    : std::runtime_error("error at " + at_text(at) + ": " + message), at_(at) {}

const AlgebraBlock* DslDocument::algebra(std::string_view name) const {
  for (const auto& a : algebras)
    if (a.name == name) return &a;
  return nullptr;
}

const FibrationBlock* DslDocument::fibration(std::string_view name) const {
  for (const auto& f : fibrations)
    if (f.name == name) return &f;
  return nullptr;
}

bool operator==(const AlgebraBlock& a, const AlgebraBlock& b) {
  return a.name == b.name && *a.space == *b.space && a.differential == b.differential;
}

bool operator==(const FibrationBlock& a, const FibrationBlock& b) {
  return a.name == b.name && a.base == b.base && a.fiber == b.fiber && a.u == b.u;
}

bool operator==(const DslDocument& a, const DslDocument& b) {
  return a.max_degree == b.max_degree && a.algebras == b.algebras && a.fibrations == b.fibrations;
}

DslDocument parse(std::string_view text) { return DocParser().run(text); }

std::string print(const DslDocument& doc) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << '\n';
    first = false;
  };
  if (doc.max_degree) {
    sep();
    os << "max_degree " << *doc.max_degree << '\n';
  }
  for (const auto& a : doc.algebras) {
    sep();
    os << "algebra " << a.name << '\n';
    if (!a.space->empty()) {
      os << "  gen";
      for (const auto& g : a.space->generators()) os << ' ' << g.name << ':' << g.degree;
      os << '\n';
    }
    for (std::size_t i = 0; i < a.differential.size(); ++i)
      if (!a.differential[i].is_zero()) os << "  d " << (*a.space)[i].name << " = " << a.differential[i].to_string() << '\n';
  }
  for (const auto& f : doc.fibrations) {
    sep();
    os << "fibration " << f.name << '\n';
    os << "  base " << f.base << '\n';
    switch (f.fiber.kind) {
      case FiberKind::EvenSphere:
        os << "  fiber even " << f.fiber.n << '\n';
        break;
      case FiberKind::OddSphere:
        os << "  fiber odd " << f.fiber.n << '\n';
        break;
      case FiberKind::ProjectiveLike:
        os << "  fiber projective " << f.fiber.n << ' ' << f.fiber.d << '\n';
        break;
    }
    os << "  u = " << f.u.to_string() << '\n';
  }
  return os.str();
}

Poly parse_expression(std::string_view text, const Space& space) {
  const auto toks = tokenize(text, 1);
  return evaluate(*ExprParser(toks, 0).parse_all(), space);
}

int default_max_degree(const AlgebraBlock& block) {
  const int top = block.space->empty() ? 0 : block.space->max_degree();
  return 2 * top + 2;
}

Presentation presentation(const AlgebraBlock& block, int max_degree) {
  for (std::size_t i = 0; i < block.differential.size(); ++i) {
    const Poly& p = block.differential[i];
    if (p.is_zero()) continue;
    const int want = (*block.space)[i].degree + 1;
    const Span at = i < block.differential_span.size() && block.differential_span[i].line ? block.differential_span[i] : block.span;
    if (p.degree() != want)
      throw SemanticError(at, "in algebra '" + block.name + "': d " + (*block.space)[i].name + " = " +
                                          p.to_string() + " is not homogeneous of degree " + std::to_string(want));
  }
  try {
    return Presentation(block.name, block.space, block.differential, max_degree);
  } catch (const InvalidPresentation& e) {
    throw SemanticError(block.span, "in algebra '" + block.name + "': " + e.what());
  }
}

DslDocument document_of(const Fixture& f) {
  DslDocument doc;
  const Presentation& p = f.presentation;
  doc.max_degree = p.truncation();
  doc.algebras.push_back(AlgebraBlock{p.name(), p.space(), p.differentials(), {}, {}});
  if (f.fibration)
    doc.fibrations.push_back(FibrationBlock{"E", p.name(), f.fibration->fiber, f.fibration->u, {}});
  return doc;
}

}  // namespace cdga

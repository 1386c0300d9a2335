#ifndef CDGA_TESTS_ORACLE_HPP
#define CDGA_TESTS_ORACLE_HPP

// Brute-force cohomology of a free CDGA, sharing no code with the library:
// exponent vectors for monomials, a closed-form Koszul sign, Leibniz applied
// factor by factor, and fraction-based elimination on plain nested vectors.

#include "cdga/presentation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Exps = std::vector<int>;
using Elem = std::map<Exps, Q>;

struct Algebra {
  std::vector<int> deg;
  std::vector<Elem> dgen;
};

inline Algebra from_presentation(const cdga::Presentation& p) {
  Algebra a;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) a.deg.push_back(p.generators()[i].degree);
  for (std::size_t i = 0; i < n; ++i) {
    Elem e;
    for (const auto& [m, c] : p.differential(i).terms()) {
      Exps x(n, 0);
      for (const auto& f : m.factors()) x[f.generator] = static_cast<int>(f.exponent);
      std::ostringstream os;
      os << c;
      e[x] = Q(os.str());
    }
    a.dgen.push_back(e);
  }
  return a;
}

inline int degree(const Algebra& a, const Exps& x) {
  int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * a.deg[i];
  return s;
}

// x * y as (sign, exps); sign 0 if an odd generator repeats. The sign counts
// pairs (odd factor of x with index i, odd factor of y with index j < i).
inline std::pair<int, Exps> times(const Algebra& a, const Exps& x, const Exps& y) {
  Exps z(x.size());
  long swaps = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    z[i] = x[i] + y[i];
    if (a.deg[i] % 2 != 0 && z[i] > 1) return {0, z};
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (a.deg[i] % 2 == 0 || x[i] == 0) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (a.deg[j] % 2 != 0) swaps += y[j];
  }
  return {swaps % 2 ? -1 : 1, z};
}

inline Elem times(const Algebra& a, const Elem& p, const Elem& q) {
  Elem r;
  for (const auto& [x, c] : p)
    for (const auto& [y, e] : q) {
      auto [s, z] = times(a, x, y);
      if (s == 0) continue;
      r[z] += c * e * s;
      if (r[z] == 0) r.erase(z);
    }
  return r;
}

inline Elem single(const Exps& x) { return Elem{{x, Q(1)}}; }

// d of a monomial A g^e B, one generator power at a time: the term for g is
// (-1)^{|A|} A d(g^e) B.
inline Elem d_monomial(const Algebra& a, const Exps& x) {
  Elem out;
  const std::size_t n = x.size();
  int before = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Exps pre(n, 0), rest(n, 0), post(n, 0);
    for (std::size_t j = 0; j < i; ++j) pre[j] = x[j];
    rest[i] = x[i] - 1;
    for (std::size_t j = i + 1; j < n; ++j) post[j] = x[j];
    // d(g^e) = e g^{e-1} dg for even g, dg for odd g (e = 1)
    Elem term = times(a, single(rest), a.dgen[i]);
    for (auto& kv : term) kv.second *= x[i];
    term = times(a, times(a, single(pre), term), single(post));
    const int sign = (before % 2 != 0) ? -1 : 1;
    for (const auto& [m, c] : term) {
      out[m] += c * sign;
      if (out[m] == 0) out.erase(m);
    }
    before += x[i] * a.deg[i];
  }
  return out;
}

inline void enumerate(const Algebra& a, int k, std::size_t i, Exps& cur, std::vector<Exps>& out) {
  if (i == a.deg.size()) {
    if (k == 0) out.push_back(cur);
    return;
  }
  const int g = a.deg[i];
  const int cap = g % 2 != 0 ? 1 : k / g;
  for (int e = 0; e <= cap && e * g <= k; ++e) {
    cur[i] = e;
    enumerate(a, k - e * g, i + 1, cur, out);
  }
  cur[i] = 0;
}

inline std::vector<Exps> basis(const Algebra& a, int k) {
  std::vector<Exps> out;
  if (k < 0) return out;
  Exps cur(a.deg.size(), 0);
  enumerate(a, k, 0, cur, out);
  return out;
}

inline std::size_t rank(std::vector<std::vector<Q>> m) {
  std::size_t r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const Q f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// rank of d: A^k -> A^{k+1}
inline std::size_t d_rank(const Algebra& a, int k) {
  const auto src = basis(a, k);
  const auto tgt = basis(a, k + 1);
  if (src.empty() || tgt.empty()) return 0;
  std::map<Exps, std::size_t> pos;
  for (std::size_t i = 0; i < tgt.size(); ++i) pos[tgt[i]] = i;
  std::vector<std::vector<Q>> m(src.size(), std::vector<Q>(tgt.size()));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [x, c] : d_monomial(a, src[j])) m[j][pos.at(x)] = c;
  return rank(std::move(m));
}

inline Elem from_poly(const cdga::Poly& p) {
  Elem e;
  const std::size_t n = p.space()->size();
  for (const auto& [m, c] : p.terms()) {
    Exps x(n, 0);
    for (const auto& f : m.factors()) x[f.generator] = static_cast<int>(f.exponent);
    std::ostringstream os;
    os << c;
    e[x] = Q(os.str());
  }
  return e;
}

inline Elem d(const Algebra& a, const Elem& e) {
  Elem out;
  for (const auto& [x, c] : e)
    for (const auto& [y, v] : d_monomial(a, x)) {
      out[y] += c * v;
      if (out[y] == 0) out.erase(y);
    }
  return out;
}

// v (homogeneous of degree k) lies in d(A^{k-1})
inline bool is_exact(const Algebra& a, int k, const Elem& v) {
  const auto src = basis(a, k - 1);
  const auto tgt = basis(a, k);
  std::map<Exps, std::size_t> pos;
  for (std::size_t i = 0; i < tgt.size(); ++i) pos[tgt[i]] = i;
  std::vector<std::vector<Q>> m(src.size(), std::vector<Q>(tgt.size()));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [x, c] : d_monomial(a, src[j])) m[j][pos.at(x)] = c;
  const std::size_t r = rank(m);
  std::vector<Q> row(tgt.size());
  for (const auto& [x, c] : v) row[pos.at(x)] = c;
  m.push_back(row);
  return rank(std::move(m)) == r;
}

using Matrix = std::vector<std::vector<Q>>;  // rows

// Solutions x of m x = rhs (rhs empty: the homogeneous system), as a
// particular solution followed by a nullspace basis; nullopt if inconsistent.
inline std::optional<std::pair<std::vector<Q>, std::vector<std::vector<Q>>>> solve(Matrix m, std::vector<Q> rhs,
                                                                                   std::size_t cols) {
  const std::size_t rows = m.size();
  if (rhs.empty()) rhs.assign(rows, Q(0));
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(rhs[i]);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Q lead = m[r][c];
    for (auto& x : m[r]) x /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Q f = m[i][c];
      for (std::size_t j = 0; j <= cols; ++j) m[i][j] -= f * m[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][cols] != 0) return std::nullopt;
  std::vector<Q> x(cols, Q(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][cols];
  std::vector<std::vector<Q>> null;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    std::vector<Q> v(cols, Q(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    null.push_back(v);
  }
  return std::make_pair(x, null);
}

// d: span(src) -> span(tgt), one row per target monomial
inline Matrix d_matrix(const Algebra& a, const std::vector<Exps>& src, const std::vector<Exps>& tgt) {
  std::map<Exps, std::size_t> pos;
  for (std::size_t i = 0; i < tgt.size(); ++i) pos[tgt[i]] = i;
  Matrix m(tgt.size(), std::vector<Q>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [x, c] : d_monomial(a, src[j])) m[pos.at(x)][j] = c;
  return m;
}

inline std::vector<Q> coords(const std::vector<Exps>& basis, const Elem& e) {
  std::vector<Q> v(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto it = e.find(basis[i]);
    if (it != e.end()) v[i] = it->second;
  }
  return v;
}

inline Elem element(const std::vector<Exps>& basis, const std::vector<Q>& v) {
  Elem e;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (v[i] != 0) e[basis[i]] = v[i];
  return e;
}

// Some x of degree k-1 with d x = v.
inline std::optional<Elem> primitive(const Algebra& a, int k, const Elem& v) {
  const auto src = basis(a, k - 1), tgt = basis(a, k);
  if (src.empty()) return v.empty() ? std::optional<Elem>(Elem{}) : std::nullopt;
  auto s = solve(d_matrix(a, src, tgt), coords(tgt, v), src.size());
  if (!s) return std::nullopt;
  return element(src, s->first);
}

inline std::vector<Elem> cocycles(const Algebra& a, int k) {
  const auto src = basis(a, k), tgt = basis(a, k + 1);
  std::vector<Elem> out;
  if (tgt.empty()) {
    for (const auto& x : src) out.push_back(single(x));
    return out;
  }
  auto s = solve(d_matrix(a, src, tgt), {}, src.size());
  for (const auto& v : s->second) out.push_back(element(src, v));
  return out;
}

// v lies in the span of gens plus the coboundaries of degree k
inline bool in_span_mod_exact(const Algebra& a, int k, const std::vector<Elem>& gens, const Elem& v) {
  const auto tgt = basis(a, k), src = basis(a, k - 1);
  Matrix m(tgt.size());
  std::size_t cols = 0;
  if (!src.empty()) {
    m = d_matrix(a, src, tgt);
    cols = src.size();
  }
  for (const auto& g : gens) {
    const auto c = coords(tgt, g);
    for (std::size_t i = 0; i < tgt.size(); ++i) m[i].push_back(c[i]);
    ++cols;
  }
  if (cols == 0) return v.empty();
  return solve(m, coords(tgt, v), cols).has_value();
}

inline Elem scaled(Elem e, const Q& c) {
  for (auto& kv : e) kv.second *= c;
  return e;
}

inline Elem plus(Elem e, const Elem& f) {
  for (const auto& [x, c] : f) {
    e[x] += c;
    if (e[x] == 0) e.erase(x);
  }
  return e;
}

// <x, y, z> for cocycles of degrees p, q, r: defined, and its value does not
// contain zero, i.e. s z + (-1)^{p+1} x t is not in x H + H z + exact.
inline bool massey_nonzero(const Algebra& a, const Elem& x, int p, const Elem& y, int q, const Elem& z, int r) {
  if (!d(a, x).empty() || !d(a, y).empty() || !d(a, z).empty()) return false;
  const auto s = primitive(a, p + q, times(a, x, y));
  const auto t = primitive(a, q + r, times(a, y, z));
  if (!s || !t) return false;
  const Elem v = plus(times(a, *s, z), scaled(times(a, x, *t), Q(p % 2 == 0 ? -1 : 1)));
  const int deg = p + q + r - 1;
  if (!d(a, v).empty()) return false;
  std::vector<Elem> indet;
  for (const auto& c : cocycles(a, q + r - 1)) indet.push_back(times(a, x, c));
  for (const auto& c : cocycles(a, p + q - 1)) indet.push_back(times(a, c, z));
  return !in_span_mod_exact(a, deg, indet, v);
}

inline std::vector<long> betti(const Algebra& a, int max_degree) {
  std::vector<long> b;
  std::size_t prev = 0;
  for (int k = 0; k <= max_degree; ++k) {
    const std::size_t r = d_rank(a, k);
    b.push_back(static_cast<long>(basis(a, k).size() - r - prev));
    prev = r;
  }
  return b;
}

inline std::vector<long> betti(const cdga::Presentation& p, int max_degree) {
  return betti(from_presentation(p), max_degree);
}

}  // namespace oracle

#endif  // CDGA_TESTS_ORACLE_HPP

#include "cdga/sullivan.hpp"

#include <algorithm>
#include <variant>

namespace cdga {

namespace {

std::vector<std::vector<std::size_t>> generators_by_degree(const GeneratorList& gens, int top) {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(std::max(top, 0) + 2));
  for (std::size_t i = 0; i < gens.size(); ++i) out[static_cast<std::size_t>(gens[i].degree)].push_back(i);
  return out;
}

// Coefficient matrix of the linear part of d from the generators `from` to the generators `to`.
QMatrix linear_part_matrix(const Presentation& pres, const std::vector<std::size_t>& from,
                           const std::vector<std::size_t>& to) {
  QMatrix m = QMatrix::Zero(static_cast<Index>(to.size()), static_cast<Index>(from.size()));
  for (std::size_t j = 0; j < from.size(); ++j) {
    const Poly& dg = pres.differential(from[j]);
    for (std::size_t i = 0; i < to.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(j)) = dg.coefficient(Monomial::generator(to[i]));
  }
  return m;
}

Poly vector_to_generators(const Presentation& pres, const std::vector<std::size_t>& gens, const QVector& v) {
  Poly p = pres.zero();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (v(static_cast<Index>(i)) != 0) p.add_term(Monomial::generator(gens[i]), v(static_cast<Index>(i)));
  return p;
}

std::vector<Index> free_columns(const QMatrix& m) {
  const auto r = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> out;
  for (Index j = 0; j < m.cols(); ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) out.push_back(j);
  return out;
}

// Inverse of g up to generator degree `bound`; generators above it go to 0.
// Returns the failing degree when the linear part is not invertible.
std::variant<Morphism, int> invert_up_to(const Morphism& g, int bound) {
  const Presentation& src = g.source();
  const Presentation& tgt = g.target();
  const int top = std::max(src.generators().max_degree(), tgt.generators().max_degree());
  const auto src_by = generators_by_degree(src.generators(), top);
  const auto tgt_by = generators_by_degree(tgt.generators(), top);
  std::vector<Poly> h(tgt.size(), src.zero());
  for (int k = 1; k <= std::min(top, bound); ++k) {
    const auto& s = src_by[static_cast<std::size_t>(k)];
    const auto& t = tgt_by[static_cast<std::size_t>(k)];
    if (s.size() != t.size()) return k;
    if (s.empty()) continue;
    QMatrix lin(static_cast<Index>(t.size()), static_cast<Index>(s.size()));
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Poly& img = g.image(s[j]);
      for (std::size_t i = 0; i < t.size(); ++i)
        lin(static_cast<Index>(i), static_cast<Index>(j)) = img.coefficient(Monomial::generator(t[i]));
    }
    if (rank(lin) != static_cast<Index>(s.size())) return k;
    for (std::size_t i = 0; i < t.size(); ++i) {
      QVector e = QVector::Zero(static_cast<Index>(t.size()));
      e(static_cast<Index>(i)) = 1;
      const QVector y = *solve(lin, e);
      const Poly ypoly = vector_to_generators(src, s, y);
      const Poly rest = g.apply(ypoly) - tgt.generator(t[i]);
      h[t[i]] = ypoly - substitute(rest, h, src.space());
    }
  }
  return Morphism(tgt, src, std::move(h));
}

struct ModelBuilder {
  std::vector<Generator> gens;
  std::vector<std::vector<std::pair<std::vector<Factor>, Rational>>> diffs;  // by generator index
  std::vector<QVector> images;
  std::vector<std::string> provenance;
  std::vector<int> counters;
  std::string name;
  int bound;

  Presentation presentation() const {
    Space space = make_space(gens);
    std::vector<Poly> d;
    for (const auto& terms : diffs) {
      Poly p(space);
      for (const auto& [fs, c] : terms) p.add_term(Monomial(fs), c);
      d.push_back(std::move(p));
    }
    return Presentation(name, space, std::move(d), bound);
  }

  void add(int degree, const Poly& differential, QVector image, std::string why) {
    if (counters.size() <= static_cast<std::size_t>(degree)) counters.resize(static_cast<std::size_t>(degree) + 1, 0);
    const int idx = ++counters[static_cast<std::size_t>(degree)];
    gens.push_back(Generator{"v" + std::to_string(degree) + "_" + std::to_string(idx), degree});
    std::vector<std::pair<std::vector<Factor>, Rational>> terms;
    for (const auto& [m, c] : differential.terms()) terms.emplace_back(m.factors(), c);
    diffs.push_back(std::move(terms));
    images.push_back(std::move(image));
    provenance.push_back(std::move(why));
  }
};

}  // namespace

bool is_minimal(const Presentation& pres) {
  for (std::size_t i = 0; i < pres.size(); ++i) {
    if (pres.generators()[i].degree < 2) return false;
    if (!pres.differential(i).is_decomposable()) return false;
  }
  return true;
}

QMatrix induced_cohomology_map(const AlgebraMap& f, const CohomologyTable& src, const CohomologyTable& tgt, int k) {
  const auto* src_alg = dynamic_cast<const FreeAlgebra*>(&src.algebra());
  if (src_alg == nullptr) throw std::invalid_argument("induced_cohomology_map: source table is not over a free algebra");
  const QMatrix chain = f.chain_matrix(*src_alg, k);
  QMatrix out(tgt.betti(k), src.betti(k));
  for (Index i = 0; i < src.betti(k); ++i) out.col(i) = tgt.class_of(k, chain * src.representative(k, i));
  return out;
}

MinimalModel minimal_model(std::shared_ptr<const GradedAlgebra> target, int max_degree, const std::string& name) {
  if (max_degree < 1) throw ModelError("minimal_model: degree bound must be positive");
  const CohomologyTable T(target, max_degree + 1);
  if (T.betti(0) != 1) throw ModelError("minimal_model: target is not connected");
  if (T.betti(1) != 0) throw ModelError("minimal_model: target is not simply connected");

  ModelBuilder b;
  b.name = name;
  b.bound = max_degree;
  for (int k = 2; k <= max_degree; ++k) {
    {
      const Presentation M = b.presentation();
      auto alg = make_free_algebra(M, k + 1);
      const CohomologyTable H(alg, k);
      const AlgebraMap f(M, target, b.images);
      const QMatrix F = induced_cohomology_map(f, H, T, k);
      std::vector<QVector> cols;
      for (Index j = 0; j < F.cols(); ++j) cols.push_back(F.col(j));
      const Quotient<Rational> coker(T.betti(k), cols);
      for (Index j : coker.representative_positions()) {
        const QVector& rep = T.representative(k, j);
        b.add(k, M.zero(), rep, "closed, maps to the class of " + target->format(k, rep));
      }
    }
    {
      const Presentation M = b.presentation();
      auto alg = make_free_algebra(M, k + 2);
      const CohomologyTable H(alg, k + 1);
      const AlgebraMap f(M, target, b.images);
      const QMatrix F = induced_cohomology_map(f, H, T, k + 1);
      for (const QVector& kappa : kernel_basis(F)) {
        const QVector zeta = H.cocycle_of(k + 1, kappa);
        const Poly zpoly = alg->to_poly(k + 1, zeta);
        const QVector fz = f.evaluate(zpoly, k + 1);
        auto a = T.primitive(k + 1, fz);
        if (!a) throw LiftingError("minimal_model: image of a kernel class is not exact", k + 1);
        b.add(k, zpoly, *a, "kills the class of " + zpoly.to_string() + " in degree " + std::to_string(k + 1));
      }
    }
  }
  Presentation model = b.presentation();
  AlgebraMap map(model, std::move(target), b.images);
  return MinimalModel{model, std::move(map), std::nullopt, std::move(b.provenance), max_degree};
}

MinimalModel identity_model(const Presentation& pres) {
  const int n = pres.truncation();
  auto id = Morphism::identity(pres);
  std::vector<std::string> why(pres.size(), "input generator");
  return MinimalModel{pres, AlgebraMap::from_morphism(id, n + 2), id, std::move(why), n};
}

MinimalModel minimal_model(const Presentation& pres) { return minimal_model(pres, pres.truncation()); }

MinimalModel minimal_model(const Presentation& pres, int max_degree) {
  for (const auto& g : pres.generators().generators())
    if (g.degree < 2) throw ModelError("minimal_model: generator '" + g.name + "' has degree " + std::to_string(g.degree));
  if (is_minimal(pres)) return identity_model(pres.with_truncation(max_degree));
  auto target = make_free_algebra(pres, max_degree + 2);
  MinimalModel mm = minimal_model(target, max_degree, pres.name() + "_min");
  std::vector<Poly> images;
  for (std::size_t i = 0; i < mm.model.size(); ++i)
    images.push_back(target->to_poly(mm.model.generators()[i].degree, mm.map.image(i)));
  mm.morphism = Morphism(mm.model, pres, std::move(images));
  return mm;
}

QuasiIsoReport verify_quasi_iso(const AlgebraMap& f, int max_degree) {
  QuasiIsoReport rep;
  rep.degree_bound = max_degree;
  const GradedAlgebra& tgt = *f.target();
  const Presentation& src = f.source();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const int deg = src.generators()[i].degree;
    if (deg > max_degree || deg + 1 > tgt.top_degree()) continue;
    const QVector rhs = f.evaluate(src.differential(i), deg + 1);
    const bool ok = tgt.zero_differential() ? all_zero(rhs) : tgt.differential(deg) * f.image(i) == rhs;
    if (!ok) {
      rep.chain_violation = src.generators()[i].name;
      return rep;
    }
  }
  const CohomologyTable hs(make_free_algebra(src, max_degree + 1), max_degree);
  const CohomologyTable ht(f.target(), max_degree);
  for (int k = 0; k <= max_degree; ++k) {
    const QMatrix F = induced_cohomology_map(f, hs, ht, k);
    DegreeComparison c{k, hs.betti(k), ht.betti(k), rank(F)};
    if (!c.iso() && !rep.first_failure) rep.first_failure = k;
    rep.degrees.push_back(c);
  }
  return rep;
}

QuasiIsoReport verify_quasi_iso(const Morphism& f, int max_degree) {
  return verify_quasi_iso(AlgebraMap::from_morphism(f, max_degree + 1), max_degree);
}

QuasiIsoReport verify_quasi_iso(const Morphism& f) { return verify_quasi_iso(f, f.source().truncation()); }

Retraction eliminate_linear_part(const Presentation& pres) {
  const GeneratorList& G = pres.generators();
  const int top = G.empty() ? 0 : G.max_degree();
  const auto by = generators_by_degree(G, top);

  struct Level {
    std::vector<QVector> kept;      // W': closed linear combinations surviving the quotient
    std::vector<std::size_t> named; // generator each kept vector is named after
    std::vector<Index> cancelled;   // U: local positions of generators sent to 0
    QMatrix lin;                    // linear part of d from this degree to the next
  };
  std::vector<Level> levels(static_cast<std::size_t>(top + 2));
  for (int k = 1; k <= top; ++k) {
    Level& lv = levels[static_cast<std::size_t>(k)];
    const auto& gk = by[static_cast<std::size_t>(k)];
    lv.lin = linear_part_matrix(pres, gk, by[static_cast<std::size_t>(k + 1)]);
    const auto kernel = kernel_basis(lv.lin);
    const auto fc = free_columns(lv.lin);
    lv.cancelled = Quotient<Rational>(static_cast<Index>(gk.size()), kernel).representative_positions();
    std::vector<QVector> image_coords;
    if (k > 1) {
      const Level& prev = levels[static_cast<std::size_t>(k - 1)];
      for (Index u : prev.cancelled) {
        const QVector img = prev.lin.col(u);
        QVector c(static_cast<Index>(fc.size()));
        for (std::size_t i = 0; i < fc.size(); ++i) c(static_cast<Index>(i)) = img(fc[i]);
        image_coords.push_back(std::move(c));
      }
    }
    const Quotient<Rational> survivors(static_cast<Index>(kernel.size()), image_coords);
    for (Index pos : survivors.representative_positions()) {
      lv.kept.push_back(kernel[static_cast<std::size_t>(pos)]);
      lv.named.push_back(gk[static_cast<std::size_t>(fc[static_cast<std::size_t>(pos)])]);
    }
  }

  std::vector<std::pair<std::size_t, std::pair<int, std::size_t>>> order;  // original index -> (degree, slot)
  for (int k = 1; k <= top; ++k) {
    const Level& lv = levels[static_cast<std::size_t>(k)];
    for (std::size_t s = 0; s < lv.named.size(); ++s) order.push_back({lv.named[s], {k, s}});
  }
  std::sort(order.begin(), order.end());
  std::vector<Generator> new_gens;
  std::vector<std::vector<std::size_t>> new_index(static_cast<std::size_t>(top + 2));
  for (int k = 1; k <= top; ++k) new_index[static_cast<std::size_t>(k)].resize(levels[static_cast<std::size_t>(k)].kept.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_gens.push_back(G[order[i].first]);
    new_index[static_cast<std::size_t>(order[i].second.first)][order[i].second.second] = i;
  }
  Space space = make_space(std::move(new_gens));

  std::vector<Poly> pi(G.size(), Poly(space));
  for (int k = 1; k <= top; ++k) {
    const Level& lv = levels[static_cast<std::size_t>(k)];
    const auto& gk = by[static_cast<std::size_t>(k)];
    if (gk.empty()) continue;
    const Index n = static_cast<Index>(gk.size());
    std::vector<QVector> basis = lv.kept;
    std::vector<Poly> basis_image;
    for (std::size_t s = 0; s < lv.kept.size(); ++s)
      basis_image.push_back(Poly::generator(space, new_index[static_cast<std::size_t>(k)][s]));
    for (Index u : lv.cancelled) {
      QVector e = QVector::Zero(n);
      e(u) = 1;
      basis.push_back(std::move(e));
      basis_image.push_back(Poly(space));
    }
    if (k > 1) {
      const Level& prev = levels[static_cast<std::size_t>(k - 1)];
      for (Index u : prev.cancelled) {
        basis.push_back(prev.lin.col(u));
        const Poly& du = pres.differential(by[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(u)]);
        basis_image.push_back(-substitute(du - du.linear_part(), pi, space));
      }
    }
    const QMatrix Q = columns(n, basis);
    for (Index j = 0; j < n; ++j) {
      QVector e = QVector::Zero(n);
      e(j) = 1;
      auto c = solve(Q, e);
      if (!c) throw std::logic_error("eliminate_linear_part: adapted basis is singular");
      Poly img(space);
      for (std::size_t s = 0; s < basis_image.size(); ++s)
        if ((*c)(static_cast<Index>(s)) != 0) img += (*c)(static_cast<Index>(s)) * basis_image[s];
      pi[gk[static_cast<std::size_t>(j)]] = std::move(img);
    }
  }

  std::vector<Poly> diffs(space->size(), Poly(space));
  for (int k = 1; k <= top; ++k) {
    const Level& lv = levels[static_cast<std::size_t>(k)];
    for (std::size_t s = 0; s < lv.kept.size(); ++s) {
      const Poly w = vector_to_generators(pres, by[static_cast<std::size_t>(k)], lv.kept[s]);
      diffs[new_index[static_cast<std::size_t>(k)][s]] = substitute(d(w, pres), pi, space);
    }
  }
  Presentation minimal(pres.name(), space, std::move(diffs), pres.truncation());
  Morphism projection(pres, minimal, std::move(pi));
  return Retraction{minimal, projection};
}

std::optional<Morphism> invert(const Morphism& g) {
  const int top = std::max(g.source().generators().empty() ? 0 : g.source().generators().max_degree(),
                           g.target().generators().empty() ? 0 : g.target().generators().max_degree());
  auto r = invert_up_to(g, top);
  if (auto* m = std::get_if<Morphism>(&r)) return *m;
  return std::nullopt;
}

Morphism sullivan_representative(const Morphism& f, const MinimalModel& mA, const MinimalModel& mB) {
  if (!mA.morphism || !mB.morphism)
    throw std::invalid_argument("sullivan_representative: models must map into presentations");
  const Morphism fm = compose(f, *mA.morphism);
  const Retraction r = eliminate_linear_part(f.target());
  const Morphism g = compose(r.projection, *mB.morphism);
  const int bound = std::min(mA.degree_bound, mB.degree_bound);
  auto inv = invert_up_to(g, bound);
  if (auto* k = std::get_if<int>(&inv))
    throw LiftingError("sullivan_representative: model of the target is not minimal-equivalent in degree " +
                           std::to_string(*k),
                       *k);
  const Morphism& h = std::get<Morphism>(inv);
  Morphism out = compose(h, compose(r.projection, fm));
  if (auto bad = out.first_chain_violation())
    throw LiftingError("sullivan_representative: lift is not a chain map at " + out.source().generators()[*bad].name,
                       out.source().generators()[*bad].degree);
  return out;
}

bool hurewicz_injective_in_degree(const MinimalModel& m, int k) {
  for (std::size_t i = 0; i < m.model.size(); ++i)
    if (m.model.generators()[i].degree == k && !m.model.differential(i).is_zero()) return false;
  return true;
}

int rational_connectivity(const MinimalModel& m) {
  int lowest = m.degree_bound + 1;
  for (const auto& g : m.model.generators().generators()) lowest = std::min(lowest, g.degree);
  return lowest - 1;
}

bool is_coformal(const MinimalModel& m) {
  for (const auto& dg : m.model.differentials())
    for (const auto& [mono, c] : dg.terms())
      if (mono.word_length() != 2) return false;
  return true;
}

}  // namespace cdga

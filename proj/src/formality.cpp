#include "cdga/formality.hpp"

#include <algorithm>

namespace cdga {

namespace {

const FreeAlgebra& free_of(const CohomologyTable& t) {
  return dynamic_cast<const FreeAlgebra&>(t.algebra());
}

std::shared_ptr<const CohomologyAlgebra> cohomology_algebra(const Presentation& pres, int top) {
  auto table = std::make_shared<const CohomologyTable>(make_free_algebra(pres, top + 1), top);
  return std::make_shared<const CohomologyAlgebra>(table);
}

// Pull the class mu.image(i) back to a cocycle of mu's target presentation
// and take its class in `target`.
QVector transfer_class(const AlgebraMap& mu, std::size_t i, int deg, const Presentation& into,
                       const CohomologyTable& target) {
  const auto& h = dynamic_cast<const CohomologyAlgebra&>(*mu.target());
  const FreeAlgebra& src_alg = free_of(h.table());
  const Poly cocycle = transport(src_alg.to_poly(deg, h.table().cocycle_of(deg, mu.image(i))), into.space());
  return target.class_of(deg, free_of(target).to_vector(cocycle, deg));
}

}  // namespace

bool Complement::unique_in_degree(int i) const {
  std::size_t total = 0;
  std::size_t n = 0;
  for (std::size_t g = 0; g < original.size(); ++g) {
    if (original.generators()[g].degree != i) continue;
    ++total;
    if (in_complement[g]) ++n;
  }
  return n == 0 || n == total;
}

Complement canonical_complement(const Presentation& pres) {
  const int N = pres.truncation();
  const GeneratorList& G = pres.generators();
  auto alg = make_free_algebra(pres, N + 2);
  std::vector<bool> in_n(G.size(), false);
  std::vector<Poly> theta, theta_inv;
  for (std::size_t g = 0; g < G.size(); ++g) {
    theta.push_back(pres.generator(g));
    theta_inv.push_back(pres.generator(g));
  }
  for (int i = 1; i <= N + 1; ++i) {
    std::vector<std::size_t> gens;
    std::vector<Index> at;  // position of each generator in the degree-i basis
    for (std::size_t g = 0; g < G.size(); ++g) {
      if (G[g].degree != i) continue;
      gens.push_back(g);
      const QVector e = alg->to_vector(pres.generator(g), i);
      Index pos = 0;
      while (e(pos) == 0) ++pos;
      at.push_back(pos);
    }
    if (gens.empty()) continue;
    const QMatrix& D = alg->differential(i);
    const Index n = static_cast<Index>(gens.size());

    // Generator parts of closed elements, last generator first so that C
    // takes the latest generators it can.
    std::vector<QVector> parts;
    for (const QVector& k : kernel_basis(D)) {
      QVector v(n);
      for (Index j = 0; j < n; ++j) v(n - 1 - j) = k(at[static_cast<std::size_t>(j)]);
      if (!all_zero(v)) parts.push_back(v);
    }
    std::vector<bool> closable(gens.size(), false);
    std::vector<Poly> kf;
    std::vector<std::size_t> cgen;
    if (!parts.empty()) {
      const auto r = rref(QMatrix(columns(n, parts).transpose()));
      std::vector<Index> decomposable;
      std::vector<bool> is_gen(static_cast<std::size_t>(alg->dim(i)), false);
      for (Index a : at) is_gen[static_cast<std::size_t>(a)] = true;
      for (Index c = 0; c < alg->dim(i); ++c)
        if (!is_gen[static_cast<std::size_t>(c)]) decomposable.push_back(c);
      QMatrix Ddec(D.rows(), static_cast<Index>(decomposable.size()));
      for (std::size_t c = 0; c < decomposable.size(); ++c) Ddec.col(static_cast<Index>(c)) = D.col(decomposable[c]);
      for (std::size_t row = 0; row < r.pivots.size(); ++row) {
        const std::size_t j = static_cast<std::size_t>(n - 1 - r.pivots[row]);
        closable[j] = true;
        QVector v = QVector::Zero(alg->dim(i));
        for (Index t = 0; t < n; ++t) v(at[static_cast<std::size_t>(t)]) = r.reduced(static_cast<Index>(row), n - 1 - t);
        // the decomposable part that closes it
        const auto w = solve(Ddec, QVector(-(D * v)));
        if (!w) throw std::logic_error("canonical_complement: generator part of a cocycle cannot be closed");
        for (std::size_t c = 0; c < decomposable.size(); ++c) v(decomposable[c]) = (*w)(static_cast<Index>(c));
        cgen.push_back(gens[j]);
        kf.push_back(alg->to_poly(i, v));
      }
    }
    for (std::size_t j = 0; j < gens.size(); ++j) in_n[gens[j]] = !closable[j];
    std::vector<Poly> inv(cgen.size(), pres.zero());
    for (std::size_t c = 0; c < cgen.size(); ++c)
      inv[c] = pres.generator(cgen[c]) - substitute(kf[c] - pres.generator(cgen[c]), theta_inv, pres.space());
    for (std::size_t c = 0; c < cgen.size(); ++c) {
      theta[cgen[c]] = kf[c];
      theta_inv[cgen[c]] = inv[c];
    }
  }
  std::vector<Poly> diffs;
  for (std::size_t g = 0; g < G.size(); ++g)
    diffs.push_back(substitute(d(theta[g], pres), theta_inv, pres.space()));
  Presentation adapted(pres.name(), pres.space(), std::move(diffs), N);
  Morphism to_original(adapted, pres, theta);
  Morphism from_original(pres, adapted, theta_inv);
  return Complement{pres, adapted, to_original, from_original, std::move(in_n)};
}

std::string Witness::describe() const {
  if (kind == WitnessKind::Massey)
    return "Massey product <" + triple[0].to_string() + ", " + triple[1].to_string() + ", " + triple[2].to_string() +
           "> = [" + element.to_string() + "] in degree " + std::to_string(degree) + ", not in its indeterminacy";
  return "closed non-exact element " + element.to_string() + " of the ideal I(N) in degree " + std::to_string(degree);
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Formal:
      return "Formal";
    case VerdictKind::NonFormal:
      return "NonFormal";
    case VerdictKind::Inconclusive:
      return "Inconclusive";
  }
  return "";
}

std::variant<AlgebraMap, Obstruction> build_certificate(const Presentation& pres, const Complement& complement) {
  const int N = pres.truncation();
  auto target = cohomology_algebra(pres, N + 1);
  const CohomologyTable& H = target->table();
  const FreeAlgebra& alg = free_of(H);
  const Presentation& adapted = complement.adapted;
  std::vector<QVector> images;
  for (std::size_t g = 0; g < pres.size(); ++g) {
    const int deg = pres.generators()[g].degree;
    if (deg > N + 1) {
      images.emplace_back();
    } else if (complement.in_complement[g]) {
      images.push_back(QVector::Zero(H.betti(deg)));
    } else {
      images.push_back(H.class_of(deg, alg.to_vector(complement.to_original.image(g), deg)));
    }
  }
  AlgebraMap mu(adapted, target, std::move(images));
  for (std::size_t g = 0; g < adapted.size(); ++g) {
    const int deg = adapted.generators()[g].degree;
    if (deg > N) continue;
    if (!all_zero(mu.evaluate(adapted.differential(g), deg + 1)))
      return Obstruction{adapted.generators()[g].name, deg};
  }
  return mu.after(complement.from_original);
}

std::optional<Witness> massey_witness(const Presentation& pres, int max_degree) {
  const CohomologyTable H(make_free_algebra(pres, max_degree + 1), max_degree);
  const FreeAlgebra& alg = free_of(H);
  // classes x of degree k with x*b = 0 (or b*x = 0); they contain the basis
  // classes that already annihilate b
  auto annihilator = [&](int k, const CohomologyClass& b, bool left) {
    std::vector<QVector> prods;
    for (Index i = 0; i < H.betti(k); ++i) {
      const auto e = basis_class(H, k, i);
      prods.push_back(left ? H.product(k, e.coords, b.degree, b.coords) : H.product(b.degree, b.coords, k, e.coords));
    }
    return kernel_basis(columns(H.betti(k + b.degree), prods));
  };
  for (int t = 1; t <= max_degree; ++t) {
    for (int p = 1; p <= t; ++p) {
      for (int q = 1; p + q <= t; ++q) {
        const int r = t + 1 - p - q;
        if (r < 1 || H.betti(p) == 0 || H.betti(q) == 0 || H.betti(r) == 0) continue;
        for (Index j = 0; j < H.betti(q); ++j) {
          const auto b = basis_class(H, q, j);
          const auto left = annihilator(p, b, true);
          const auto right = annihilator(r, b, false);
          for (const QVector& ac : left) {
            for (const QVector& cc : right) {
              const CohomologyClass a{p, ac}, c{r, cc};
              if (!massey_defined(H, a, b, c)) continue;
              const MasseyResult m = massey_triple(H, a, b, c);
              if (m.contains_zero) continue;
              return Witness{.kind = WitnessKind::Massey,
                             .degree = t,
                             .element = alg.to_poly(t, m.representative),
                             .triple = {alg.to_poly(p, H.cocycle_of(p, ac)), alg.to_poly(q, H.cocycle_of(q, b.coords)),
                                        alg.to_poly(r, H.cocycle_of(r, cc))},
                             .indeterminacy_dim = static_cast<Index>(m.indeterminacy.size())};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// First closed, non-exact element of the monomial ideal generated by the
// generators with in_ideal set, scanning degrees 1..max_degree.
std::optional<std::pair<int, QVector>> scan_ideal(const FreeAlgebra& alg, const CohomologyTable& H,
                                                   const std::vector<bool>& in_ideal) {
  for (int k = 1; k <= H.max_degree(); ++k) {
    std::vector<Index> ideal;
    const auto& basis = alg.basis(k);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (const auto& f : basis[j].factors()) {
        if (in_ideal[f.generator]) {
          ideal.push_back(static_cast<Index>(j));
          break;
        }
      }
    }
    if (ideal.empty()) continue;
    const QMatrix& D = alg.differential(k);
    QMatrix restricted(D.rows(), static_cast<Index>(ideal.size()));
    for (std::size_t j = 0; j < ideal.size(); ++j) restricted.col(static_cast<Index>(j)) = D.col(ideal[j]);
    for (const QVector& kv : kernel_basis(restricted)) {
      QVector v = QVector::Zero(alg.dim(k));
      for (std::size_t j = 0; j < ideal.size(); ++j) v(ideal[j]) = kv(static_cast<Index>(j));
      if (!H.is_exact(k, v)) return std::make_pair(k, v);
    }
  }
  return std::nullopt;
}

std::vector<bool> in_acyclic_degree(const Presentation& pres, const CohomologyTable& H) {
  std::vector<bool> out;
  for (const auto& g : pres.generators().generators())
    out.push_back(g.degree <= H.max_degree() && H.betti(g.degree) == 0);
  return out;
}

}  // namespace

std::optional<Witness> ideal_witness(const Presentation& pres, const Complement& complement) {
  const int N = pres.truncation();
  auto alg = make_free_algebra(complement.adapted, N + 1);
  const CohomologyTable H(alg, N);
  const auto found = scan_ideal(*alg, H, complement.in_complement);
  if (!found) return std::nullopt;
  Witness w{.kind = WitnessKind::IdealN,
            .degree = found->first,
            .element = complement.to_original(alg->to_poly(found->first, found->second)),
            .triple = {}};
  const std::vector<bool> acyclic = in_acyclic_degree(pres, H);
  for (const auto& [m, c] : w.element.terms()) {
    bool hit = false;
    for (const auto& f : m.factors()) hit = hit || acyclic[f.generator];
    w.complement_independent = w.complement_independent && hit;
  }
  return w;
}

std::optional<Witness> acyclic_ideal_witness(const Presentation& pres) {
  const int N = pres.truncation();
  auto alg = make_free_algebra(pres, N + 1);
  const CohomologyTable H(alg, N);
  const auto found = scan_ideal(*alg, H, in_acyclic_degree(pres, H));
  if (!found) return std::nullopt;
  return Witness{.kind = WitnessKind::IdealN,
                 .degree = found->first,
                 .element = alg->to_poly(found->first, found->second),
                 .triple = {}};
}

FormalityVerdict dgms_check(const Presentation& pres) {
  if (!is_minimal(pres)) throw std::invalid_argument("dgms_check: '" + pres.name() + "' is not minimal");
  const int N = pres.truncation();
  FormalityVerdict v;
  v.degree_bound = N;
  const Complement c = canonical_complement(pres);
  for (std::size_t g = 0; g < pres.size(); ++g) {
    if (!c.in_complement[g]) continue;
    const auto deg = static_cast<std::size_t>(pres.generators()[g].degree);
    if (v.complement.size() <= deg) v.complement.resize(deg + 1);
    v.complement[deg].push_back(pres.generators()[g].name);
  }
  const auto iw = ideal_witness(pres, c);
  if (!iw) {
    auto cert = build_certificate(pres, c);
    if (auto* mu = std::get_if<AlgebraMap>(&cert)) {
      const QuasiIsoReport rep = verify_quasi_iso(*mu, N);
      if (rep.passed()) {
        v.kind = VerdictKind::Formal;
        v.certificate = *mu;
        return v;
      }
      v.reason = "certificate is not a quasi-isomorphism in degree " + std::to_string(rep.first_failure.value_or(-1));
    } else {
      const auto& ob = std::get<Obstruction>(cert);
      v.reason = "certificate obstructed at generator " + ob.generator;
    }
  } else {
    v.reason = "non-exact closed form " + iw->element.to_string() + " in I(N) for the canonical complement";
  }
  if (auto mw = massey_witness(pres, N)) {
    v.kind = VerdictKind::NonFormal;
    v.witness = std::move(mw);
    v.reason.clear();
    return v;
  }
  auto fw = iw && iw->complement_independent ? iw : acyclic_ideal_witness(pres);
  if (fw) {
    v.kind = VerdictKind::NonFormal;
    v.witness = std::move(fw);
    v.reason.clear();
    return v;
  }
  v.kind = VerdictKind::Inconclusive;
  return v;
}

FormalityVerdict dgms_check(const MinimalModel& m) { return dgms_check(m.model); }

std::optional<Witness> nonformality_witness(const Presentation& pres) {
  if (!is_minimal(pres)) throw std::invalid_argument("nonformality_witness: '" + pres.name() + "' is not minimal");
  const auto iw = ideal_witness(pres, canonical_complement(pres));
  const int bound = iw ? iw->degree - 1 : pres.truncation();
  auto mw = bound >= 1 ? massey_witness(pres, bound) : std::nullopt;
  if (mw) return mw;
  return iw;
}

std::optional<Witness> nonformality_witness(const MinimalModel& m) { return nonformality_witness(m.model); }

Presentation tensor_product(const Presentation& a, const Presentation& b, const std::string& name) {
  std::vector<Generator> gens = a.generators().generators();
  for (const auto& g : b.generators().generators()) {
    if (a.generators().find(g.name))
      throw std::invalid_argument("tensor_product: generator '" + g.name + "' occurs in both factors");
    gens.push_back(g);
  }
  Space space = make_space(std::move(gens));
  std::vector<Poly> diffs;
  for (const auto& p : a.differentials()) diffs.push_back(transport(p, space));
  for (const auto& p : b.differentials()) diffs.push_back(transport(p, space));
  return Presentation(name.empty() ? a.name() + "*" + b.name() : name, space, std::move(diffs),
                      std::min(a.truncation(), b.truncation()));
}

FormalityVerdict product_formality(const FormalityVerdict& va, const Presentation& a, const FormalityVerdict& vb,
                                   const Presentation& b) {
  const Presentation t = tensor_product(a, b);
  FormalityVerdict v;
  v.degree_bound = t.truncation();
  for (const auto* f : {&va, &vb}) {
    if (f->kind != VerdictKind::NonFormal) continue;
    v.kind = VerdictKind::NonFormal;
    Witness w = *f->witness;
    w.element = transport(w.element, t.space());
    for (auto& p : w.triple) p = transport(p, t.space());
    v.witness = std::move(w);
    return v;
  }
  if (va.kind == VerdictKind::Inconclusive || vb.kind == VerdictKind::Inconclusive) {
    v.kind = VerdictKind::Inconclusive;
    v.reason = "a factor is inconclusive: " + (va.kind == VerdictKind::Inconclusive ? va.reason : vb.reason);
    return v;
  }
  const int N = t.truncation();
  auto target = cohomology_algebra(t, N + 1);
  std::vector<QVector> images;
  for (std::size_t g = 0; g < t.size(); ++g) {
    const int deg = t.generators()[g].degree;
    if (deg > N + 1) {
      images.emplace_back();
      continue;
    }
    const bool left = g < a.size();
    const AlgebraMap& mu = left ? *va.certificate : *vb.certificate;
    images.push_back(transfer_class(mu, left ? g : g - a.size(), deg, t, target->table()));
  }
  AlgebraMap mu(t, target, std::move(images));
  const QuasiIsoReport rep = verify_quasi_iso(mu, N);
  if (!rep.passed()) {
    v.kind = VerdictKind::Inconclusive;
    v.reason = "tensor certificate failed verification";
    return v;
  }
  v.kind = VerdictKind::Formal;
  v.certificate = std::move(mu);
  return v;
}

}  // namespace cdga

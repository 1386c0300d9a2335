#include "cdga/fibration.hpp"

#include <algorithm>
#include <map>

namespace cdga {

namespace {

using Kind = FibrationError::Kind;

const CohomologyAlgebra* as_cohomology(const AlgebraMap& f) {
  return dynamic_cast<const CohomologyAlgebra*>(f.target().get());
}

const FreeAlgebra* free_over(const CohomologyAlgebra* h) {
  return h ? dynamic_cast<const FreeAlgebra*>(&h->table().algebra()) : nullptr;
}

Poly class_cocycle(const CohomologyTable& table, int k, const QVector& coords) {
  const auto* alg = dynamic_cast<const FreeAlgebra*>(&table.algebra());
  return alg->to_poly(k, table.cocycle_of(k, coords));
}

}  // namespace

std::string Fiber::describe() const {
  switch (kind) {
    case FiberKind::EvenSphere:
      return "even sphere S^" + std::to_string(n);
    case FiberKind::OddSphere:
      return "odd sphere S^" + std::to_string(n);
    case FiberKind::ProjectiveLike:
      return "projective-like Q[z]/z^" + std::to_string(d) + ", |z| = " + std::to_string(n);
  }
  return "";
}

FibrationModel build_fibration_model(const Presentation& base, const Fiber& fiber, const Poly& u_in,
                                     const std::string& z_name, const std::string& z_prime_name,
                                     const std::string& total_name) {
  if (!is_minimal(base))
    throw FibrationError(Kind::Unsupported, "fibration base '" + base.name() + "' must be a minimal presentation");
  if (fiber.odd()) {
    if (fiber.n % 2 == 0 || fiber.n < 3)
      throw FibrationError(Kind::ParityMismatch, "odd sphere fiber needs an odd dimension >= 3, got " +
                                                     std::to_string(fiber.n));
  } else {
    if (fiber.n % 2 != 0 || fiber.n < 2)
      throw FibrationError(Kind::ParityMismatch, "even fiber generator needs an even degree >= 2, got " +
                                                     std::to_string(fiber.n));
    if (fiber.d < 2) throw FibrationError(Kind::WrongDegree, "projective-like fiber needs height d >= 2");
    if (fiber.kind == FiberKind::EvenSphere && fiber.d != 2)
      throw FibrationError(Kind::WrongDegree, "even sphere fiber has height 2");
  }
  const Poly u = transport(u_in, base.space());
  if (!u.is_zero() && u.degree() != fiber.twist_degree())
    throw FibrationError(Kind::WrongDegree, "twisting element " + u.to_string() + " must be homogeneous of degree " +
                                                std::to_string(fiber.twist_degree()));
  if (!d(u, base).is_zero())
    throw FibrationError(Kind::NotClosed, "twisting element " + u.to_string() + " is not closed");

  std::vector<Generator> gens = base.generators().generators();
  auto clash = [&](const std::string& name) {
    return std::any_of(gens.begin(), gens.end(), [&](const Generator& g) { return g.name == name; });
  };
  if (clash(z_name)) throw FibrationError(Kind::NameClash, "fiber generator '" + z_name + "' already in the base");
  gens.push_back(Generator{z_name, fiber.n});
  if (!fiber.odd()) {
    if (clash(z_prime_name) || z_prime_name == z_name)
      throw FibrationError(Kind::NameClash, "fiber generator '" + z_prime_name + "' already in use");
    gens.push_back(Generator{z_prime_name, fiber.d * fiber.n - 1});
  }
  Space space = make_space(std::move(gens));
  std::vector<Poly> diffs;
  for (const auto& dg : base.differentials()) diffs.push_back(transport(dg, space));
  const std::size_t z = base.size();
  const Poly ut = transport(u, space);
  if (fiber.odd()) {
    diffs.push_back(ut);
  } else {
    diffs.push_back(Poly(space));
    diffs.push_back(Poly::generator(space, z).pow(static_cast<unsigned>(fiber.d)) - ut);
  }
  Presentation total(total_name.empty() ? base.name() + "_E" : total_name, space, std::move(diffs),
                     base.truncation());
  FibrationModel fm{base, fiber, u, total, z, std::nullopt, false};
  if (!fiber.odd()) fm.z_prime = z + 1;
  fm.primitive = !u.is_zero() && !u.is_decomposable();
  return fm;
}

Morphism base_inclusion(const FibrationModel& fm) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < fm.base.size(); ++i) images.push_back(fm.total.generator(i));
  return Morphism(fm.base, fm.total, std::move(images));
}

ReductionResult theoremC_reduce(const FibrationModel& fm) {
  if (fm.u.is_zero()) throw FibrationError(Kind::ZeroTwist, "trivial twist: use the product of base and fiber");
  if (fm.primitive && fm.u.is_decomposable())
    throw FibrationError(Kind::NoLinearPart, "fibration marked primitive but u = " + fm.u.to_string() +
                                                 " is decomposable");
  if (!fm.primitive) {
    auto id = Morphism::identity(fm.total);
    return ReductionResult{fm.total, id, id, false, std::nullopt, Rational(1), Poly(fm.base.space())};
  }
  if (fm.fiber.odd())
    throw FibrationError(Kind::Unsupported, "the reduction applies to even and projective-like fibers only");

  const int twist = fm.fiber.twist_degree();
  std::optional<std::size_t> up;
  for (std::size_t i = 0; i < fm.base.size(); ++i) {
    if (fm.base.generators()[i].degree == twist && fm.u.coefficient(Monomial::generator(i)) != 0) {
      up = i;
      break;
    }
  }
  if (!up) throw FibrationError(Kind::DegeneratePresentation, "no generator of degree " + std::to_string(twist) +
                                                                  " occurs linearly in u");
  const Rational c = fm.u.coefficient(Monomial::generator(*up));
  const Poly rest = fm.u - Poly::generator(fm.base.space(), *up, c);

  std::vector<Generator> gens;
  for (std::size_t i = 0; i < fm.base.size(); ++i)
    if (i != *up) gens.push_back(fm.base.generators()[i]);
  gens.push_back(fm.total.generators()[fm.z]);
  Space space = make_space(std::move(gens));
  const Poly zr = Poly::generator(space, space->size() - 1);

  std::vector<Poly> phi(fm.total.size(), Poly(space));
  for (std::size_t i = 0; i < fm.base.size(); ++i) {
    if (i == *up) continue;
    phi[i] = Poly::generator(space, space->index_of(fm.base.generators()[i].name));
  }
  phi[*up] = (Rational(1) / c) * (zr.pow(static_cast<unsigned>(fm.fiber.d)) - transport(rest, space));
  phi[fm.z] = zr;

  std::vector<Poly> diffs;
  for (std::size_t i = 0; i < fm.base.size(); ++i)
    if (i != *up) diffs.push_back(substitute(fm.total.differential(i), phi, space));
  diffs.push_back(Poly(space));
  Presentation reduced(fm.total.name(), space, std::move(diffs), fm.total.truncation());

  std::vector<Poly> psi;
  for (const auto& g : space->generators()) psi.push_back(fm.total.generator(g.name));
  Morphism phi_m(fm.total, reduced, std::move(phi));
  Morphism psi_m(reduced, fm.total, std::move(psi));
  return ReductionResult{reduced, phi_m, psi_m, true, up, c, rest};
}

Poly correction_sum(const Poly& z, const Poly& u, int d, int i) {
  Poly s(z.space());
  for (int m = 0; m < i; ++m)
    s += z.pow(static_cast<unsigned>(d * (i - 1 - m))) * u.pow(static_cast<unsigned>(m));
  return s;
}

Poly closure_correction(const FibrationModel& fm, const ReductionResult& r, const Poly& x_in) {
  const Poly x = transport(x_in, r.reduced.space());
  if (!d(x, r.reduced).is_zero())
    throw FibrationError(Kind::NotClosedInReduction, "closure_correction: " + x.to_string() + " is not closed");
  const Poly y = r.psi(x);
  if (!r.primitive_case) return y;

  const Presentation& T = fm.total;
  const std::size_t up = *r.u_prime;
  const Poly u = transport(fm.u, T.space());
  const Poly z = T.generator(fm.z);
  const Poly zp = T.generator(*fm.z_prime);

  // D = sum_i c_i u^i with every c_i free of u'.
  Poly D = d(y, T);
  std::map<unsigned, Poly> coeff;
  while (!D.is_zero()) {
    unsigned k = 0;
    for (const auto& [m, c] : D.terms()) k = std::max(k, m.exponent_of(up));
    Poly top(T.space());
    for (const auto& [m, c] : D.terms())
      if (m.exponent_of(up) == k) top.add_term(m.without(up), c);
    if (k == 0) {
      coeff.emplace(0, top);
      break;
    }
    Rational ck = 1;
    for (unsigned e = 0; e < k; ++e) ck *= r.u_prime_coefficient;
    top *= Rational(1) / ck;
    D -= top * u.pow(k);
    coeff.emplace(k, std::move(top));
  }

  Poly correction(T.space());
  for (const auto& [i, ci] : coeff) {
    if (i == 0) continue;
    std::map<unsigned, Poly> by_z;
    for (const auto& [m, c] : ci.terms()) {
      auto [it, fresh] = by_z.try_emplace(m.exponent_of(fm.z), T.space());
      it->second.add_term(m.without(fm.z), c);
    }
    const Poly s = correction_sum(z, u, fm.fiber.d, static_cast<int>(i));
    for (const auto& [j, cij] : by_z) {
      const int deg = *cij.degree();
      Poly term = cij * zp * z.pow(j) * s;
      if (deg % 2 != 0) term = -term;
      correction += term;
    }
  }
  return y + correction;
}

AlgebraMap tilde_mu_E(const FibrationModel& fm, const AlgebraMap& mu_B) {
  const CohomologyAlgebra* hb = as_cohomology(mu_B);
  const FreeAlgebra* fb = free_over(hb);
  if (!fb || !(fb->presentation().generators() == fm.base.generators()) ||
      !(mu_B.source().generators() == fm.base.generators()))
    throw FibrationError(Kind::BaseNotCertified, "mu_B must map the base into its own cohomology");
  const int N = fm.total.truncation();
  if (hb->top_degree() < N + 1)
    throw FibrationError(Kind::BaseNotCertified, "base certificate does not reach degree " + std::to_string(N + 1));
  if (!verify_quasi_iso(mu_B, N).passed())
    throw FibrationError(Kind::BaseNotCertified, "mu_B is not a chain quasi-isomorphism onto (H, 0)");

  auto total_alg = make_free_algebra(fm.total, N + 2);
  auto table = std::make_shared<const CohomologyTable>(total_alg, N + 1);
  auto target = std::make_shared<const CohomologyAlgebra>(table);
  std::vector<QVector> images;
  for (std::size_t i = 0; i < fm.total.size(); ++i) {
    const int deg = fm.total.generators()[i].degree;
    if (deg > N + 1) {
      images.emplace_back();
    } else if (i < fm.base.size()) {
      const Poly cocycle = class_cocycle(hb->table(), deg, mu_B.image(i));
      images.push_back(table->class_of(deg, total_alg->to_vector(transport(cocycle, fm.total.space()), deg)));
    } else if (i == fm.z && !fm.fiber.odd()) {
      images.push_back(table->class_of(deg, total_alg->to_vector(fm.total.generator(i), deg)));
    } else {
      images.push_back(QVector::Zero(table->betti(deg)));
    }
  }
  return AlgebraMap(fm.total, target, std::move(images));
}

FormalMapReport check_formal_map(const FibrationModel& fm, const Morphism& p_hat, const AlgebraMap& mu_B,
                                 const AlgebraMap& mu_E) {
  const CohomologyAlgebra* hb = as_cohomology(mu_B);
  const CohomologyAlgebra* he = as_cohomology(mu_E);
  const FreeAlgebra* fe = free_over(he);
  if (!free_over(hb) || !fe || !(fe->presentation().generators() == fm.total.generators()))
    throw std::invalid_argument("check_formal_map: certificates must land in (H, 0) of base and total");
  const int N = std::min({fm.total.truncation(), hb->top_degree(), he->top_degree()});
  FormalMapReport rep;
  rep.degree_bound = N;
  auto base_alg = make_free_algebra(fm.base, N + 1);
  const CohomologyTable hbase(base_alg, N);
  for (int k = 0; k <= N; ++k) {
    rep.checked_degrees.push_back(k);
    for (Index i = 0; i < hbase.betti(k); ++i) {
      const Poly r = base_alg->to_poly(k, hbase.representative(k, i));
      const QVector lhs = mu_E.evaluate(p_hat(r), k);
      const Poly pulled = transport(class_cocycle(hb->table(), k, mu_B.evaluate(r, k)), fm.total.space());
      const QVector rhs = he->table().class_of(k, fe->to_vector(pulled, k));
      if (lhs != rhs) {
        rep.first_failure = k;
        return rep;
      }
    }
  }
  return rep;
}

TheoremCHypotheses theoremC_hypotheses(const FibrationModel& fm) {
  TheoremCHypotheses h;
  if (fm.fiber.odd()) return h;
  auto closed_in = [&](int k) {
    for (std::size_t i = 0; i < fm.base.size(); ++i)
      if (fm.base.generators()[i].degree == k && !fm.base.differential(i).is_zero()) return false;
    return true;
  };
  const int n = fm.fiber.n;
  h.hurewicz_n = closed_in(n);
  h.hurewicz_top = closed_in(fm.fiber.twist_degree());
  int lowest = fm.base.truncation() + 1;
  for (const auto& g : fm.base.generators().generators()) lowest = std::min(lowest, g.degree);
  h.connectivity = lowest - 1;
  h.connectivity_route = h.connectivity >= fm.fiber.twist_degree() - 1;
  h.low_degree_route = fm.fiber.kind == FiberKind::EvenSphere && h.hurewicz_n && 3 * h.connectivity + 1 >= 2 * n;
  h.connectivity_only = fm.fiber.kind == FiberKind::ProjectiveLike;
  return h;
}

}  // namespace cdga

#include "hsim/gadgets.hpp"

#include "hsim/eigensolver.hpp"
#include "hsim/errors.hpp"

#include <algorithm>
#include <cstring>
#include <fmt/format.h>
#include <set>
#include <unordered_map>

namespace hsim {

namespace bmp = boost::multiprecision;

namespace {

const Real kInvSqrt2 = Real(1) / bmp::sqrt(Real(2));

std::string string_key(const PauliTerm& t) {
  std::string k(t.axes().size() * 5, '\0');
  char* out = k.data();
  for (const auto& [q, p] : t.axes()) {
    std::memcpy(out, &q, 4);
    out[4] = static_cast<char>(p);
    out += 5;
  }
  return k;
}

PauliTerm identity(const Real& c) { return PauliTerm(c, {}); }

PauliTerm with_x(const PauliTerm& p, Qubit t, const Real& scale) {
  return disjoint_product(p, single(scale, t, Pauli::X));
}

PauliTerm sq(const PauliTerm& p) { return identity(p.coefficient() * p.coefficient()); }

void require_disjoint(std::initializer_list<const PauliTerm*> terms, Qubit mediator) {
  std::vector<const PauliTerm*> v(terms);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]->is_identity()) throw InvalidArgument("gadget operand must act on at least one qubit");
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i]->overlaps(*v[j])) {
        throw OverlappingSupports(fmt::format("gadget operands {} and {} overlap", v[i]->to_string(),
                                              v[j]->to_string()));
      }
    }
    if (v[i]->axis(mediator) != Pauli::I) {
      throw OverlappingSupports(fmt::format("mediator qubit {} lies in operand {}", mediator, v[i]->to_string()));
    }
  }
}

std::vector<PauliTerm> excited_projector(Qubit t) {
  return {identity(Real(1) / 2), single(Real(-1) / 2, t, Pauli::Z)};
}

Real sign_of(const Real& c) { return c < 0 ? Real(-1) : Real(1); }

std::size_t required_register(const Hamiltonian& h, std::initializer_list<const PauliTerm*> terms) {
  std::size_t n = h.n_qubits();
  for (const auto* t : terms) {
    if (!t->is_identity()) n = std::max<std::size_t>(n, t->max_qubit() + 1);
  }
  return n;
}

}  // namespace

std::string_view kind_name(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Subdivision: return "subdivision";
    case GadgetKind::ThreeToTwo: return "three_to_two";
    case GadgetKind::Triangle: return "triangle";
    case GadgetKind::Crossing: return "crossing";
    case GadgetKind::LongRange: return "long_range";
  }
  return "unknown";
}

std::pair<PauliTerm, PauliTerm> split_two(const PauliTerm& term) {
  const std::size_t w = term.weight();
  if (w < 2) throw InvalidArgument(fmt::format("cannot split term {} of weight {}", term.to_string(), w));
  const std::size_t left = (w + 1) / 2;
  const Real c = term.coefficient();
  const Real root = bmp::sqrt(bmp::abs(c));
  PauliTerm::Axes a(term.axes().begin(), term.axes().begin() + static_cast<std::ptrdiff_t>(left));
  PauliTerm::Axes b(term.axes().begin() + static_cast<std::ptrdiff_t>(left), term.axes().end());
  return {PauliTerm(sign_of(c) * root, std::move(a)), PauliTerm(root, std::move(b))};
}

std::array<PauliTerm, 3> split_three(const PauliTerm& term) {
  if (term.weight() != 3) throw InvalidArgument(fmt::format("term {} is not 3-local", term.to_string()));
  const Real c = term.coefficient();
  const Real root = cbrt_real(bmp::abs(c));
  const auto& ax = term.axes();
  return {PauliTerm(sign_of(c) * root, {ax[0]}), PauliTerm(root, {ax[1]}), PauliTerm(root, {ax[2]})};
}

GadgetParts subdivision_parts(const PauliTerm& p_a, const PauliTerm& p_b, Qubit t) {
  require_disjoint({&p_a, &p_b}, t);
  GadgetParts g;
  g.kind = GadgetKind::Subdivision;
  g.simulated = {disjoint_product(p_a, p_b)};
  g.h0 = excited_projector(t);
  g.h1_extra = {sq(p_a).scaled(Real(1) / 2), sq(p_b).scaled(Real(1) / 2)};
  g.h2 = {with_x(p_a, t, kInvSqrt2), with_x(p_b, t, -kInvSqrt2)};
  g.ancilla = {AncillaState::Zero, {t}};
  return g;
}

GadgetParts three_to_two_parts(const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c, Qubit t) {
  require_disjoint({&p_a, &p_b, &p_c}, t);
  GadgetParts g;
  g.kind = GadgetKind::ThreeToTwo;
  g.simulated = {disjoint_product(disjoint_product(p_a, p_b), p_c)};
  g.h0 = excited_projector(t);
  const Real half_sum = (p_a.coefficient() * p_a.coefficient() + p_b.coefficient() * p_b.coefficient()) / 2;
  g.h1_extra = {p_c.scaled(half_sum)};
  g.h1_prime = {identity(half_sum), disjoint_product(p_a, p_b).scaled(-1)};
  // -P_C (x) |1><1|_t + (-P_A + P_B) X_t / sqrt(2)
  g.h2 = {p_c.scaled(Real(-1) / 2), disjoint_product(p_c, single(Real(1) / 2, t, Pauli::Z)),
          with_x(p_a, t, -kInvSqrt2), with_x(p_b, t, kInvSqrt2)};
  g.ancilla = {AncillaState::Zero, {t}};
  return g;
}

GadgetParts triangle_parts(const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c, const Real& alpha_ab,
                           const Real& alpha_ac, Qubit t) {
  require_disjoint({&p_a, &p_b, &p_c}, t);
  GadgetParts g;
  g.kind = GadgetKind::Triangle;
  g.simulated = {disjoint_product(p_a, p_b).scaled(alpha_ab), disjoint_product(p_a, p_c).scaled(alpha_ac)};
  g.h0 = excited_projector(t);
  const Real a2 = p_a.coefficient() * p_a.coefficient(), b2 = p_b.coefficient() * p_b.coefficient(),
             c2 = p_c.coefficient() * p_c.coefficient();
  g.h1_extra = {disjoint_product(p_b, p_c).scaled(alpha_ab * alpha_ac),
                identity((a2 + alpha_ab * alpha_ab * b2 + alpha_ac * alpha_ac * c2) / 2)};
  g.h2 = {with_x(p_a, t, -kInvSqrt2), with_x(p_b, t, alpha_ab * kInvSqrt2), with_x(p_c, t, alpha_ac * kInvSqrt2)};
  g.ancilla = {AncillaState::Zero, {t}};
  return g;
}

GadgetParts crossing_parts(const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c, const PauliTerm& p_d,
                           const Real& alpha_ad, const Real& alpha_bc, Qubit t) {
  require_disjoint({&p_a, &p_b, &p_c, &p_d}, t);
  GadgetParts g;
  g.kind = GadgetKind::Crossing;
  g.simulated = {disjoint_product(p_a, p_d).scaled(alpha_ad), disjoint_product(p_b, p_c).scaled(alpha_bc)};
  g.h0 = excited_projector(t);
  auto c2 = [](const PauliTerm& p) { return p.coefficient() * p.coefficient(); };
  g.h1_extra = {
      identity((alpha_ad * alpha_ad * c2(p_a) + alpha_bc * alpha_bc * c2(p_b) + c2(p_c) + c2(p_d)) / 2),
      disjoint_product(p_a, p_b).scaled(alpha_ad * alpha_bc),
      disjoint_product(p_a, p_c).scaled(-alpha_ad),
      disjoint_product(p_b, p_d).scaled(-alpha_bc),
      disjoint_product(p_c, p_d),
  };
  g.h2 = {with_x(p_a, t, -alpha_ad * kInvSqrt2), with_x(p_b, t, -alpha_bc * kInvSqrt2), with_x(p_c, t, kInvSqrt2),
          with_x(p_d, t, kInvSqrt2)};
  g.ancilla = {AncillaState::Zero, {t}};
  return g;
}

GadgetParts long_range_parts(const PauliTerm& p_a, const PauliTerm& p_b, const std::vector<Qubit>& chain,
                             const WChainSpec& spec, const GadgetConstants& k) {
  if (chain.size() != spec.n || chain.size() < 2) {
    throw InvalidArgument(fmt::format("chain of {} qubits does not match spec length {}", chain.size(), spec.n));
  }
  if (std::set<Qubit>(chain.begin(), chain.end()).size() != chain.size()) {
    throw AncillaCollision("chain qubits repeat");
  }
  for (auto q : chain) require_disjoint({&p_a, &p_b}, q);
  if (!(k.C > 0)) throw SingularRestriction("long-range constant C must be positive");
  GadgetParts g;
  g.kind = GadgetKind::LongRange;
  g.simulated = {disjoint_product(p_a, p_b)};
  const Hamiltonian hw = build_hw(spec);
  for (const auto& t : hw.terms()) {
    PauliTerm::Axes axes;
    for (const auto& [q, p] : t.axes()) axes.emplace_back(chain[q], p);
    g.h0.emplace_back(t.coefficient(), std::move(axes));
  }
  const Real inv_root_c = Real(1) / bmp::sqrt(Real(k.C));
  g.h2 = {with_x(p_a, chain.front(), inv_root_c), with_x(p_b, chain.back(), -inv_root_c)};
  const Real ratio = Real(k.D) / Real(k.C);
  g.h1_extra = {identity(ratio * (p_a.coefficient() * p_a.coefficient() + p_b.coefficient() * p_b.coefficient()) / 2)};
  g.ancilla = {AncillaState::W, chain};
  g.constants = {{"C", k.C}, {"D", k.D}, {"Gamma", spec.gamma_coupling}, {"n", static_cast<double>(spec.n)}};
  return g;
}

std::vector<Qubit> GadgetApplication::ancilla_qubits() const {
  std::vector<Qubit> out;
  for (const auto& b : ancillas) out.insert(out.end(), b.qubits.begin(), b.qubits.end());
  std::sort(out.begin(), out.end());
  return out;
}

GadgetApplication make_application(const Hamiltonian& target, std::vector<GadgetParts> parts, const Real& delta) {
  if (!(delta > 0)) throw InvalidArgument("gadget strength must be positive");
  const std::size_t nd = target.n_qubits();
  std::size_t n = nd;
  std::set<Qubit> seen;
  for (const auto& g : parts) {
    if (g.third_order() != parts.front().third_order()) {
      throw InvalidArgument("cannot combine second- and third-order gadgets in one round");
    }
    for (auto q : g.ancilla.qubits) {
      if (q < nd) throw InvalidArgument(fmt::format("ancilla {} lies inside the data register", q));
      if (!seen.insert(q).second) throw AncillaCollision(fmt::format("ancilla {} used by two gadgets", q));
      n = std::max<std::size_t>(n, q + 1);
    }
    for (const auto* list : {&g.h0, &g.h1_extra, &g.h1_prime, &g.h2, &g.simulated}) {
      for (const auto& t : *list) {
        if (!t.is_identity()) n = std::max<std::size_t>(n, t.max_qubit() + 1);
      }
    }
  }

  // H_else: the target with simulated strings removed; exact-match tolerance covers
  // the rounding in sqrt(|c|)^2 from coefficient splitting.
  std::unordered_map<std::string, Real> removed;
  std::vector<std::string> removed_order;
  for (const auto& g : parts) {
    for (const auto& s : g.simulated) {
      auto key = string_key(s);
      auto [it, inserted] = removed.try_emplace(key, s.coefficient());
      if (inserted) {
        removed_order.push_back(key);
      } else {
        it->second += s.coefficient();
      }
    }
  }
  std::vector<PauliTerm> else_terms;
  else_terms.reserve(target.size());
  std::set<std::string> matched;
  for (const auto& t : target.terms()) {
    auto key = string_key(t);
    auto it = removed.find(key);
    if (it == removed.end()) {
      else_terms.push_back(t);
      continue;
    }
    matched.insert(key);
    const Real diff = t.coefficient() - it->second;
    const Real scale = std::max<Real>(bmp::abs(t.coefficient()), bmp::abs(it->second));
    if (bmp::abs(diff) > 1e-12 * scale) else_terms.push_back(t.with_coefficient(diff));
  }
  for (const auto& g : parts) {
    for (const auto& s : g.simulated) {
      if (!matched.count(string_key(s))) else_terms.push_back(s.scaled(-1));
    }
  }

  GadgetApplication app;
  app.kind = parts.empty() ? GadgetKind::Subdivision : parts.front().kind;
  app.target = target;
  app.delta = delta;
  std::vector<PauliTerm> h0, h1 = std::move(else_terms), h1p, h2;
  for (const auto& g : parts) {
    h0.insert(h0.end(), g.h0.begin(), g.h0.end());
    h1.insert(h1.end(), g.h1_extra.begin(), g.h1_extra.end());
    h1p.insert(h1p.end(), g.h1_prime.begin(), g.h1_prime.end());
    h2.insert(h2.end(), g.h2.begin(), g.h2.end());
    app.ancillas.push_back(g.ancilla);
  }
  app.h0 = Hamiltonian(n, std::move(h0), "H0");
  app.h1 = Hamiltonian(n, std::move(h1), "H1");
  app.h2 = Hamiltonian(n, std::move(h2), "H2");
  if (!parts.empty() && parts.front().third_order()) app.h1_prime = Hamiltonian(n, std::move(h1p), "H1'");
  if (parts.size() == 1) app.constants = parts.front().constants;
  app.parts = std::move(parts);
  return app;
}

GadgetApplication subdivide(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b) {
  const std::size_t n = required_register(h_else, {&p_a, &p_b});
  auto g = subdivision_parts(p_a, p_b, static_cast<Qubit>(n));
  return make_application(h_else.widened(n) + Hamiltonian(n, g.simulated), {std::move(g)});
}

GadgetApplication three_to_two(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b,
                               const PauliTerm& p_c) {
  const std::size_t n = required_register(h_else, {&p_a, &p_b, &p_c});
  auto g = three_to_two_parts(p_a, p_b, p_c, static_cast<Qubit>(n));
  return make_application(h_else.widened(n) + Hamiltonian(n, g.simulated), {std::move(g)});
}

GadgetApplication triangle(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c,
                           const Real& alpha_ab, const Real& alpha_ac) {
  const std::size_t n = required_register(h_else, {&p_a, &p_b, &p_c});
  auto g = triangle_parts(p_a, p_b, p_c, alpha_ab, alpha_ac, static_cast<Qubit>(n));
  return make_application(h_else.widened(n) + Hamiltonian(n, g.simulated), {std::move(g)});
}

GadgetApplication crossing(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c,
                           const PauliTerm& p_d, const Real& alpha_ad, const Real& alpha_bc) {
  const std::size_t n = required_register(h_else, {&p_a, &p_b, &p_c, &p_d});
  auto g = crossing_parts(p_a, p_b, p_c, p_d, alpha_ad, alpha_bc, static_cast<Qubit>(n));
  return make_application(h_else.widened(n) + Hamiltonian(n, g.simulated), {std::move(g)});
}

GadgetApplication long_range(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b,
                             const WChainSpec& chain) {
  const std::size_t n = required_register(h_else, {&p_a, &p_b});
  const GadgetConstants k = compute_constants(chain, 0, chain.n - 1);
  std::vector<Qubit> sites(chain.n);
  for (std::size_t i = 0; i < chain.n; ++i) sites[i] = static_cast<Qubit>(n + i);
  auto g = long_range_parts(p_a, p_b, sites, chain, k);
  return make_application(h_else.widened(n) + Hamiltonian(n, g.simulated), {std::move(g)});
}

namespace {

bool same_terms(const Hamiltonian& a, const Hamiltonian& b) {
  if (a.n_qubits() != b.n_qubits() || a.size() != b.size()) return false;
  std::unordered_map<std::string, Real> m;
  for (const auto& t : a.terms()) m.emplace(string_key(t), t.coefficient());
  for (const auto& t : b.terms()) {
    auto it = m.find(string_key(t));
    if (it == m.end() || it->second != t.coefficient()) return false;
  }
  return true;
}

}  // namespace

GadgetApplication apply_parallel(const std::vector<GadgetApplication>& apps) {
  if (apps.empty()) throw InvalidArgument("apply_parallel needs at least one application");
  if (apps.size() == 1) return apps.front();
  std::vector<GadgetParts> parts;
  Real delta = 0;
  for (const auto& a : apps) {
    if (!same_terms(a.target, apps.front().target)) {
      throw InvalidArgument("parallel gadgets must act on the same target Hamiltonian");
    }
    parts.insert(parts.end(), a.parts.begin(), a.parts.end());
    if (a.delta > delta) delta = a.delta;
  }
  return make_application(apps.front().target, std::move(parts), delta);
}

Hamiltonian assemble(const GadgetApplication& app) {
  const std::size_t n = app.n_qubits();
  const Real& d = app.delta;
  const Hamiltonian heavy = app.h0.scaled(d);
  if (!app.third_order()) {
    const Hamiltonian coupling = app.h2.scaled(bmp::sqrt(d));
    return sum({&heavy, &app.h1, &coupling}, n).with_label(std::string(kind_name(app.kind)));
  }
  const Real third = cbrt_real(d);
  const Hamiltonian mid = app.h1_prime->scaled(third);
  const Hamiltonian coupling = app.h2.scaled(third * third);
  return sum({&heavy, &app.h1, &mid, &coupling}, n).with_label(std::string(kind_name(app.kind)));
}

Real lambda_bound(const GadgetApplication& app) {
  Real l = std::max<Real>(triangle_norm_bound(app.h1), triangle_norm_bound(app.h2));
  if (app.third_order()) l = std::max<Real>(l, triangle_norm_bound(*app.h1_prime));
  return l;
}

Real policy_delta(const GadgetApplication& app, double epsilon, double eta, const PolicyConstants& policy) {
  const Real lambda = lambda_bound(app);
  return app.third_order() ? choose_delta_3(lambda, epsilon, eta, policy.c3)
                           : choose_delta_2(lambda, epsilon, eta, policy.c2);
}

CVector ancilla_state(const GadgetApplication& app) {
  const std::size_t nd = app.n_data(), na = app.n_qubits() - nd;
  if (na > 24) throw CapExceeded(fmt::format("ancilla register of {} qubits is too large", na));
  std::vector<int> owner(na, -1);
  for (std::size_t b = 0; b < app.ancillas.size(); ++b) {
    for (auto q : app.ancillas[b].qubits) owner.at(q - nd) = static_cast<int>(b);
  }
  for (std::size_t k = 0; k < na; ++k) {
    if (owner[k] < 0) throw InvalidArgument(fmt::format("register qubit {} belongs to no ancilla block", nd + k));
  }
  // Sparse product state: list of (index, amplitude).
  std::vector<std::pair<std::uint64_t, double>> amps = {{0, 1.0}};
  for (const auto& block : app.ancillas) {
    if (block.state == AncillaState::Zero) continue;
    const double a = 1.0 / std::sqrt(static_cast<double>(block.qubits.size()));
    std::vector<std::pair<std::uint64_t, double>> next;
    for (const auto& [idx, amp] : amps) {
      for (auto q : block.qubits) next.emplace_back(idx | (std::uint64_t{1} << (q - nd)), amp * a);
    }
    amps = std::move(next);
  }
  CVector v = CVector::Zero(Eigen::Index{1} << na);
  for (const auto& [idx, amp] : amps) v[static_cast<Eigen::Index>(idx)] += amp;
  return v;
}

double ResidualReport::max() const { return std::max({residual, h1_prime_defect, h2_block_defect}); }

namespace {

// Operators on data (x) ancilla with data on the low bits.
struct Encoding {
  Eigen::Index dd;  // data dimension
  Eigen::Index da;  // ancilla dimension
  CVector anc;
  CMatrix r_anc;  // H0^-1 on the excited ancilla space

  CMatrix lift(const CMatrix& x) const {
    CMatrix out(dd * da, x.cols());
    for (Eigen::Index j = 0; j < da; ++j) out.middleRows(j * dd, dd) = anc[j] * x;
    return out;
  }
  CMatrix lower(const CMatrix& y) const {
    CMatrix out = CMatrix::Zero(dd, y.cols());
    for (Eigen::Index j = 0; j < da; ++j) out += std::conj(anc[j]) * y.middleRows(j * dd, dd);
    return out;
  }
  CMatrix apply_r(const CMatrix& y) const {
    CMatrix out(y.rows(), y.cols());
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      Eigen::Map<const CMatrix> m(y.col(c).data(), dd, da);
      Eigen::Map<CMatrix> o(out.col(c).data(), dd, da);
      o = m * r_anc.transpose();
    }
    return out;
  }
};

}  // namespace

ResidualReport residual_report(const GadgetApplication& app, const BackendCaps& caps) {
  const std::size_t n = app.n_qubits(), nd = app.n_data(), na = n - nd;
  if (n > caps.dense) throw CapExceeded(fmt::format("{} qubits exceeds the dense cap of {}", n, caps.dense));
  Encoding enc;
  enc.dd = Eigen::Index{1} << nd;
  enc.da = Eigen::Index{1} << na;
  enc.anc = ancilla_state(app);

  std::vector<PauliTerm> h0a;
  for (const auto& t : app.h0.terms()) {
    PauliTerm::Axes axes;
    for (const auto& [q, p] : t.axes()) {
      if (q < nd) throw PreconditionViolated(fmt::format("H0 term {} acts on data qubit {}", t.to_string(), q));
      axes.emplace_back(static_cast<Qubit>(q - nd), p);
    }
    h0a.emplace_back(t.coefficient(), std::move(axes));
  }
  const EigenPairs h0e = dense_eigensystem(realize_dense(Hamiltonian(na, std::move(h0a)), caps));
  enc.r_anc = CMatrix::Zero(enc.da, enc.da);
  if (enc.da > 1) {
    const double overlap = std::abs(h0e.vectors.col(0).dot(enc.anc));
    if (std::abs(h0e.values[0]) > 1e-8 || overlap < 1 - 1e-8) {
      throw PreconditionViolated("H0 ground state is not the ancilla state at energy 0");
    }
    if (h0e.values[1] < 1 - 1e-8) {
      throw PreconditionViolated(fmt::format("H0 gap {} is below 1", h0e.values[1]));
    }
    for (Eigen::Index k = 1; k < enc.da; ++k) {
      enc.r_anc += h0e.vectors.col(k) * h0e.vectors.col(k).adjoint() / h0e.values[k];
    }
  }

  const CMatrix ht = realize_dense(app.target, caps);
  const SparseCMatrix h1 = realize_sparse(app.h1.widened(n), caps);
  const SparseCMatrix h2 = realize_sparse(app.h2.widened(n), caps);
  const CMatrix t = enc.lift(CMatrix::Identity(enc.dd, enc.dd));
  const CMatrix h1mm = enc.lower(h1 * t);
  const CMatrix v = h2 * t;         // H2 T
  const CMatrix rv = enc.apply_r(v);  // H0^-1 (H2)_{+-}
  const CMatrix second = v.adjoint() * rv;

  ResidualReport rep;
  if (!app.third_order()) {
    rep.residual = spectral_norm(ht - h1mm + second);
    return rep;
  }
  const CMatrix h2rv = h2 * rv;
  const CMatrix third = rv.adjoint() * h2rv;
  rep.residual = spectral_norm(ht - h1mm - third);
  const SparseCMatrix h1p = realize_sparse(app.h1_prime->widened(n), caps);
  rep.h1_prime_defect = spectral_norm(enc.lower(h1p * t) - second);
  rep.h2_block_defect = spectral_norm(enc.lower(v));
  return rep;
}

double residual_check(const GadgetApplication& app, const BackendCaps& caps) { return residual_report(app, caps).max(); }

std::vector<NamedApplication> gadget_suite() {
  std::vector<NamedApplication> out;
  const Hamiltonian rest(4, {single(0.3, 0, Pauli::Z), make_term(0.5, {{1, Pauli::X}, {2, Pauli::X}})});
  const auto [a, b] = split_two(make_term(-0.7, {{0, Pauli::X}, {1, Pauli::Y}, {2, Pauli::Z}, {3, Pauli::X}}));
  out.push_back({"subdivision", subdivide(rest, a, b)});
  const auto t3 = split_three(make_term(0.8, {{0, Pauli::Z}, {1, Pauli::Z}, {2, Pauli::Z}}));
  out.push_back({"3-to-2", three_to_two(Hamiltonian(3, {single(0.2, 1, Pauli::X)}), t3[0], t3[1], t3[2])});
  out.push_back({"triangle", triangle(Hamiltonian(3), single(1, 0, Pauli::X), single(1, 1, Pauli::Z),
                                      single(1, 2, Pauli::Y), 0.7, -0.4)});
  out.push_back({"crossing", crossing(Hamiltonian(4), single(1, 0, Pauli::X), single(1, 1, Pauli::Z),
                                      single(1, 2, Pauli::Y), single(1, 3, Pauli::X), 0.7, -0.4)});
  for (std::size_t n = 2; n <= 4; ++n) {
    out.push_back({fmt::format("long-range n={}", n), long_range(Hamiltonian(2), single(0.8, 0, Pauli::X),
                                                                  single(0.8, 1, Pauli::Z), policy_chain(n))});
  }
  return out;
}

}  // namespace hsim

#include "hsim/hamiltonian.hpp"

#include "hsim/errors.hpp"

#include <algorithm>
#include <cstring>
#include <fmt/format.h>
#include <unordered_map>

namespace hsim {

namespace {

std::string key_of(const PauliTerm::Axes& axes) {
  std::string k;
  k.resize(axes.size() * 5);
  char* out = k.data();
  for (const auto& [q, p] : axes) {
    std::memcpy(out, &q, 4);
    out[4] = static_cast<char>(p);
    out += 5;
  }
  return k;
}

class Accumulator {
 public:
  void add(const PauliTerm& t) {
    auto [it, inserted] = index_.try_emplace(key_of(t.axes()), terms_.size());
    if (inserted) {
      terms_.push_back(t);
    } else {
      auto& slot = terms_[it->second];
      slot = slot.with_coefficient(slot.coefficient() + t.coefficient());
    }
  }

  std::vector<PauliTerm> take() {
    std::vector<PauliTerm> out;
    out.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (boost::multiprecision::abs(terms_[i].coefficient()) >= Hamiltonian::kMergeTolerance) {
        out.push_back(std::move(terms_[i]));
      }
    }
    return out;
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<PauliTerm> terms_;
};

}  // namespace

Hamiltonian::Hamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms, std::string label)
    : n_qubits_(n_qubits), label_(std::move(label)) {
  Accumulator acc;
  for (const auto& t : terms) {
    if (!boost::multiprecision::isfinite(t.coefficient())) {
      throw NonFiniteValue(fmt::format("non-finite coefficient in term {}", t.to_string()));
    }
    if (!t.is_identity() && t.max_qubit() >= n_qubits) {
      throw IndexOutOfRange(fmt::format("qubit {} out of range for {} qubits", t.max_qubit(), n_qubits));
    }
    acc.add(t);
  }
  terms_ = acc.take();
}

Hamiltonian Hamiltonian::with_label(std::string label) const {
  Hamiltonian h = *this;
  h.label_ = std::move(label);
  return h;
}

Hamiltonian Hamiltonian::widened(std::size_t n) const {
  if (n < n_qubits_) throw InvalidArgument("widened() cannot shrink a register");
  Hamiltonian h = *this;
  h.n_qubits_ = n;
  return h;
}

Hamiltonian Hamiltonian::scaled(const Real& factor) const {
  std::vector<PauliTerm> t;
  t.reserve(terms_.size());
  for (const auto& term : terms_) t.push_back(term.scaled(factor));
  return Hamiltonian(n_qubits_, std::move(t), label_);
}

Real Hamiltonian::constant() const {
  for (const auto& t : terms_) {
    if (t.is_identity()) return t.coefficient();
  }
  return 0;
}

Hamiltonian operator+(const Hamiltonian& a, const Hamiltonian& b) {
  return sum({&a, &b}, std::max(a.n_qubits(), b.n_qubits())).with_label(a.label());
}

Hamiltonian operator-(const Hamiltonian& a, const Hamiltonian& b) {
  auto nb = b.scaled(-1);
  return sum({&a, &nb}, std::max(a.n_qubits(), b.n_qubits())).with_label(a.label());
}

Hamiltonian sum(const std::vector<const Hamiltonian*>& parts, std::size_t n_qubits) {
  std::vector<PauliTerm> terms;
  std::size_t total = 0;
  for (const auto* p : parts) total += p->size();
  terms.reserve(total);
  for (const auto* p : parts) terms.insert(terms.end(), p->terms().begin(), p->terms().end());
  return Hamiltonian(n_qubits, std::move(terms));
}

Hamiltonian product(const Hamiltonian& a, const Hamiltonian& b) {
  std::vector<PauliTerm> re;
  std::vector<PauliTerm> im;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      auto pr = multiply(x, y);
      switch (pr.phase) {
        case 0: re.push_back(pr.term); break;
        case 2: re.push_back(pr.term.scaled(-1)); break;
        case 1: im.push_back(pr.term); break;
        default: im.push_back(pr.term.scaled(-1)); break;
      }
    }
  }
  const std::size_t n = std::max(a.n_qubits(), b.n_qubits());
  Hamiltonian imag(n, std::move(im));
  Real scale = triangle_norm_bound(a) * triangle_norm_bound(b);
  for (const auto& t : imag.terms()) {
    if (boost::multiprecision::abs(t.coefficient()) > 1e-12 * scale) {
      throw InvalidArgument("product of Hamiltonians is not Hermitian");
    }
  }
  return Hamiltonian(n, std::move(re));
}

std::vector<std::size_t> qubit_degrees(const Hamiltonian& h) {
  std::vector<std::size_t> deg(h.n_qubits(), 0);
  for (const auto& t : h.terms()) {
    if (t.weight() < 2) continue;
    for (const auto& [q, p] : t.axes()) ++deg[q];
  }
  return deg;
}

GraphStats graph_stats(const Hamiltonian& h) {
  GraphStats s;
  s.term_count = h.size();
  for (const auto& t : h.terms()) {
    s.kappa = std::max(s.kappa, t.weight());
    if (!t.is_identity()) s.mu0 = std::max(s.mu0, Real(boost::multiprecision::abs(t.coefficient())));
  }
  for (auto d : qubit_degrees(h)) s.delta = std::max(s.delta, d);
  return s;
}

Real triangle_norm_bound(const Hamiltonian& h) {
  Real s = 0;
  for (const auto& t : h.terms()) s += boost::multiprecision::abs(t.coefficient());
  return s;
}

InteractionHypergraph hypergraph(const Hamiltonian& h) {
  InteractionHypergraph g;
  g.n_vertices = h.n_qubits();
  g.incidence.resize(h.n_qubits());
  for (std::size_t id = 0; id < h.size(); ++id) {
    const auto& t = h.terms()[id];
    g.hyperedges.push_back(t.support());
    if (t.weight() < 2) continue;
    for (const auto& [q, p] : t.axes()) g.incidence[q].push_back(id);
  }
  return g;
}

}  // namespace hsim

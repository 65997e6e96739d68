#pragma once

#include "hsim/pauli.hpp"

#include <string>
#include <vector>

namespace hsim {

/**
 * @brief Real linear combination of Pauli strings on a fixed register.
 *
 * Construction merges terms with identical strings (coefficients added) and
 * drops merged coefficients below 1e-14 in magnitude. Term order follows the
 * first occurrence of each string. Instances are immutable.
 */
class Hamiltonian {
 public:
  static constexpr double kMergeTolerance = 1e-14;

  Hamiltonian() = default;
  explicit Hamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms = {}, std::string label = {});

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const std::string& label() const { return label_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Hamiltonian with_label(std::string label) const;
  /// @brief Same terms on a register of n >= n_qubits() qubits.
  Hamiltonian widened(std::size_t n) const;
  Hamiltonian scaled(const Real& factor) const;
  /// @brief Coefficient of the identity component.
  Real constant() const;

  friend Hamiltonian operator+(const Hamiltonian& a, const Hamiltonian& b);
  friend Hamiltonian operator-(const Hamiltonian& a, const Hamiltonian& b);

 private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  std::string label_;
};

/// @brief Sum of term lists with merging, on max(n_a, n_b) qubits.
Hamiltonian sum(const std::vector<const Hamiltonian*>& parts, std::size_t n_qubits);

/// @brief Product of two Hamiltonians whose terms commute pairwise-disjointly or multiply to real terms.
Hamiltonian product(const Hamiltonian& a, const Hamiltonian& b);

/// @brief Derived locality and sparsity data.
struct GraphStats {
  std::size_t kappa = 0;       ///< maximum term weight
  std::size_t delta = 0;       ///< maximum number of weight >= 2 terms on one qubit
  Real mu0 = 0;                ///< maximum |coefficient| over non-identity terms
  std::size_t term_count = 0;  ///< number of stored terms
};

GraphStats graph_stats(const Hamiltonian& h);

/// @brief Per-qubit count of weight >= 2 terms acting on it.
std::vector<std::size_t> qubit_degrees(const Hamiltonian& h);

/// @brief Sum of |c_i| over all terms; bounds the operator norm.
Real triangle_norm_bound(const Hamiltonian& h);

/// @brief Interaction hypergraph: vertex q and the ids of terms touching it.
struct InteractionHypergraph {
  std::size_t n_vertices = 0;
  std::vector<std::vector<Qubit>> hyperedges;      ///< support per term
  std::vector<std::vector<std::size_t>> incidence;  ///< term ids per qubit (weight >= 2 only)

  std::size_t degree(Qubit v) const { return incidence.at(v).size(); }
};

InteractionHypergraph hypergraph(const Hamiltonian& h);

}  // namespace hsim

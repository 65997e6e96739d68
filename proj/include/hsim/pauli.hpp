#pragma once

#include "hsim/real.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hsim {

using Qubit = std::uint32_t;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// @brief Result of a single-qubit Pauli product: i^phase * result.
struct PauliProduct {
  int phase = 0;  ///< exponent k of i^k, in {0,1,2,3}
  Pauli result = Pauli::I;

  std::complex<double> factor() const;
};

/// @brief Pauli group product a*b.
PauliProduct pauli_mul(Pauli a, Pauli b);

/**
 * @brief A real-weighted Pauli string.
 *
 * Axes are kept sorted by qubit index with no identity entries. An empty
 * axis list denotes a multiple of the identity.
 */
class PauliTerm {
 public:
  using Axes = std::vector<std::pair<Qubit, Pauli>>;

  PauliTerm() = default;
  PauliTerm(Real coefficient, Axes axes);

  const Real& coefficient() const { return coefficient_; }
  const Axes& axes() const { return axes_; }
  std::size_t weight() const { return axes_.size(); }
  bool is_identity() const { return axes_.empty(); }
  std::vector<Qubit> support() const;
  Pauli axis(Qubit q) const;
  Qubit max_qubit() const;

  PauliTerm scaled(const Real& factor) const;
  PauliTerm with_coefficient(Real coefficient) const;

  bool same_string(const PauliTerm& other) const { return axes_ == other.axes_; }
  bool overlaps(const PauliTerm& other) const;

  /// @brief Bit masks (qubit q -> bit q) for n <= 64 realisation.
  std::uint64_t flip_mask() const;
  std::uint64_t phase_mask() const;
  int y_count() const;

  std::string to_string() const;

 private:
  Real coefficient_ = 1;
  Axes axes_;
};

/// @brief Single-qubit term c * sigma_q.
PauliTerm single(Real coefficient, Qubit q, Pauli p);

/// @brief Builds a term from (qubit, axis) pairs given in any order.
PauliTerm make_term(Real coefficient, std::initializer_list<std::pair<Qubit, Pauli>> ops);

/**
 * @brief Product of two terms; phase carries the accumulated i^k.
 */
struct TermProduct {
  int phase = 0;
  PauliTerm term;
};
TermProduct multiply(const PauliTerm& a, const PauliTerm& b);

/// @brief Product of two terms with disjoint supports (no phase).
PauliTerm disjoint_product(const PauliTerm& a, const PauliTerm& b);

}  // namespace hsim

#pragma once

#include "hsim/hamiltonian.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <variant>

namespace hsim {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseCMatrix = Eigen::SparseMatrix<cplx>;

/// @brief Qubit limits of the two matrix backends.
struct BackendCaps {
  std::size_t dense = 14;
  std::size_t iterative = 20;

  /// @brief Defaults, overridden by HSIM_DENSE_CAP / HSIM_ITERATIVE_CAP.
  static BackendCaps from_env();
};

enum class Storage { Dense, Sparse };

/**
 * @brief Explicit matrix of a Hamiltonian in the computational basis.
 *
 * Basis index bit q holds qubit q.
 */
class OperatorMatrix {
 public:
  OperatorMatrix(CMatrix m);
  OperatorMatrix(SparseCMatrix m);

  std::size_t dimension() const { return dimension_; }
  bool is_dense() const { return std::holds_alternative<CMatrix>(storage_); }
  bool hermitian() const { return hermitian_; }
  const CMatrix& dense() const { return std::get<CMatrix>(storage_); }
  const SparseCMatrix& sparse() const { return std::get<SparseCMatrix>(storage_); }
  CMatrix to_dense() const;

 private:
  std::size_t dimension_;
  std::variant<CMatrix, SparseCMatrix> storage_;
  bool hermitian_;
};

/// @throws CapExceeded when n exceeds the backend cap; NonFiniteValue for coefficients outside double range.
OperatorMatrix realize(const Hamiltonian& h, Storage storage = Storage::Dense, const BackendCaps& caps = {});
CMatrix realize_dense(const Hamiltonian& h, const BackendCaps& caps = {});
SparseCMatrix realize_sparse(const Hamiltonian& h, const BackendCaps& caps = {});

/// @brief y = H x without storing the matrix.
CVector apply(const Hamiltonian& h, const CVector& x);

/**
 * @brief Block of a Hamming-weight conserving Hamiltonian.
 *
 * Rows/columns follow sector_states(n, weight).
 * @throws InvalidArgument when the Hamiltonian leaks out of the sector.
 */
CMatrix realize_sector(const Hamiltonian& h, std::size_t weight);
SparseCMatrix realize_sector_sparse(const Hamiltonian& h, std::size_t weight);

/// @brief Basis indices of Hamming weight w on n qubits, ascending.
std::vector<std::uint64_t> sector_states(std::size_t n, std::size_t weight);

/// @brief Relative Hermiticity defect ||A - A^dag|| / max(1, ||A||) (Frobenius).
double hermiticity_defect(const CMatrix& a);

/// @brief Kronecker product a (x) b with a on the low bits: (a (x) b)[i + da*j] = a[i] b[j].
CMatrix kron_low(const CMatrix& low, const CMatrix& high);
CVector kron_low(const CVector& low, const CVector& high);

}  // namespace hsim

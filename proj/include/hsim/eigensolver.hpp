#pragma once

#include "hsim/matrix.hpp"

#include <functional>

namespace hsim {

/// @brief Eigenvalues ascending with matching column eigenvectors.
struct EigenPairs {
  Eigen::VectorXd values;
  CMatrix vectors;
};

/// @brief Full dense Hermitian eigendecomposition (real solver when the matrix is real).
EigenPairs dense_eigensystem(const CMatrix& h);
Eigen::VectorXd dense_eigenvalues(const CMatrix& h);

struct LanczosOptions {
  std::size_t krylov_dim = 80;
  std::size_t max_restarts = 400;
  double tolerance = 1e-11;
  std::uint64_t seed = 0x5eed;
};

using MatVec = std::function<void(const CVector& in, CVector& out)>;

/**
 * @brief Lowest k eigenpairs by thick-restarted block Lanczos with locking.
 *
 * The basis grows from a block of min(k, 4) random vectors, is fully
 * reorthogonalized, and the projected matrix is kept explicitly; on restart
 * the lowest unconverged Ritz vectors are retained. Converged pairs are
 * locked and deflated. Levels of multiplicity above the block size are
 * only found through rounding noise.
 * @throws ConvergenceFailure when a Ritz pair does not converge.
 */
EigenPairs lanczos_lowest(const MatVec& op, std::size_t dim, std::size_t k, const LanczosOptions& opts = {});

enum class Backend { Auto, Dense, Iterative };

/**
 * @brief Lowest k eigenvalues of a Hamiltonian, ascending.
 *
 * Auto uses the dense solver up to 10 qubits and Lanczos beyond.
 */
Eigen::VectorXd lowest_eigenvalues(const Hamiltonian& h, std::size_t k, Backend backend = Backend::Auto,
                                   const BackendCaps& caps = {});

/// @brief Largest singular value.
double spectral_norm(const CMatrix& a);

/// @brief Trace norm sum |lambda_i| of a Hermitian matrix.
double trace_norm_hermitian(const CMatrix& a);

}  // namespace hsim

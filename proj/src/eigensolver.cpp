#include "hsim/eigensolver.hpp"

#include "hsim/errors.hpp"

#include <algorithm>
#include <deque>
#include <fmt/format.h>
#include <numeric>
#include <random>

namespace hsim {

EigenPairs dense_eigensystem(const CMatrix& h) {
  EigenPairs out;
  if (h.rows() == 0) return out;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
    if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolver failed");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolver failed");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  return out;
}

Eigen::VectorXd dense_eigenvalues(const CMatrix& h) {
  if (h.rows() == 0) return {};
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

void orthogonalize(CVector& w, const std::vector<CVector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) w -= b.dot(w) * b;
  }
}

}  // namespace

EigenPairs lanczos_lowest(const MatVec& op, std::size_t dim, std::size_t k, const LanczosOptions& opts) {
  k = std::min(k, dim);
  const auto n = static_cast<Eigen::Index>(dim);
  if (dim <= opts.krylov_dim) {
    CMatrix full(n, n);
    CVector e = CVector::Zero(n), col(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      e.setZero();
      e[i] = 1.0;
      op(e, col);
      full.col(i) = col;
    }
    full = 0.5 * (full + full.adjoint()).eval();
    auto es = dense_eigensystem(full);
    return {es.values.head(static_cast<Eigen::Index>(k)), es.vectors.leftCols(static_cast<Eigen::Index>(k))};
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  auto random_vector = [&] {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(normal(rng), normal(rng));
    return v;
  };

  std::vector<CVector> locked;
  std::vector<double> values;
  std::vector<CVector> basis;
  Eigen::MatrixXcd proj;       // basis^dag A basis
  std::deque<CVector> pending;  // A v for basis vectors not yet expanded, oldest first
  CVector w(n);
  auto extend = [&](CVector v) {
    orthogonalize(v, locked);
    orthogonalize(v, basis);
    const double nv = v.norm();
    if (nv <= 1e-10) return false;
    v /= nv;
    op(v, w);
    const auto m = static_cast<Eigen::Index>(basis.size());
    proj.conservativeResize(m + 1, m + 1);
    for (Eigen::Index i = 0; i < m; ++i) {
      proj(i, m) = basis[static_cast<std::size_t>(i)].dot(w);
      proj(m, i) = std::conj(proj(i, m));
    }
    proj(m, m) = v.dot(w).real();
    basis.push_back(std::move(v));
    pending.push_back(w);
    return true;
  };

  // Block Krylov: a block of b start vectors resolves eigenvalues of multiplicity up to b.
  const std::size_t block = std::min<std::size_t>(k, 4);
  const std::size_t m_max = std::max<std::size_t>(opts.krylov_dim, 2 * k + 8);
  for (std::size_t b = 0; b < block; ++b) extend(random_vector());
  for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
    while (basis.size() < m_max && basis.size() + locked.size() < dim) {
      bool grown = false;
      while (!pending.empty() && !grown) {
        CVector v = std::move(pending.front());
        pending.pop_front();
        grown = extend(std::move(v));
      }
      if (!grown && !extend(random_vector())) break;
    }
    // Rayleigh-Ritz on the current basis; lock converged pairs from the bottom.
    const Eigen::MatrixXcd h = 0.5 * (proj + proj.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const auto m = static_cast<Eigen::Index>(basis.size());
    auto ritz = [&](Eigen::Index j) {
      CVector x = CVector::Zero(n);
      for (Eigen::Index i = 0; i < m; ++i) x += es.eigenvectors()(i, j) * basis[static_cast<std::size_t>(i)];
      return x;
    };
    // Residuals are measured against the largest Ritz value, a lower bound on |A|.
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::Index first = 0;
    while (first < m && locked.size() < k) {
      const double theta = es.eigenvalues()[first];
      CVector x = ritz(first);
      op(x, w);
      if ((w - theta * x).norm() > opts.tolerance * scale) break;
      values.push_back(theta);
      locked.push_back(std::move(x));
      ++first;
    }
    if (locked.size() == k || restart == opts.max_restarts) break;
    // Thick restart: keep the lowest unconverged Ritz vectors; their residual
    // directions, A x for the lowest block of them, seed the next expansion.
    const Eigen::Index keep = std::min<Eigen::Index>(
        m - first, static_cast<Eigen::Index>(std::max<std::size_t>(k - locked.size() + block + 2, m_max / 3)));
    std::vector<CVector> kept;
    for (Eigen::Index j = first; j < first + keep; ++j) kept.push_back(ritz(j));
    basis.clear();
    pending.clear();
    proj.resize(0, 0);
    for (auto& x : kept) extend(std::move(x));
    while (pending.size() > block) pending.pop_back();
    if (basis.empty()) extend(random_vector());
  }
  if (locked.size() < k) {
    throw ConvergenceFailure(
        fmt::format("Lanczos did not converge for eigenpair {} of dimension {}", locked.size(), dim));
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  EigenPairs out;
  out.values.resize(static_cast<Eigen::Index>(k));
  out.vectors.resize(n, static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    out.values[static_cast<Eigen::Index>(i)] = values[order[i]];
    out.vectors.col(static_cast<Eigen::Index>(i)) = locked[order[i]];
  }
  return out;
}

Eigen::VectorXd lowest_eigenvalues(const Hamiltonian& h, std::size_t k, Backend backend, const BackendCaps& caps) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  k = std::min(k, dim);
  if (backend == Backend::Auto) backend = h.n_qubits() <= 10 ? Backend::Dense : Backend::Iterative;
  if (backend == Backend::Dense) {
    return dense_eigenvalues(realize_dense(h, caps)).head(static_cast<Eigen::Index>(k));
  }
  const SparseCMatrix m = realize_sparse(h, caps);
  MatVec op = [&m](const CVector& in, CVector& out) { out = m * in; };
  return lanczos_lowest(op, dim, k).values;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == a.cols() && hermiticity_defect(a) <= 1e-14) return dense_eigenvalues(a).cwiseAbs().maxCoeff();
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues()[0];
}

double trace_norm_hermitian(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  CMatrix h = 0.5 * (a + a.adjoint());
  return dense_eigenvalues(h).cwiseAbs().sum();
}

}  // namespace hsim

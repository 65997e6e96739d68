#pragma once

// Reference computations for the tests. Everything here is built from plain
// Kronecker products and Eigen decompositions so that it shares no code path
// with the library's bit-mask realization, sector solvers or gadget checks.

#include "hsim/hamiltonian.hpp"
#include "hsim/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(hsim::Pauli p) {
  Mat m(2, 2);
  switch (p) {
    case hsim::Pauli::I: m << 1, 0, 0, 1; break;
    case hsim::Pauli::X: m << 0, 1, 1, 0; break;
    case hsim::Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case hsim::Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// Qubit q is bit q of the basis index, so the highest qubit is the leftmost factor.
inline Mat string_matrix(const std::vector<hsim::Pauli>& ops) {
  Mat m = Mat::Identity(1, 1);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) m = kron(m, pauli(*it));
  return m;
}

inline Mat dense(const hsim::Hamiltonian& h) {
  const std::size_t n = h.n_qubits();
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat m = Mat::Zero(d, d);
  for (const auto& t : h.terms()) {
    std::vector<hsim::Pauli> ops(n, hsim::Pauli::I);
    for (const auto& [q, p] : t.axes()) ops[q] = p;
    m += hsim::to_double(t.coefficient()) * string_matrix(ops);
  }
  return m;
}

inline Eigen::VectorXd spectrum(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double op_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

inline Vec basis(std::size_t n, std::uint64_t index) {
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  v(static_cast<Eigen::Index>(index)) = 1;
  return v;
}

inline Vec w_state(std::size_t n) {
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  for (std::size_t q = 0; q < n; ++q) v(Eigen::Index{1} << q) = 1.0 / std::sqrt(static_cast<double>(n));
  return v;
}

// Number of distinct XOR combinations of the rows is 2^rank.
inline std::size_t gf2_rank_by_span(const std::vector<std::vector<hsim::Qubit>>& rows) {
  std::vector<std::uint64_t> span{0};
  for (const auto& r : rows) {
    std::uint64_t mask = 0;
    for (auto q : r) mask ^= std::uint64_t{1} << q;
    std::vector<std::uint64_t> next = span;
    for (auto s : span) next.push_back(s ^ mask);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    span = std::move(next);
  }
  std::size_t rank = 0;
  while ((std::size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

// Effective low-energy Hamiltonian of Delta H0 + V to second order, on the
// image of the ancilla state: P H1 P - P H2 Q H0^+ Q H2 P.
inline Mat second_order_effective(const Mat& h0, const Mat& h1, const Mat& h2, const Mat& p) {
  const Mat q = Mat::Identity(p.rows(), p.cols()) - p;
  Eigen::SelfAdjointEigenSolver<Mat> es(q * h0 * q);
  Mat pinv = Mat::Zero(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (std::abs(l) > 1e-9) pinv += (1.0 / l) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return p * h1 * p - p * h2 * q * pinv * q * h2 * p;
}

// Two-qubit chain projector in the basis |q_u q_v> = |00>, |01>, |10>, |11>.
inline Eigen::Matrix4d pair_projector() {
  Eigen::Matrix4d p;
  p << 0, 0, 0, 0,
       0, 0.5, -0.5, 0,
       0, -0.5, 0.5, 0,
       0, 0, 0, 1;
  return p;
}

// Sum of pair projectors on the edges (k, k+1) with lo <= k, k+1 < hi, restricted
// to the given list of basis states.
inline Eigen::MatrixXd chain_projector_sum(const std::vector<std::uint64_t>& states, std::size_t lo, std::size_t hi) {
  const Eigen::Matrix4d p = pair_projector();
  const auto d = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = lo; k + 1 < hi; ++k) {
    const std::uint64_t both = (std::uint64_t{1} << k) | (std::uint64_t{1} << (k + 1));
    auto local = [&](std::uint64_t x) { return static_cast<int>(((x >> k) & 1) << 1 | ((x >> (k + 1)) & 1)); };
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        if ((states[r] & ~both) != (states[c] & ~both)) continue;
        m(r, c) += p(local(states[r]), local(states[c]));
      }
    }
  }
  return m;
}

inline std::vector<std::uint64_t> all_states(std::size_t n) {
  std::vector<std::uint64_t> s(std::size_t{1} << n);
  for (std::size_t x = 0; x < s.size(); ++x) s[x] = x;
  return s;
}

inline std::vector<std::uint64_t> weight_sector(std::size_t n, int w) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if (__builtin_popcountll(x) == w) s.push_back(x);
  }
  return s;
}

inline Eigen::MatrixXd kernel_projector(const Eigen::MatrixXd& h, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (std::abs(es.eigenvalues()(i)) < tol) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
  }
  return p;
}

// ||Pi_{A u B} - Pi_A Pi_B|| for A = [0, a), B = [m - b, m) on an m-qubit chain,
// evaluated sector by sector in Hamming weight.
inline double overlap_delta(std::size_t m, std::size_t a, std::size_t b) {
  double worst = 0;
  for (int w = 0; w <= static_cast<int>(m); ++w) {
    const auto states = weight_sector(m, w);
    const Eigen::MatrixXd pa = kernel_projector(chain_projector_sum(states, 0, a));
    const Eigen::MatrixXd pb = kernel_projector(chain_projector_sum(states, m - b, m));
    const Eigen::MatrixXd pab = kernel_projector(chain_projector_sum(states, 0, m));
    const Eigen::MatrixXd diff = pab - pa * pb;
    if (diff.size() == 0) continue;
    worst = std::max(worst, Eigen::JacobiSVD<Eigen::MatrixXd>(diff).singularValues()(0));
  }
  return worst;
}

// Gamma * sum P + 1 - sum (1 - Z)/2 on n qubits, dense and real.
inline Eigen::MatrixXd w_chain(std::size_t n, double gamma) {
  const auto states = all_states(n);
  Eigen::MatrixXd h = gamma * chain_projector_sum(states, 0, n);
  for (std::size_t x = 0; x < states.size(); ++x) {
    h(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) += 1.0 - __builtin_popcountll(x);
  }
  return h;
}

// Pseudo-inverse of a positive semidefinite matrix on the complement of its kernel.
inline Eigen::MatrixXd psd_pinv(const Eigen::MatrixXd& h, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > tol) g += (1.0 / l) * es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
  }
  return g;
}

inline Eigen::VectorXd flip(const Eigen::VectorXd& v, std::size_t q) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index x = 0; x < v.size(); ++x) out(x ^ (Eigen::Index{1} << q)) = v(x);
  return out;
}

}  // namespace oracle

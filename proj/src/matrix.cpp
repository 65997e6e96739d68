#include "hsim/matrix.hpp"

#include "hsim/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <map>
#include <unordered_map>

namespace hsim {

namespace {

struct RealizedTerm {
  std::uint64_t flip;
  std::uint64_t phase;
  cplx factor;
};

std::vector<RealizedTerm> prepare(const Hamiltonian& h) {
  if (h.n_qubits() > 62) throw CapExceeded(fmt::format("{} qubits cannot be realised as a matrix", h.n_qubits()));
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<RealizedTerm> out;
  out.reserve(h.size());
  for (const auto& t : h.terms()) {
    const double c = to_double(t.coefficient());
    if (!std::isfinite(c)) {
      throw NonFiniteValue(fmt::format("coefficient {} exceeds double range", format_real(t.coefficient())));
    }
    out.push_back({t.flip_mask(), t.phase_mask(), c * ipow[t.y_count() & 3]});
  }
  return out;
}

inline cplx element(const RealizedTerm& t, std::uint64_t x) {
  return (std::popcount(x & t.phase) & 1) ? -t.factor : t.factor;
}

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long parsed = std::strtoul(v, &end, 10);
  if (end == v || *end) return fallback;
  return parsed;
}

}  // namespace

BackendCaps BackendCaps::from_env() {
  BackendCaps c;
  c.dense = env_cap("HSIM_DENSE_CAP", c.dense);
  c.iterative = env_cap("HSIM_ITERATIVE_CAP", c.iterative);
  return c;
}

OperatorMatrix::OperatorMatrix(CMatrix m) : dimension_(m.rows()), storage_(std::move(m)) {
  hermitian_ = hermiticity_defect(dense()) <= 1e-12;
}

OperatorMatrix::OperatorMatrix(SparseCMatrix m) : dimension_(m.rows()), storage_(std::move(m)) {
  const SparseCMatrix& s = sparse();
  SparseCMatrix adj = s.adjoint();
  const double scale = std::max(1.0, s.norm());
  hermitian_ = (s - adj).norm() / scale <= 1e-12;
}

CMatrix OperatorMatrix::to_dense() const {
  if (is_dense()) return dense();
  return CMatrix(sparse());
}

CMatrix realize_dense(const Hamiltonian& h, const BackendCaps& caps) {
  if (h.n_qubits() > caps.dense) {
    throw CapExceeded(fmt::format("{} qubits exceeds the dense cap of {}", h.n_qubits(), caps.dense));
  }
  auto terms = prepare(h);
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : terms) {
    for (std::uint64_t x = 0; x < dim; ++x) m(static_cast<Eigen::Index>(x ^ t.flip), static_cast<Eigen::Index>(x)) += element(t, x);
  }
  return m;
}

SparseCMatrix realize_sparse(const Hamiltonian& h, const BackendCaps& caps) {
  if (h.n_qubits() > caps.iterative) {
    throw CapExceeded(fmt::format("{} qubits exceeds the iterative cap of {}", h.n_qubits(), caps.iterative));
  }
  auto terms = prepare(h);
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(terms.size() * dim);
  for (const auto& t : terms) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      trip.emplace_back(static_cast<int>(x ^ t.flip), static_cast<int>(x), element(t, x));
    }
  }
  SparseCMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trip.begin(), trip.end());
  m.prune(cplx(0.0, 0.0), 0.0);
  m.makeCompressed();
  return m;
}

OperatorMatrix realize(const Hamiltonian& h, Storage storage, const BackendCaps& caps) {
  if (storage == Storage::Dense) return OperatorMatrix(realize_dense(h, caps));
  return OperatorMatrix(realize_sparse(h, caps));
}

CVector apply(const Hamiltonian& h, const CVector& x) {
  auto terms = prepare(h);
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  if (static_cast<std::uint64_t>(x.size()) != dim) throw InvalidArgument("vector dimension does not match the register");
  CVector y = CVector::Zero(x.size());
  for (const auto& t : terms) {
    for (std::uint64_t s = 0; s < dim; ++s) y[static_cast<Eigen::Index>(s ^ t.flip)] += element(t, s) * x[static_cast<Eigen::Index>(s)];
  }
  return y;
}

std::vector<std::uint64_t> sector_states(std::size_t n, std::size_t weight) {
  std::vector<std::uint64_t> out;
  if (weight > n) return out;
  if (weight == 0) return {0};
  std::uint64_t v = (std::uint64_t{1} << weight) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (v < limit) {
    out.push_back(v);
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

namespace {

std::vector<Eigen::Triplet<cplx>> sector_triplets(const Hamiltonian& h, std::size_t weight, Eigen::Index& dim) {
  auto terms = prepare(h);
  auto states = sector_states(h.n_qubits(), weight);
  std::unordered_map<std::uint64_t, Eigen::Index> rank;
  rank.reserve(states.size() * 2);
  for (std::size_t i = 0; i < states.size(); ++i) rank.emplace(states[i], static_cast<Eigen::Index>(i));
  dim = static_cast<Eigen::Index>(states.size());
  std::vector<Eigen::Triplet<cplx>> trip;
  std::map<std::pair<std::uint64_t, std::uint64_t>, cplx> leak;
  double scale = 0;
  for (const auto& t : terms) {
    scale += std::abs(t.factor);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const std::uint64_t x = states[static_cast<std::size_t>(j)];
      const std::uint64_t y = x ^ t.flip;
      if (auto it = rank.find(y); it != rank.end()) {
        trip.emplace_back(it->second, j, element(t, x));
      } else {
        leak[{y, x}] += element(t, x);
      }
    }
  }
  for (const auto& [k, v] : leak) {
    if (std::abs(v) > 1e-12 * std::max(1.0, scale)) {
      throw InvalidArgument(fmt::format("Hamiltonian does not conserve Hamming weight (sector {})", weight));
    }
  }
  return trip;
}

}  // namespace

CMatrix realize_sector(const Hamiltonian& h, std::size_t weight) {
  Eigen::Index d = 0;
  auto trip = sector_triplets(h, weight, d);
  CMatrix m = CMatrix::Zero(d, d);
  for (const auto& t : trip) m(t.row(), t.col()) += t.value();
  return m;
}

SparseCMatrix realize_sector_sparse(const Hamiltonian& h, std::size_t weight) {
  Eigen::Index d = 0;
  auto trip = sector_triplets(h, weight, d);
  SparseCMatrix m(d, d);
  m.setFromTriplets(trip.begin(), trip.end());
  m.prune(cplx(0.0, 0.0), 0.0);
  m.makeCompressed();
  return m;
}

double hermiticity_defect(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).norm() / std::max(1.0, a.norm());
}

CMatrix kron_low(const CMatrix& low, const CMatrix& high) {
  const Eigen::Index dl = low.rows(), cl = low.cols();
  CMatrix out(dl * high.rows(), cl * high.cols());
  for (Eigen::Index j = 0; j < high.rows(); ++j) {
    for (Eigen::Index l = 0; l < high.cols(); ++l) out.block(j * dl, l * cl, dl, cl) = high(j, l) * low;
  }
  return out;
}

CVector kron_low(const CVector& low, const CVector& high) {
  CVector out(low.size() * high.size());
  for (Eigen::Index j = 0; j < high.size(); ++j) out.segment(j * low.size(), low.size()) = high[j] * low;
  return out;
}

}  // namespace hsim

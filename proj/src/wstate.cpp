#include "hsim/wstate.hpp"

#include "hsim/errors.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <optional>

namespace hsim {

CVector w_state(std::size_t n) {
  if (n < 1) throw InvalidArgument("W state needs n >= 1");
  if (n > 30) throw CapExceeded("W state vector limited to 30 qubits");
  CVector v = CVector::Zero(Eigen::Index{1} << n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t q = 0; q < n; ++q) v[Eigen::Index{1} << q] = amp;
  return v;
}

CVector zero_state(std::size_t n) {
  CVector v = CVector::Zero(Eigen::Index{1} << n);
  v[0] = 1.0;
  return v;
}

std::vector<PauliTerm> pair_projector_terms(Qubit u, Qubit v, const Real& scale) {
  const Real half = scale / 2, quarter = scale / 4;
  return {
      PauliTerm(half, {}),
      single(-quarter, u, Pauli::Z),
      single(-quarter, v, Pauli::Z),
      make_term(-quarter, {{u, Pauli::X}, {v, Pauli::X}}),
      make_term(-quarter, {{u, Pauli::Y}, {v, Pauli::Y}}),
  };
}

Hamiltonian build_hw0(std::size_t n) {
  if (n < 2) throw InvalidArgument("H_W0 needs n >= 2");
  std::vector<PauliTerm> terms;
  for (Qubit i = 0; i + 1 < n; ++i) {
    auto p = pair_projector_terms(i, i + 1);
    terms.insert(terms.end(), p.begin(), p.end());
  }
  return Hamiltonian(n, std::move(terms), fmt::format("H_W0(n={})", n));
}

Hamiltonian build_hw(const WChainSpec& spec, bool require_gadget_condition, const GammaCap& cap,
                     std::size_t register_size, Qubit offset) {
  const std::size_t n = spec.n;
  if (n < 1) throw InvalidArgument("chain needs n >= 1");
  if (!(spec.gamma_coupling > 0)) throw InvalidArgument("chain coupling must be positive");
  const double ceiling = cap.c * std::pow(static_cast<double>(n), cap.p);
  if (spec.gamma_coupling > ceiling) {
    throw InvalidArgument(fmt::format("coupling {} exceeds the polynomial cap {}", spec.gamma_coupling, ceiling));
  }
  if (require_gadget_condition && !(spec.gamma_coupling * spec.gap_estimate + 1.0 > 5.0 * static_cast<double>(n))) {
    throw GammaTooSmall(fmt::format("Gamma * gap + 1 = {} does not exceed 5n = {}",
                                    spec.gamma_coupling * spec.gap_estimate + 1.0, 5 * n));
  }
  if (register_size == 0) register_size = offset + n;
  if (offset + n > register_size) throw IndexOutOfRange("chain does not fit in the register");
  const Real gamma = spec.gamma_coupling;
  std::vector<PauliTerm> terms;
  for (Qubit k = 0; k + 1 < n; ++k) {
    auto p = pair_projector_terms(offset + k, offset + k + 1, gamma);
    terms.insert(terms.end(), p.begin(), p.end());
  }
  // 1 - sum (1 - Z_i)/2
  terms.emplace_back(Real(1) - Real(n) / 2, PauliTerm::Axes{});
  for (Qubit k = 0; k < n; ++k) terms.push_back(single(Real(1) / 2, offset + k, Pauli::Z));
  return Hamiltonian(register_size, std::move(terms), fmt::format("H_W(n={})", n));
}

Eigen::VectorXd measure_gap(const Hamiltonian& h, std::size_t k, Backend backend, const BackendCaps& caps) {
  return lowest_eigenvalues(h, k, backend, caps);
}

double hw0_gap(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, double> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  const Hamiltonian h = build_hw0(n);
  std::vector<double> all;
  for (std::size_t w = 0; w <= n; ++w) {
    const CMatrix block = realize_sector(h, w);
    const Eigen::VectorXd ev = dense_eigenvalues(block);
    all.insert(all.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(all.begin(), all.end());
  if (all.size() < 3) throw InvalidArgument("chain too short for a gap");
  const double gap = all[2];
  std::lock_guard lock(mutex);
  memo.emplace(n, gap);
  return gap;
}

double gap_estimate(std::size_t n) {
  if (n < 2) throw InvalidArgument("gap estimate needs n >= 2");
  if (n <= kGapCalibrationLength) return hw0_gap(n);
  const double base = hw0_gap(kGapCalibrationLength);
  return base * std::pow(static_cast<double>(n) / static_cast<double>(kGapCalibrationLength), kGapFitExponent);
}

WChainSpec policy_chain(std::size_t n) {
  WChainSpec s;
  s.n = n;
  s.gap_estimate = gap_estimate(n);
  s.gamma_coupling = std::ceil(5.0 * static_cast<double>(n) / s.gap_estimate);
  return s;
}

std::vector<GapRow> gap_scan(const std::vector<std::size_t>& ns, Backend backend) {
  std::vector<GapRow> rows;
  for (auto n : ns) {
    const Eigen::VectorXd ev = measure_gap(build_hw0(n), 3, backend);
    rows.push_back({n, ev[1], ev[2], ev[2]});
  }
  return rows;
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& gap) {
  if (n.size() != gap.size() || n.size() < 2) throw InvalidArgument("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0) || !(gap[i] > 0)) throw InvalidArgument("slope fit needs positive data");
    const double x = std::log(n[i]), y = std::log(gap[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0) throw InvalidArgument("slope fit needs distinct n");
  return (k * sxy - sx * sy) / denom;
}

OverlapReport overlap_closed_form(double m, double a, double b) {
  OverlapReport r;
  const double ab = m - a, bb = m - b, l = a + b - m;
  r.lambda[0] = std::sqrt(a * bb) / m - std::sqrt(bb / a);
  r.lambda[1] = std::sqrt(a * b) / m - l / std::sqrt(a * b);
  r.lambda[2] = std::sqrt(ab * b) / m - std::sqrt(ab / b);
  r.lambda[3] = std::sqrt(ab * bb) / m;
  r.lambda[4] = -std::sqrt(ab * bb) / std::sqrt(a * b);
  const double* L = r.lambda;
  r.p = L[1] * L[1] + L[2] * L[2];
  r.q = L[0] * L[0] + L[3] * L[3];
  r.r = L[0] * L[1] + L[2] * L[3];
  const double disc = std::sqrt(r.p * r.p - 2 * r.p * r.q + r.q * r.q + 4 * r.r * r.r);
  r.u1 = 0.5 * (-disc + r.p + r.q);
  r.u2 = 0.5 * (disc + r.p + r.q);
  r.delta_ab = std::max({std::sqrt(std::max(r.u1, 0.0)), std::sqrt(std::max(r.u2, 0.0)), std::abs(L[4])});
  return r;
}

OverlapReport delta_overlap_exact(std::size_t m, double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw InvalidArgument("overlap fraction must lie in (0, 1)");
  const double a_exact = (1.0 + gamma) * static_cast<double>(m) / 2.0;
  const long a = std::lround(a_exact);
  const long mi = static_cast<long>(m);
  if (a < 1 || mi - a < 1 || 2 * a - mi < 1) {
    throw DegenerateSplit(fmt::format("m = {}, gamma = {} gives region sizes a = {}, a_bar = {}, l = {}", m, gamma, a,
                                      mi - a, 2 * a - mi));
  }
  OverlapReport r = overlap_closed_form(static_cast<double>(m), static_cast<double>(a), static_cast<double>(a));
  r.m = m;
  r.gamma = gamma;
  r.a = r.b = static_cast<std::size_t>(a);
  r.a_bar = r.b_bar = static_cast<std::size_t>(mi - a);
  r.l = static_cast<std::size_t>(2 * a - mi);
  r.a_exact = a_exact;
  return r;
}

double martingale_epsilon(double gamma, OverlapBound bound) {
  if (bound == OverlapBound::Triangle) return 0.5 - 5.0 * (1.0 - gamma) / (1.0 + gamma);
  const double a = (1.0 + gamma) / 2.0;
  return 0.5 - overlap_closed_form(1.0, a, a).delta_ab;
}

double gap_exponent(double gamma, OverlapBound bound) {
  const double eps = martingale_epsilon(gamma, bound);
  if (!(eps > 0)) throw InvalidGamma(fmt::format("gamma = {} gives no positive recursion factor", gamma));
  return std::log(1.0 / eps) / std::log((1.0 + gamma) / 2.0);
}

double martingale_gap_bound(std::size_t n, double gamma, OverlapBound bound) {
  if (!(gamma > 0 && gamma < 1)) throw InvalidGamma("overlap fraction must lie in (0, 1)");
  if (bound == OverlapBound::Triangle && !(gamma > 9.0 / 11.0)) {
    throw InvalidGamma(fmt::format("gamma = {} must exceed 9/11", gamma));
  }
  if (n < 2) throw InvalidArgument("chain needs n >= 2");
  double factor = 1.0;
  std::size_t cur = n;
  while (cur > 4) {
    const auto next = std::min<std::size_t>(
        static_cast<std::size_t>(std::ceil((1.0 + gamma) * static_cast<double>(cur) / 2.0)), cur - 1);
    double eps;
    if (bound == OverlapBound::Triangle) {
      eps = martingale_epsilon(gamma, bound);
    } else {
      eps = 0.5 - overlap_closed_form(static_cast<double>(cur), static_cast<double>(next), static_cast<double>(next)).delta_ab;
      if (!(eps > 0)) throw InvalidGamma(fmt::format("overlap bound reaches 1/2 at n = {}", cur));
    }
    factor *= eps;
    cur = next;
  }
  return factor * hw0_gap(cur);
}

namespace {

void check_chain(const WChainSpec& spec, std::size_t i, std::size_t j) {
  if (i == j) throw InvalidArgument("coupling sites must differ");
  if (i >= spec.n || j >= spec.n) throw IndexOutOfRange("coupling site outside the chain");
}

GadgetConstants constants_dense(const WChainSpec& spec, std::size_t i, std::size_t j) {
  const std::size_t n = spec.n;
  const Eigen::MatrixXd h = realize_dense(build_hw(spec)).real();
  const Eigen::VectorXd w = w_state(n).real();
  const auto dim = h.rows();
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(dim, dim) - w * w.transpose();
  const Eigen::MatrixXd restricted = proj * h * proj;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(restricted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  if (svd.rank() != dim - 1) {
    throw SingularRestriction(fmt::format("restricted chain operator has rank {} < {}", svd.rank(), dim - 1));
  }
  auto flipped = [&](std::size_t q) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index x = 0; x < dim; ++x) v[x ^ (Eigen::Index{1} << q)] = w[x];
    return Eigen::VectorXd(proj * v);
  };
  const Eigen::VectorXd vi = flipped(i), vj = flipped(j);
  const Eigen::VectorXd xi = svd.solve(vi), xj = svd.solve(vj);
  GadgetConstants c;
  c.C = vi.dot(xj) + vj.dot(xi);
  c.D = 2.0 * vi.dot(xi);
  c.n = n, c.i = i, c.j = j, c.gamma_coupling = spec.gamma_coupling;
  return c;
}

GadgetConstants constants_sector(const WChainSpec& spec, std::size_t i, std::size_t j) {
  const std::size_t n = spec.n;
  const Hamiltonian h = build_hw(spec);
  const double e0 = realize_sector(h, 0)(0, 0).real();
  if (!(e0 > 1e-10)) throw SingularRestriction("all-zero state has non-positive energy");
  const double inv_n = 1.0 / static_cast<double>(n);
  GadgetConstants c;
  c.n = n, c.i = i, c.j = j, c.gamma_coupling = spec.gamma_coupling;
  c.C = 2.0 * inv_n / e0;
  c.D = 2.0 * inv_n / e0;
  if (n < 2) return c;
  const Eigen::SparseMatrix<double> block = realize_sector_sparse(h, 2).real();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(block);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() <= 1e-10) {
    throw SingularRestriction("two-excitation block of the chain is not positive definite");
  }
  const auto states = sector_states(n, 2);
  auto psi = [&](std::size_t site) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(states.size()));
    const std::uint64_t bit = std::uint64_t{1} << site;
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (states[k] & bit) v[static_cast<Eigen::Index>(k)] = std::sqrt(inv_n);
    }
    return v;
  };
  const Eigen::VectorXd pi = psi(i), pj = psi(j);
  const Eigen::VectorXd xi = ldlt.solve(pi), xj = ldlt.solve(pj);
  c.C += pi.dot(xj) + pj.dot(xi);
  c.D += 2.0 * pi.dot(xi);
  return c;
}

}  // namespace

GadgetConstants compute_constants(const WChainSpec& spec, std::size_t i, std::size_t j, ConstantsMethod method) {
  check_chain(spec, i, j);
  if (!(spec.gamma_coupling * spec.gap_estimate + 1.0 > 5.0 * static_cast<double>(spec.n))) {
    throw GammaTooSmall("chain coupling violates Gamma * gap + 1 > 5n");
  }
  if (method == ConstantsMethod::Dense) return constants_dense(spec, i, j);
  return constants_sector(spec, i, j);
}

namespace {

// Lowest two eigenpairs of a Hamming-weight conserving Hamiltonian, found sector by sector.
std::optional<EigenPairs> lowest_by_sectors(const Hamiltonian& h) {
  const std::size_t n = h.n_qubits();
  if (n > 20) return std::nullopt;
  struct Level {
    double value;
    std::size_t weight;
    Eigen::Index column;
  };
  std::vector<Level> levels;
  std::vector<EigenPairs> blocks;
  try {
    for (std::size_t w = 0; w <= n; ++w) {
      blocks.push_back(dense_eigensystem(realize_sector(h, w)));
      for (Eigen::Index c = 0; c < std::min<Eigen::Index>(2, blocks.back().values.size()); ++c) {
        levels.push_back({blocks.back().values[c], w, c});
      }
    }
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
  std::sort(levels.begin(), levels.end(), [](const Level& x, const Level& y) { return x.value < y.value; });
  const std::size_t k = std::min<std::size_t>(2, levels.size());
  EigenPairs out;
  out.values.resize(static_cast<Eigen::Index>(k));
  out.vectors = CMatrix::Zero(Eigen::Index{1} << n, static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const auto& lv = levels[i];
    const auto states = sector_states(n, lv.weight);
    out.values[static_cast<Eigen::Index>(i)] = lv.value;
    for (std::size_t s = 0; s < states.size(); ++s) {
      out.vectors(static_cast<Eigen::Index>(states[s]), static_cast<Eigen::Index>(i)) =
          blocks[lv.weight].vectors(static_cast<Eigen::Index>(s), lv.column);
    }
  }
  return out;
}

}  // namespace

double correlation_through_chain(const Hamiltonian& h, const PauliTerm& a, const PauliTerm& b) {
  EigenPairs low;
  if (auto by_sector = lowest_by_sectors(h)) {
    low = std::move(*by_sector);
  } else if (h.n_qubits() <= 10) {
    low = dense_eigensystem(realize_dense(h));
  } else {
    const SparseCMatrix m = realize_sparse(h);
    low = lanczos_lowest([&m](const CVector& in, CVector& out) { out = m * in; }, m.rows(), 2);
  }
  const double scale = std::max(1.0, std::abs(low.values[0]));
  if (low.values.size() > 1 && low.values[1] - low.values[0] <= 1e-8 * scale) {
    throw DegenerateGroundSpace("ground state of the chain is degenerate");
  }
  const CVector psi = low.vectors.col(0);
  const Hamiltonian ha(h.n_qubits(), {a}), hb(h.n_qubits(), {b});
  const CVector bpsi = apply(hb, psi);
  const CVector apsi = apply(ha, psi);
  const cplx ab = apsi.dot(bpsi);  // <psi|A^dag B|psi>, A Hermitian
  const cplx ea = psi.dot(apsi), eb = psi.dot(bpsi);
  return (ab - ea * eb).real();
}

GadgetConstants ChainConstantsCache::get(std::size_t n) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = table_.find(n); it != table_.end()) return it->second;
  }
  const GadgetConstants c = compute_constants(policy_chain(n), 0, n - 1, ConstantsMethod::Sector);
  std::lock_guard lock(mutex_);
  table_.emplace(n, c);
  return c;
}

}  // namespace hsim

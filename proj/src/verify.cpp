#include "hsim/verify.hpp"

#include "hsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace hsim {

std::size_t StateEncoding::n_ancilla() const {
  std::size_t k = 0;
  while ((Eigen::Index{1} << k) < ancilla.size()) ++k;
  return k;
}

CMatrix StateEncoding::isometry() const {
  const Eigen::Index dd = Eigen::Index{1} << n_data;
  return kron_low(CMatrix::Identity(dd, dd), CMatrix(ancilla));
}

StateEncoding make_encoding(std::size_t n_data, CVector ancilla, int p, int q) {
  if (p != 1 || q != 0) {
    throw UnsupportedEncoding(fmt::format("only p = 1, q = 0 encodings are implemented (got p = {}, q = {})", p, q));
  }
  const Eigen::Index d = ancilla.size();
  if (d < 1 || (d & (d - 1)) != 0) throw InvalidArgument("ancilla state dimension must be a power of two");
  if (std::abs(ancilla.norm() - 1.0) > 1e-10) throw InvalidArgument("ancilla state must be normalized");
  return {n_data, std::move(ancilla)};
}

StateEncoding encoding_of(const GadgetApplication& app) { return make_encoding(app.n_data(), ancilla_state(app)); }

StateEncoding encoding_of(std::size_t n_data, std::size_t n_total, const std::vector<AncillaBlock>& blocks) {
  GadgetApplication shell;
  shell.target = Hamiltonian(n_data);
  shell.h0 = Hamiltonian(n_total);
  shell.ancillas = blocks;
  return make_encoding(n_data, ancilla_state(shell));
}

CMatrix partial_trace_ancilla(const CMatrix& rho, std::size_t n_data) {
  const Eigen::Index dd = Eigen::Index{1} << n_data;
  if (rho.rows() % dd != 0) throw InvalidArgument("state dimension does not contain the data register");
  const Eigen::Index da = rho.rows() / dd;
  CMatrix out = CMatrix::Zero(dd, dd);
  for (Eigen::Index j = 0; j < da; ++j) out += rho.block(j * dd, j * dd, dd, dd);
  return out;
}

LowSpace low_space(const Hamiltonian& target, const Hamiltonian& simulator, const StateEncoding& encoding,
                   const BackendCaps& caps) {
  if (target.n_qubits() != encoding.n_data) throw InvalidArgument("encoding does not match the target register");
  if (simulator.n_qubits() != encoding.n_data + encoding.n_ancilla()) {
    throw InvalidArgument("encoding does not match the simulator register");
  }
  LowSpace ls;
  ls.encoding = encoding;
  ls.target = dense_eigensystem(realize_dense(target, caps));
  ls.simulator = dense_eigensystem(realize_dense(simulator, caps));
  ls.t = encoding.isometry();
  const Eigen::Index d = ls.t.cols();
  const CMatrix u = ls.simulator.vectors.leftCols(d);
  Eigen::JacobiSVD<CMatrix> svd(u.adjoint() * ls.t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ls.t_tilde = u * svd.matrixU() * svd.matrixV().adjoint();
  return ls;
}

SpectralReport spectral_compare(const Hamiltonian& target, const Hamiltonian& simulator, double cutoff,
                                const StateEncoding& encoding, double epsilon, double eta, const BackendCaps& caps) {
  const LowSpace ls = low_space(target, simulator, encoding, caps);
  const Eigen::Index d = ls.t.cols();
  SpectralReport rep;
  rep.cutoff = cutoff;
  rep.requested_epsilon = epsilon;
  rep.requested_eta = eta;
  const auto& sv = ls.simulator.values;
  rep.below_cutoff = static_cast<std::size_t>((sv.array() < cutoff).count());
  if (rep.below_cutoff < static_cast<std::size_t>(d)) {
    throw SpectrumMismatch(fmt::format("{} simulator levels below the cutoff {}, need {}", rep.below_cutoff, cutoff, d));
  }
  rep.next_level = d < sv.size() ? sv[d] : std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < d; ++i) {
    MatchedPair p;
    p.target_index = p.simulator_index = static_cast<std::size_t>(i);
    p.target = ls.target.values[i];
    p.simulator = sv[i];
    p.gap = std::abs(p.target - p.simulator);
    rep.epsilon_hat = std::max(rep.epsilon_hat, p.gap);
    rep.pairs.push_back(p);
  }
  const CMatrix u = ls.simulator.vectors.leftCols(d);
  const Eigen::VectorXd sigma = Eigen::JacobiSVD<CMatrix>(u.adjoint() * ls.t).singularValues();
  const double smin = std::min(1.0, sigma.minCoeff());
  rep.eta_hat = std::sqrt(std::max(0.0, 1.0 - smin * smin));
  rep.isometry_error = spectral_norm(ls.t_tilde - ls.t);
  const CMatrix w = u.adjoint() * ls.t_tilde;
  const CMatrix low = w.adjoint() * sv.head(d).cast<cplx>().asDiagonal() * w;
  const CMatrix ht = ls.target.vectors * ls.target.values.cast<cplx>().asDiagonal() * ls.target.vectors.adjoint();
  rep.epsilon_op = spectral_norm(low - ht);
  rep.pass_epsilon = rep.epsilon_hat <= epsilon;
  rep.pass_eta = rep.eta_hat <= eta;
  return rep;
}

std::vector<SuiteRow> gadget_spectral_suite(const PolicyConstants& policy, double epsilon, double eta,
                                            const std::vector<double>& multipliers) {
  std::vector<SuiteRow> rows;
  for (auto& [name, base] : gadget_suite()) {
    const StateEncoding enc = encoding_of(base);
    const Real d0 = policy_delta(base, epsilon, eta, policy);
    for (double m : multipliers) {
      GadgetApplication app = base;
      app.delta = d0 * m;
      SuiteRow row{name, m, app.delta, {}};
      row.report = spectral_compare(app.target, assemble(app), to_double(app.delta) / 2, enc, epsilon, eta);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

bool PhysicalRow::pass() const {
  return std::all_of(partition.begin(), partition.end(), [](const auto& r) { return r.pass; }) &&
         std::all_of(dynamics.begin(), dynamics.end(), [](const auto& r) { return r.pass; });
}

std::vector<PhysicalRow> physical_suite(const PolicyConstants& policy, const std::vector<double>& betas,
                                        const std::vector<double>& times, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PhysicalRow> rows;
  for (auto& [name, base] : gadget_suite()) {
    if (name != "subdivision" && !name.starts_with("long-range")) continue;
    GadgetApplication app = base;
    app.delta = policy_delta(app, 0.1, 0.1, policy);
    const double cutoff = to_double(app.delta) / 2;
    const StateEncoding enc = encoding_of(app);
    const Hamiltonian hs = assemble(app);
    PhysicalRow row{name, app.delta, spectral_compare(app.target, hs, cutoff, enc), {}, {}};
    const LowSpace ls = low_space(app.target, hs, enc);
    for (double beta : betas) row.partition.push_back(partition_compare(ls, beta, cutoff, row.spectral.epsilon_hat));
    const std::size_t dd = std::size_t{1} << app.n_data();
    for (double t : times) {
      const CMatrix sigma = random_density(dd, 2, rng);
      row.dynamics.push_back(dynamics_compare(ls, sigma, t, row.spectral.epsilon_hat, row.spectral.eta_hat));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int calibrate_policy_exponent(int order, double epsilon, double eta, int k_min, int k_max) {
  auto suite = gadget_suite();
  std::erase_if(suite, [&](const NamedApplication& g) { return g.app.third_order() != (order == 3); });
  for (int k = k_min; k <= k_max; ++k) {
    const double c = std::ldexp(1.0, k);
    bool ok = true;
    for (const auto& g : suite) {
      GadgetApplication app = g.app;
      app.delta = policy_delta(app, epsilon, eta, {c, c});
      try {
        const auto rep = spectral_compare(app.target, assemble(app), to_double(app.delta) / 2, encoding_of(app),
                                          epsilon, eta);
        ok = rep.pass_epsilon && rep.pass_eta;
      } catch (const SpectrumMismatch&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) return k;
  }
  return k_max + 1;
}

namespace {

double expectation(const EigenPairs& e, const CMatrix& rho) {
  double s = 0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    s += e.values[k] * e.vectors.col(k).dot(rho * e.vectors.col(k)).real();
  }
  return s;
}

CMatrix evolve(const EigenPairs& e, const CMatrix& rho, double t) {
  const CVector phase = (e.values.cast<cplx>() * cplx(0.0, -t)).array().exp();
  const CMatrix u = e.vectors * phase.asDiagonal() * e.vectors.adjoint();
  return u * rho * u.adjoint();
}

double log_partition(const Eigen::VectorXd& values, double beta) {
  const double m = (-beta * values.array()).maxCoeff();
  return m + std::log((-beta * values.array() - m).exp().sum());
}

}  // namespace

SoundnessResult soundness_check(const LowSpace& ls, const CMatrix& rho, double epsilon, double eta, double cutoff) {
  const double e0 = ls.target.values[0];
  const double span = ls.target.values[ls.target.values.size() - 1] - e0;
  SoundnessResult r;
  r.simulator_energy = std::max(expectation(ls.simulator, rho) - e0, 0.0);
  if (r.simulator_energy > cutoff) {
    throw NotLowEnergy(fmt::format("state energy {} above the cutoff {}", r.simulator_energy, cutoff));
  }
  r.target_energy = expectation(ls.target, partial_trace_ancilla(rho, ls.encoding.n_data)) - e0;
  r.bound = 5 * r.simulator_energy + epsilon + kSoundnessConstant * std::sqrt(eta) * span;
  r.pass = r.target_energy <= r.bound + 1e-12;
  return r;
}

CompletenessResult completeness_check(const LowSpace& ls, const CMatrix& sigma) {
  const CMatrix tilde = ls.t_tilde * sigma * ls.t_tilde.adjoint();
  CompletenessResult r;
  r.trace_distance = trace_norm_hermitian(partial_trace_ancilla(tilde, ls.encoding.n_data) - sigma);
  r.energy_gap = std::abs(expectation(ls.simulator, tilde) - expectation(ls.target, sigma));
  return r;
}

GentleResult gentle_measurement_bound(const CMatrix& rho, const CMatrix& m) {
  if (rho.rows() != m.rows() || m.rows() != m.cols()) throw InvalidMeasurement("measurement and state dimensions differ");
  if (hermiticity_defect(m) > 1e-10) throw InvalidMeasurement("measurement operator is not Hermitian");
  const EigenPairs me = dense_eigensystem(0.5 * (m + m.adjoint()));
  if (me.values.minCoeff() < -1e-10 || me.values.maxCoeff() > 1 + 1e-10) {
    throw InvalidMeasurement("measurement operator must satisfy 0 <= M <= 1");
  }
  const double p = (m * rho).trace().real();
  if (!(p > 0)) throw InvalidMeasurement("outcome has zero probability");
  const Eigen::VectorXd roots = me.values.cwiseMax(0.0).cwiseMin(1.0).cwiseSqrt();
  const CMatrix sqrt_m = me.vectors * roots.cast<cplx>().asDiagonal() * me.vectors.adjoint();
  GentleResult r;
  r.post_state = sqrt_m * rho * sqrt_m / p;
  r.trace_distance = trace_norm_hermitian(rho - r.post_state);
  r.bound = 2 * std::sqrt(std::max(0.0, 1.0 - p));
  r.pass = r.trace_distance <= r.bound + 1e-10;
  return r;
}

PartitionResult partition_compare(const LowSpace& ls, double beta, double cutoff, double epsilon) {
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  const Eigen::Index d = ls.t.cols();
  const auto& sv = ls.simulator.values;
  if (d < sv.size() && cutoff > sv[d] + 1e-12) {
    throw InvalidArgument(fmt::format("cutoff {} lies above the first unencoded level {}", cutoff, sv[d]));
  }
  const double log_zs = log_partition(sv, beta);
  const double log_zt = log_partition(ls.target.values, beta);
  const double norm_t = ls.target.values.cwiseAbs().maxCoeff();
  const double n_sim = static_cast<double>(ls.encoding.n_data + ls.encoding.n_ancilla());
  const double n_tgt = static_cast<double>(ls.encoding.n_data);
  const double log_first = (n_sim - n_tgt) * std::log(2.0) - beta * cutoff + beta * norm_t;
  PartitionResult r;
  r.beta = beta;
  r.relative_error = std::abs(std::expm1(log_zs - log_zt));
  r.bound = std::exp(log_first) + std::expm1(epsilon * beta);
  r.pass = r.relative_error <= r.bound * (1 + 1e-9) + 1e-14;
  return r;
}

DynamicsResult dynamics_compare(const LowSpace& ls, const CMatrix& sigma, double t, double epsilon, double eta) {
  const CMatrix rho = ls.t * sigma * ls.t.adjoint();
  const CMatrix sim = evolve(ls.simulator, rho, t);
  const CMatrix enc = ls.t * evolve(ls.target, sigma, t) * ls.t.adjoint();
  DynamicsResult r;
  r.time = t;
  r.trace_distance = trace_norm_hermitian(sim - enc);
  r.bound = 2 * epsilon * t + 4 * eta;
  r.pass = r.trace_distance <= r.bound + 1e-10;
  return r;
}

CMatrix random_density(std::size_t d, std::size_t rank, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(std::max<std::size_t>(rank, 1)));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = cplx(normal(rng), normal(rng));
  }
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

CMatrix dirichlet_mixture(const CMatrix& vectors, std::mt19937_64& rng) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  Eigen::VectorXd w(vectors.cols());
  for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = gamma(rng);
  w /= w.sum();
  return vectors * w.cast<cplx>().asDiagonal() * vectors.adjoint();
}

GapStudy gap_scaling_study(const std::vector<std::size_t>& ns, Backend backend) {
  GapStudy s;
  s.rows = gap_scan(ns, backend);
  std::vector<double> n, gap;
  for (const auto& r : s.rows) {
    if (!(r.gap > 0)) throw ConvergenceFailure(fmt::format("non-positive gap at n = {}", r.n));
    n.push_back(static_cast<double>(r.n));
    gap.push_back(r.gap);
  }
  s.slope = loglog_slope(n, gap);
  s.pass = s.slope >= kGapFitExponent;
  return s;
}

std::vector<DecayRow> nogo_demo(ChainFamily family, const std::vector<std::size_t>& ns) {
  std::vector<DecayRow> rows;
  for (auto n : ns) {
    if (n < 2) throw InvalidArgument("chains need n >= 2");
    DecayRow r;
    r.n = n;
    const PauliTerm x_first = single(1, 0, Pauli::X), x_last = single(1, static_cast<Qubit>(n - 1), Pauli::X);
    if (family == ChainFamily::W) {
      const WChainSpec spec = policy_chain(n);
      r.correlation = correlation_through_chain(build_hw(spec), x_first, x_last);
      r.expected = 2.0 / static_cast<double>(n);
      r.constant_c = compute_constants(spec, 0, n - 1).C;
    } else {
      std::vector<PauliTerm> terms{PauliTerm(Real(n) / 2, {})};
      for (Qubit q = 0; q < n; ++q) terms.push_back(single(Real(-1) / 2, q, Pauli::Z));
      r.correlation = correlation_through_chain(Hamiltonian(n, std::move(terms)), x_first, x_last);
      r.expected = 0;
      r.constant_c = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hsim

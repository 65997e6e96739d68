// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is the number of failing criteria.

#include "hsim/codes.hpp"
#include "hsim/compiler.hpp"
#include "hsim/errors.hpp"
#include "hsim/gadgets.hpp"
#include "hsim/ham_io.hpp"
#include "hsim/verify.hpp"
#include "hsim/wstate.hpp"

#include "oracles.hpp"

#include <fmt/core.h>

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace hsim;

namespace {

namespace tol {
constexpr double kKernelResidual = 1e-12;
constexpr double kZeroEigenvalue = 1e-9;
constexpr double kFidelity = 1e-10;
constexpr double kCorrelation = 1e-10;
constexpr double kOverlap = 1e-9;
constexpr double kGadgetResidual = 1e-8;
constexpr double kGadgetTarget = 0.1;
constexpr double kMonotoneSlack = 1e-9;
constexpr double kToyTarget = 0.2;
constexpr double kGapSlope = -6.13;
constexpr double kStructureSeconds = 300;
}  // namespace tol

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Sorted eigen-decomposition of a real symmetric block.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m);
}

Outcome wchain_ground_space() {
  double worst_residual = 0, worst_fidelity = 0, worst_zero = 0, min_gap = 1e300, worst_build = 0;
  bool ok = true;
  for (std::size_t n = 2; n <= 12; ++n) {
    const Hamiltonian h0 = build_hw0(n);
    worst_residual = std::max({worst_residual, hsim::apply(h0, w_state(n)).norm(), hsim::apply(h0, zero_state(n)).norm()});

    // Every chain term conserves Hamming weight, so the count of zero levels is a sum over sectors.
    std::size_t zeros = 0;
    for (int w = 0; w <= static_cast<int>(n); ++w) {
      const auto states = oracle::weight_sector(n, w);
      const Eigen::VectorXd ev = eig(oracle::chain_projector_sum(states, 0, n)).eigenvalues();
      zeros += static_cast<std::size_t>((ev.array().abs() < tol::kZeroEigenvalue).count());
    }
    ok = ok && zeros == 2;

    const WChainSpec spec = policy_chain(n);
    const Hamiltonian hw = build_hw(spec);
    double e0 = 1e300, e1 = 1e300, fidelity = 0;
    for (int w = 0; w <= static_cast<int>(n); ++w) {
      const Eigen::MatrixXd lib = realize_sector(hw, static_cast<std::size_t>(w)).real();
      const auto states = oracle::weight_sector(n, w);
      Eigen::MatrixXd ref = spec.gamma_coupling * oracle::chain_projector_sum(states, 0, n);
      ref.diagonal().array() += 1.0 - w;
      const auto es = eig(lib);
      const Eigen::VectorXd ref_ev = eig(ref).eigenvalues();
      worst_build = std::max(worst_build, (es.eigenvalues() - ref_ev).cwiseAbs().maxCoeff() / spec.gamma_coupling);
      for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double l = es.eigenvalues()(k);
        if (l < e0) {
          e1 = e0;
          e0 = l;
          fidelity = 0;
          if (w == 1) {
            const double s = es.eigenvectors().col(k).sum() / std::sqrt(static_cast<double>(n));
            fidelity = s * s;
          }
        } else if (l < e1) {
          e1 = l;
        }
      }
    }
    worst_zero = std::max(worst_zero, std::abs(e0));
    worst_fidelity = std::max(worst_fidelity, 1 - fidelity);
    min_gap = std::min(min_gap, e1 - e0);
  }
  ok = ok && worst_residual <= tol::kKernelResidual && worst_fidelity <= tol::kFidelity &&
       worst_zero <= tol::kZeroEigenvalue && min_gap >= 1 - tol::kZeroEigenvalue && worst_build <= 1e-12;
  return {ok, fmt::format("n=2..12: kernel residual {:.1e}, 1-fidelity {:.1e}, |E0| {:.1e}, min gap {:.4f}",
                          worst_residual, worst_fidelity, worst_zero, min_gap)};
}

Outcome chain_constants() {
  bool ok = true;
  double min_margin_c = 1e300, max_d = 0;
  for (std::size_t n = 2; n <= 10; ++n) {
    const WChainSpec spec = policy_chain(n);
    const bool precondition = spec.gamma_coupling * spec.gap_estimate + 1 > 5.0 * static_cast<double>(n);
    const GadgetConstants c = compute_constants(spec, 0, n - 1);
    ok = ok && precondition && c.C >= 1.0 / static_cast<double>(n) && c.D <= 2.0;
    min_margin_c = std::min(min_margin_c, c.C - 1.0 / static_cast<double>(n));
    max_d = std::max(max_d, c.D);
  }
  return {ok, fmt::format("n=2..10: min(C - 1/n) = {:.3e}, max D = {:.6f}", min_margin_c, max_d)};
}

Outcome correlation_law() {
  double worst = 0;
  for (std::size_t n = 2; n <= 12; ++n) {
    const double c = correlation_through_chain(build_hw(policy_chain(n)), single(1, 0, Pauli::X),
                                               single(1, static_cast<Qubit>(n - 1), Pauli::X));
    worst = std::max(worst, std::abs(c - 2.0 / static_cast<double>(n)));
  }
  return {worst <= tol::kCorrelation, fmt::format("n=2..12: max |corr - 2/n| = {:.2e}", worst)};
}

Outcome overlap_closed_form_check() {
  double worst = 0, worst_bound = -1e300;
  std::size_t checked = 0, degenerate = 0;
  for (std::size_t m = 1; m <= 10; ++m) {
    for (double gamma : {0.5, 0.552, 0.6, 0.75, 0.9}) {
      OverlapReport r;
      try {
        r = delta_overlap_exact(m, gamma);
      } catch (const DegenerateSplit&) {
        ++degenerate;
        continue;
      }
      ++checked;
      worst = std::max(worst, std::abs(r.delta_ab - oracle::overlap_delta(m, r.a, r.b)));
      worst_bound =
          std::max(worst_bound, r.delta_ab - (5 * (1 - gamma) / (1 + gamma) + 2.0 / static_cast<double>(m)));
    }
  }
  return {worst <= tol::kOverlap && worst_bound <= 0,
          fmt::format("{} (m, gamma) pairs, {} degenerate splits skipped: max error {:.2e}, max bound excess {:.3f}",
                      checked, degenerate, worst, worst_bound)};
}

Outcome gap_scaling() {
  const GapStudy s = gap_scaling_study({4, 5, 6, 7, 8, 9, 10, 11, 12}, Backend::Iterative);
  return {s.slope >= tol::kGapSlope,
          fmt::format("slope over n=4..12 = {:.3f} (gap(12) = {:.4e})", s.slope, s.rows.back().gap)};
}

Outcome gadget_residuals() {
  double worst = 0;
  std::size_t count = 0;
  for (const auto& [name, app] : gadget_suite()) {
    worst = std::max(worst, residual_report(app).max());
    ++count;
  }
  return {worst <= tol::kGadgetResidual, fmt::format("{} gadgets: max residual {:.2e}", count, worst)};
}

Outcome gadget_spectra() {
  const PolicyConstants policy;
  const int k2 = calibrate_policy_exponent(2, tol::kGadgetTarget, tol::kGadgetTarget);
  const int k3 = calibrate_policy_exponent(3, tol::kGadgetTarget, tol::kGadgetTarget);
  const bool frozen = std::ldexp(1.0, k2) == policy.c2 && std::ldexp(1.0, k3) == policy.c3;
  const auto rows = gadget_spectral_suite(policy, tol::kGadgetTarget, tol::kGadgetTarget, {1, 10, 100});
  bool ok = frozen;
  double worst_eps = 0, worst_eta = 0;
  std::size_t non_monotone = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.multiplier == 1) {
      worst_eps = std::max(worst_eps, r.report.epsilon_hat);
      worst_eta = std::max(worst_eta, r.report.eta_hat);
    }
    if (i > 0 && rows[i - 1].name == r.name) {
      const auto& prev = rows[i - 1].report;
      if (r.report.epsilon_hat > prev.epsilon_hat + tol::kMonotoneSlack ||
          r.report.eta_hat > prev.eta_hat + tol::kMonotoneSlack) {
        ++non_monotone;
      }
    }
  }
  ok = ok && worst_eps <= tol::kGadgetTarget && worst_eta <= tol::kGadgetTarget && non_monotone == 0;
  return {ok, fmt::format("c2 = 2^{}, c3 = 2^{} (frozen: {}); at policy Delta max eps_hat {:.3e}, eta_hat {:.3e}; "
                          "{} non-monotone steps over x1, x10, x100",
                          k2, k3, frozen ? "yes" : "no", worst_eps, worst_eta, non_monotone)};
}

Outcome toy_compile() {
  const Hamiltonian target(3, {make_term(1, {{0, Pauli::X}, {1, Pauli::X}}), make_term(1, {{1, Pauli::Z}, {2, Pauli::Z}})});
  const CompilationResult res = compile(target);
  const auto& rep = res.report;
  const StateEncoding enc = encoding_of(target.n_qubits(), rep.n_total, res.ancillas);
  const double cutoff =
      rep.certificate ? to_double(rep.certificate->cutoff) : 2 * to_double(triangle_norm_bound(target)) + 1;
  const SpectralReport sr = spectral_compare(target, res.simulator, cutoff, enc, tol::kToyTarget, tol::kToyTarget);
  const LowSpace ls = low_space(target, res.simulator, enc);
  std::mt19937_64 rng(17);
  const auto low = static_cast<Eigen::Index>(sr.below_cutoff);
  const std::size_t d = std::size_t{1} << target.n_qubits();
  std::size_t sound_fail = 0, comp_fail = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const SoundnessResult s =
        soundness_check(ls, dirichlet_mixture(ls.simulator.vectors.leftCols(low), rng), sr.epsilon_hat, sr.eta_hat, cutoff);
    sound_fail += !s.pass;
    const CompletenessResult c = completeness_check(ls, random_density(d, 1 + k % d, rng));
    comp_fail += !(c.energy_gap <= sr.epsilon_hat + 1e-9 && c.trace_distance <= 2 * sr.isometry_error + 1e-9);
  }
  const bool ok = rep.n_total <= 16 && sr.epsilon_hat <= tol::kToyTarget && sr.eta_hat <= tol::kToyTarget &&
                  sound_fail == 0 && comp_fail == 0;
  return {ok, fmt::format("N = {}, eps_hat {:.2e}, eta_hat {:.2e}, soundness (c_s = {}) failures {}/100, "
                          "completeness failures {}/100",
                          rep.n_total, sr.epsilon_hat, sr.eta_hat, kSoundnessConstant, sound_fail, comp_fail)};
}

bool structurally_sound(const CompilationResult& r) {
  const auto& rep = r.report;
  return rep.final_stats.kappa <= 2 && rep.final_stats.delta <= 4 && rep.nearest_neighbour && rep.crossings == 0 &&
         rep.qubits_within_bound && rep.chain_ok && rep.budget_ok && !check_structure(r.simulator, r.layout);
}

Outcome pipeline_structure() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, Hamiltonian>> cases;
  for (std::size_t n = 3; n <= 7; ++n) cases.emplace_back(fmt::format("repetition({})", n), build_code_hamiltonian(repetition_code(n)));
  cases.emplace_back("steane", build_code_hamiltonian(steane_code()));
  cases.emplace_back("surface(2)", build_code_hamiltonian(surface_code(2)));
  for (std::uint64_t s = 0; s < 50; ++s) cases.emplace_back(fmt::format("random seed {}", s), random_sparse(4 + s % 9, 4, 4, s));

  std::size_t failed = 0, largest = 0;
  double worst_ratio = 0;
  std::string first_failure;
  std::vector<std::string> first_pass;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [name, h] = cases[i];
    const CompilationResult r = compile(h);
    const auto& rep = r.report;
    largest = std::max(largest, rep.n_total);
    const double bound_unit = static_cast<double>(rep.n_target * rep.n_target) * rep.target_stats.kappa *
                              rep.target_stats.kappa * rep.target_stats.delta * rep.target_stats.delta;
    worst_ratio = std::max(worst_ratio, static_cast<double>(rep.n_total) / bound_unit);
    if (!structurally_sound(r)) {
      if (failed++ == 0) first_failure = name;
    }
    if (i % 8 == 0) first_pass.push_back(serialize_ham(r.simulator));
  }
  std::size_t drift = 0;
  for (std::size_t i = 0, k = 0; i < cases.size(); i += 8, ++k) {
    if (serialize_ham(compile(cases[i].second).simulator) != first_pass[k]) ++drift;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = failed == 0 && drift == 0 && seconds < tol::kStructureSeconds;
  return {ok, fmt::format("{} instances, {} failed{}{}, {} recompiled with {} differing, largest N = {}, "
                          "max N/(n^2 k^2 d^2) = {:.2f} (c_N = {}), {:.0f} s",
                          cases.size(), failed, failed ? " first: " : "", first_failure, first_pass.size(), drift,
                          largest, worst_ratio, CompilerOptions{}.c_n, seconds)};
}

Outcome physical_bounds() {
  const auto rows = physical_suite(PolicyConstants{}, {0.1, 1, 10}, {0, 0.5, 1, 2}, 29);
  std::size_t checks = 0, failed = 0;
  for (const auto& r : rows) {
    for (const auto& p : r.partition) checks++, failed += !p.pass;
    for (const auto& d : r.dynamics) checks++, failed += !d.pass;
  }
  return {failed == 0 && !rows.empty(),
          fmt::format("{} gadgets, {} partition/dynamics checks, {} failed", rows.size(), checks, failed)};
}

Outcome gentle_measurement() {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> qubits(1, 4);
  std::uniform_real_distribution<double> unit(0, 1);
  std::size_t violations = 0;
  double worst_ratio = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = std::size_t{1} << qubits(rng);
    std::uniform_int_distribution<std::size_t> rank(1, d);
    const CMatrix rho = random_density(d, rank(rng), rng);
    Eigen::SelfAdjointEigenSolver<CMatrix> basis(random_density(d, d, rng));
    Eigen::VectorXd w(static_cast<Eigen::Index>(d));
    for (auto& x : w) x = unit(rng);
    w(0) = std::max(w(0), 1e-3);
    const CMatrix m = basis.eigenvectors() * w.cast<cplx>().asDiagonal() * basis.eigenvectors().adjoint();
    GentleResult g;
    try {
      g = gentle_measurement_bound(rho, m);
    } catch (const InvalidMeasurement&) {
      continue;
    }
    violations += !g.pass;
    if (g.bound > 0) worst_ratio = std::max(worst_ratio, g.trace_distance / g.bound);
  }
  return {violations == 0, fmt::format("1000 trials, {} violations, max distance/bound {:.3f}", violations, worst_ratio)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"W-chain ground space", wchain_ground_space},
      {"long-range constants", chain_constants},
      {"correlation through the W chain", correlation_law},
      {"overlap closed form", overlap_closed_form_check},
      {"gap scaling", gap_scaling},
      {"gadget residuals", gadget_residuals},
      {"gadget spectral accuracy", gadget_spectra},
      {"toy compile", toy_compile},
      {"pipeline structure", pipeline_structure},
      {"partition function and dynamics", physical_bounds},
      {"gentle measurement", gentle_measurement},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    fmt::print("{:>2} {} {}: {} [{:.1f} s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail, s);
    std::fflush(stdout);
  }
  return failures;
}

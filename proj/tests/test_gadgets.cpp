#include "hsim/errors.hpp"
#include "hsim/gadgets.hpp"
#include "hsim/verify.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hsim;

namespace {

oracle::Mat ancilla_projector(const GadgetApplication& app) {
  const CVector a = ancilla_state(app);
  const oracle::Mat data = oracle::Mat::Identity(Eigen::Index{1} << app.n_data(), Eigen::Index{1} << app.n_data());
  return oracle::kron(a * a.adjoint(), data);
}

oracle::Mat encoded_target(const GadgetApplication& app) {
  const CVector a = ancilla_state(app);
  return oracle::kron(a * a.adjoint(), oracle::dense(app.target));
}

// Pseudo-inverse of Q h0 Q on the excited space.
oracle::Mat excited_inverse(const oracle::Mat& h0, const oracle::Mat& p) {
  const oracle::Mat q = oracle::Mat::Identity(p.rows(), p.cols()) - p;
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(q * h0 * q);
  oracle::Mat g = oracle::Mat::Zero(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (std::abs(l) > 1e-9) g += (1.0 / l) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return g;
}

}  // namespace

TEST(Gadgets, ChooseDeltaExamples) {
  EXPECT_DOUBLE_EQ(to_double(choose_delta_2(1, 1, 1, 16)), 32);
  EXPECT_DOUBLE_EQ(to_double(choose_delta_2(2, 0.1, 0.1, 16)), 16 * (6400 + 400));
  EXPECT_DOUBLE_EQ(to_double(choose_delta_3(1, 1, 1, 16)), 32);
  EXPECT_DOUBLE_EQ(to_double(choose_delta_3(2, 0.5, 0.5, 16)), 16 * (4096.0 * 8 + 8 * 8));
  EXPECT_THROW(choose_delta_2(0, 0.1, 0.1, 16), InvalidArgument);
  EXPECT_THROW(choose_delta_2(1, 0, 0.1, 16), InvalidArgument);
  EXPECT_THROW(choose_delta_3(1, 0.1, -1, 16), InvalidArgument);
  // Large Lambda stays finite beyond the double range.
  const Real huge = choose_delta_3(Real(1e30), 1e-3, 1e-3, 1);
  EXPECT_GT(huge, Real(1e300));
}

TEST(Gadgets, SplitTwoAndThree) {
  const auto [a, b] = split_two(make_term(-4, {{0, Pauli::X}, {1, Pauli::Y}, {2, Pauli::Z}}));
  EXPECT_EQ(a.support(), (std::vector<Qubit>{0, 1}));
  EXPECT_EQ(b.support(), (std::vector<Qubit>{2}));
  EXPECT_DOUBLE_EQ(to_double(a.coefficient()), -2);
  EXPECT_DOUBLE_EQ(to_double(b.coefficient()), 2);
  EXPECT_THROW(split_two(single(1, 0, Pauli::X)), InvalidArgument);
  const auto t = split_three(make_term(-8, {{0, Pauli::Z}, {1, Pauli::Z}, {2, Pauli::Z}}));
  EXPECT_NEAR(to_double(t[0].coefficient()), -2, 1e-15);
  EXPECT_NEAR(to_double(t[1].coefficient()), 2, 1e-15);
  EXPECT_NEAR(to_double(t[2].coefficient()), 2, 1e-15);
}

TEST(Gadgets, SuiteResidualsVanish) {
  for (const auto& [name, app] : gadget_suite()) {
    const ResidualReport r = residual_report(app);
    EXPECT_LE(r.residual, 1e-8) << name;
    EXPECT_LE(r.max(), 1e-8) << name;
  }
}

TEST(Gadgets, SecondOrderEffectiveMatchesOracle) {
  for (const auto& [name, app] : gadget_suite()) {
    if (app.third_order()) continue;
    const oracle::Mat p = ancilla_projector(app);
    const oracle::Mat eff =
        oracle::second_order_effective(oracle::dense(app.h0), oracle::dense(app.h1), oracle::dense(app.h2), p);
    EXPECT_LE(oracle::op_norm(eff - encoded_target(app)), 1e-8) << name;
  }
}

TEST(Gadgets, ThirdOrderEffectiveMatchesOracle) {
  for (const auto& [name, app] : gadget_suite()) {
    if (!app.third_order()) continue;
    const oracle::Mat p = ancilla_projector(app);
    const oracle::Mat q = oracle::Mat::Identity(p.rows(), p.cols()) - p;
    const oracle::Mat g = excited_inverse(oracle::dense(app.h0), p);
    const oracle::Mat h1 = oracle::dense(app.h1), h1p = oracle::dense(*app.h1_prime), h2 = oracle::dense(app.h2);
    EXPECT_LE(oracle::op_norm(p * h2 * p), 1e-10) << name;
    EXPECT_LE(oracle::op_norm(p * h1p * p - p * h2 * g * h2 * p), 1e-8) << name;
    const oracle::Mat eff = p * h1 * p + p * h2 * g * q * h2 * q * g * h2 * p;
    EXPECT_LE(oracle::op_norm(eff - encoded_target(app)), 1e-8) << name;
  }
}

TEST(Gadgets, FaultInjectionIsDetected) {
  for (const auto& [name, app] : gadget_suite()) {
    GadgetApplication broken = app;
    std::vector<PauliTerm> terms = app.h1.terms();
    terms.push_back(single(0.1, 0, Pauli::Z));
    broken.h1 = Hamiltonian(app.h1.n_qubits(), terms);
    EXPECT_GE(residual_check(broken), 0.05) << name;
  }
}

TEST(Gadgets, KernelOfHeavyTermIsAncillaState) {
  for (const auto& [name, app] : gadget_suite()) {
    const oracle::Mat h0 = oracle::dense(app.h0);
    const oracle::Mat p = ancilla_projector(app);
    EXPECT_LE(oracle::op_norm(h0 * p), 1e-9) << name;
    const auto ev = oracle::spectrum(h0);
    const auto kernel_dim = Eigen::Index{1} << app.n_data();
    EXPECT_GE(ev(kernel_dim), 1 - 1e-9) << name;
  }
}

TEST(Gadgets, LambdaBoundsTheOperators) {
  for (const auto& [name, app] : gadget_suite()) {
    const double l = to_double(lambda_bound(app));
    EXPECT_GE(l + 1e-12, oracle::op_norm(oracle::dense(app.h1))) << name;
    EXPECT_GE(l + 1e-12, oracle::op_norm(oracle::dense(app.h2))) << name;
    if (app.third_order()) EXPECT_GE(l + 1e-12, oracle::op_norm(oracle::dense(*app.h1_prime))) << name;
  }
}

TEST(Gadgets, AssembleScalesBlocks) {
  auto app = gadget_suite().front().app;
  app.delta = 16;
  const oracle::Mat want = 16.0 * oracle::dense(app.h0) + oracle::dense(app.h1) + 4.0 * oracle::dense(app.h2);
  EXPECT_LE(oracle::op_norm(oracle::dense(assemble(app)) - want), 1e-10);
  auto third = gadget_suite()[1].app;
  ASSERT_TRUE(third.third_order());
  third.delta = 27;
  const oracle::Mat want3 = 27.0 * oracle::dense(third.h0) + oracle::dense(third.h1) +
                            3.0 * oracle::dense(*third.h1_prime) + 9.0 * oracle::dense(third.h2);
  EXPECT_LE(oracle::op_norm(oracle::dense(assemble(third)) - want3), 1e-9);
}

TEST(Gadgets, OverlappingSupportsRejected) {
  const Hamiltonian rest(3);
  EXPECT_THROW(subdivide(rest, make_term(1, {{0, Pauli::X}, {1, Pauli::X}}), single(1, 1, Pauli::Z)),
               OverlappingSupports);
  EXPECT_THROW(triangle(rest, single(1, 0, Pauli::X), single(1, 0, Pauli::Z), single(1, 2, Pauli::Y), 1, 1),
               OverlappingSupports);
}

TEST(Gadgets, ParallelApplication) {
  const PauliTerm ab = make_term(1, {{0, Pauli::X}, {1, Pauli::X}});
  const PauliTerm cd = make_term(1, {{2, Pauli::Z}, {3, Pauli::Z}});
  const Hamiltonian target(4, {ab, cd});
  const auto [a, b] = split_two(ab);
  const auto [c, d] = split_two(cd);
  const GadgetApplication both =
      make_application(target, {subdivision_parts(a, b, 4), subdivision_parts(c, d, 5)});
  EXPECT_EQ(both.n_qubits(), 6u);
  EXPECT_EQ(both.ancillas.size(), 2u);
  EXPECT_LE(residual_check(both), 1e-8);
  EXPECT_THROW(make_application(target, {subdivision_parts(a, b, 4), subdivision_parts(c, d, 4)}), AncillaCollision);

  const GadgetApplication first = make_application(target, {subdivision_parts(a, b, 4)});
  const GadgetApplication second = make_application(target, {subdivision_parts(c, d, 5)});
  const GadgetApplication merged = apply_parallel({first, second});
  EXPECT_LE(oracle::op_norm(oracle::dense(assemble(merged)) - oracle::dense(assemble(both))), 1e-12);
  EXPECT_THROW(apply_parallel({first, make_application(target, {subdivision_parts(c, d, 4)})}), AncillaCollision);
  EXPECT_THROW(apply_parallel({}), InvalidArgument);
}

TEST(Gadgets, AncillaInsideDataRejected) {
  const PauliTerm ab = make_term(1, {{0, Pauli::X}, {1, Pauli::X}});
  const auto [a, b] = split_two(ab);
  EXPECT_THROW(make_application(Hamiltonian(4, {ab}), {subdivision_parts(a, b, 2)}), InvalidArgument);
}

TEST(Gadgets, LongRangeChainIsW) {
  for (const auto& [name, app] : gadget_suite()) {
    if (app.kind != GadgetKind::LongRange) continue;
    ASSERT_EQ(app.ancillas.size(), 1u);
    EXPECT_EQ(app.ancillas.front().state, AncillaState::W);
    const CVector a = ancilla_state(app);
    EXPECT_LE((a - w_state(app.ancillas.front().qubits.size())).norm(), 1e-12) << name;
  }
}

TEST(Gadgets, SpectraMeetTargetsAtPolicyDelta) {
  for (double e : {0.1, 0.02}) {
    for (const auto& row : gadget_spectral_suite(PolicyConstants{}, e, e, {1})) {
      EXPECT_TRUE(row.report.pass_epsilon) << row.name << " eps " << e << ": " << row.report.epsilon_hat;
      EXPECT_TRUE(row.report.pass_eta) << row.name << " eta " << e << ": " << row.report.eta_hat;
    }
  }
}

TEST(Gadgets, PolicyDeltaFollowsOrder) {
  for (const auto& [name, app] : gadget_suite()) {
    const Real l = lambda_bound(app);
    const PolicyConstants pc;
    const Real want = app.third_order() ? choose_delta_3(l, 0.1, 0.1, pc.c3) : choose_delta_2(l, 0.1, 0.1, pc.c2);
    EXPECT_GE(policy_delta(app, 0.1, 0.1), want) << name;
  }
}

TEST(Certificates, RoundCertificate) {
  const auto c = round_certificate(100, 2, 0.1, 0.05, "subdivision");
  EXPECT_EQ(c.cutoff, Real(50));
  EXPECT_EQ(c.p, 1);
  EXPECT_EQ(c.q, 0);
  EXPECT_EQ(c.provenance, std::vector<std::string>{"subdivision"});
}

TEST(Certificates, Compose) {
  const auto a = round_certificate(1000, 2, 0.1, 0.01, "outer");
  const auto b = round_certificate(100, 1, 0.2, 0.02, "inner");
  const auto c = compose_certificates(a, b, 3);
  EXPECT_EQ(c.cutoff, Real(50) - Real(0.1));
  EXPECT_EQ(c.delta, Real(1000));
  // denominator cutoff_B - |C| + eps_B = 47.2
  EXPECT_NEAR(c.eta, 0.01 + 0.02 + 0.1 / 47.2, 1e-12);
  EXPECT_NEAR(c.epsilon, 0.1 + 0.2 + 0.1 * 3 / 47.2, 1e-12);
  EXPECT_TRUE(c.heuristic_constant);
  EXPECT_EQ(c.provenance.size(), 2u);
}

TEST(Certificates, ComposePreconditions) {
  const auto a = round_certificate(1000, 2, 0.1, 0.01, "outer");
  EXPECT_THROW(compose_certificates(a, round_certificate(4, 1, 0.2, 0.02, "inner"), 3), PreconditionViolated);
  EXPECT_THROW(compose_certificates(round_certificate(1000, 2, 5, 0.01, "outer"),
                                    round_certificate(100, 1, 0.2, 0.02, "inner"), 3),
               PreconditionViolated);
  try {
    compose_certificates(a, round_certificate(4, 1, 0.2, 0.02, "inner"), 3);
  } catch (const PreconditionViolated& e) {
    EXPECT_NE(std::string(e.what()).find("Delta_B"), std::string::npos);
  }
}

#include "hsim/errors.hpp"
#include "hsim/wstate.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hsim;

TEST(WState, PairProjectorMatrix) {
  // Basis index bit 0 is qubit 0, so |q1 q0> ordering: 00, 01, 10, 11.
  const Eigen::MatrixXd got = realize_dense(build_hw0(2)).real();
  Eigen::Matrix4d want;
  want << 0, 0, 0, 0,
          0, 0.5, -0.5, 0,
          0, -0.5, 0.5, 0,
          0, 0, 0, 1;
  EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE(realize_dense(build_hw0(2)).imag().cwiseAbs().maxCoeff(), 1e-14);
}

TEST(WState, StateVectors) {
  const CVector w = w_state(3);
  ASSERT_EQ(w.size(), 8);
  for (Eigen::Index x = 0; x < 8; ++x) {
    const double want = (x == 1 || x == 2 || x == 4) ? 1 / std::sqrt(3.0) : 0.0;
    EXPECT_NEAR(w(x).real(), want, 1e-15);
  }
  EXPECT_NEAR(w.norm(), 1, 1e-15);
  EXPECT_EQ(zero_state(4)(0), cplx(1));
  EXPECT_NEAR(zero_state(4).norm(), 1, 1e-15);
}

TEST(WState, UncoupledChainMatchesOracle) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const Eigen::MatrixXd got = realize_dense(build_hw0(n)).real();
    const Eigen::MatrixXd want = oracle::chain_projector_sum(oracle::all_states(n), 0, n);
    EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-13) << n;
  }
}

TEST(WState, KernelIsZeroAndW) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const Hamiltonian h = build_hw0(n);
    const Eigen::VectorXd ev = measure_gap(h, 3);
    EXPECT_NEAR(ev(0), 0, 1e-10) << n;
    EXPECT_NEAR(ev(1), 0, 1e-10) << n;
    EXPECT_GT(ev(2), 1e-6) << n;
    EXPECT_LE(hsim::apply(h, w_state(n)).norm(), 1e-12) << n;
    EXPECT_LE(hsim::apply(h, zero_state(n)).norm(), 1e-12) << n;
    // Frustration free: each edge term annihilates both kernel vectors.
    for (Qubit k = 0; k + 1 < n; ++k) {
      const Hamiltonian edge(n, pair_projector_terms(k, k + 1));
      EXPECT_LE(hsim::apply(edge, w_state(n)).norm(), 1e-12);
      EXPECT_LE(hsim::apply(edge, zero_state(n)).norm(), 1e-12);
    }
  }
}

TEST(WState, GapOfTwoSites) {
  const Eigen::VectorXd ev = measure_gap(build_hw0(2), 3);
  EXPECT_NEAR(ev(0), 0, 1e-12);
  EXPECT_NEAR(ev(1), 0, 1e-12);
  EXPECT_NEAR(ev(2), 1, 1e-12);
  EXPECT_NEAR(hw0_gap(2), 1, 1e-12);
}

TEST(WState, SectorGapMatchesDenseOracle) {
  for (std::size_t n = 2; n <= 9; ++n) {
    const Eigen::MatrixXd h = oracle::chain_projector_sum(oracle::all_states(n), 0, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    double gap = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > 1e-9) {
        gap = es.eigenvalues()(i);
        break;
      }
    }
    EXPECT_NEAR(hw0_gap(n), gap, 1e-9) << n;
    EXPECT_NEAR(gap_estimate(n), gap, 1e-9) << n;
  }
  EXPECT_LT(gap_estimate(20), gap_estimate(12));
}

TEST(WState, CoupledChainHasUniqueGroundStateW) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const WChainSpec spec = policy_chain(n);
    EXPECT_GT(spec.gamma_coupling * spec.gap_estimate + 1, 5.0 * static_cast<double>(n));
    const Hamiltonian h = build_hw(spec);
    const Eigen::MatrixXd dense = realize_dense(h).real();
    EXPECT_LE((dense - oracle::w_chain(n, spec.gamma_coupling)).cwiseAbs().maxCoeff(), 1e-9) << n;
    const Eigen::VectorXd ev = measure_gap(h, 2);
    EXPECT_NEAR(ev(0), 0, 1e-9) << n;
    EXPECT_GE(ev(1), 1 - 1e-9) << n;
    EXPECT_LE(hsim::apply(h, w_state(n)).norm(), 1e-9);
    const CVector z = zero_state(n);
    EXPECT_NEAR(z.dot(hsim::apply(h, z)).real(), 1, 1e-12);
  }
}

TEST(WState, CouplingConditionAndCap) {
  WChainSpec spec{6, 1.0, hw0_gap(6)};
  EXPECT_THROW(build_hw(spec), GammaTooSmall);
  EXPECT_NO_THROW(build_hw(spec, false));
  spec.gamma_coupling = 1e9;
  EXPECT_THROW(build_hw(spec, false, GammaCap{1.0, 1.0}), InvalidArgument);
  const Hamiltonian shifted = build_hw(policy_chain(3), true, {}, 6, 2);
  EXPECT_EQ(shifted.n_qubits(), 6u);
  for (const auto& t : shifted.terms()) {
    for (auto q : t.support()) {
      EXPECT_GE(q, 2u);
      EXPECT_LE(q, 4u);
    }
  }
  EXPECT_THROW(build_hw(policy_chain(3), true, {}, 4, 2), IndexOutOfRange);
}

TEST(WState, SlopeFit) {
  EXPECT_NEAR(loglog_slope({1, 2, 4, 8}, {1, 0.25, 0.0625, 0.015625}), -2, 1e-12);
  EXPECT_THROW(loglog_slope({1}, {1}), InvalidArgument);
  EXPECT_THROW(loglog_slope({1, 2}, {1, 0}), InvalidArgument);
}

TEST(WState, OverlapMatchesProjectorOracle) {
  for (std::size_t m = 4; m <= 8; ++m) {
    for (double gamma : {0.5, 0.6, 0.75, 0.9}) {
      OverlapReport r;
      try {
        r = delta_overlap_exact(m, gamma);
      } catch (const DegenerateSplit&) {
        continue;
      }
      EXPECT_EQ(r.a + r.a_bar, m);
      EXPECT_EQ(r.l, 2 * r.a - m);
      const double want = oracle::overlap_delta(m, r.a, r.b);
      EXPECT_NEAR(r.delta_ab, want, 1e-9) << "m = " << m << ", gamma = " << gamma;
      EXPECT_LE(r.delta_ab, 5 * (1 - gamma) / (1 + gamma) + 2.0 / static_cast<double>(m) + 1e-12);
    }
  }
}

TEST(WState, DegenerateSplit) {
  EXPECT_THROW(delta_overlap_exact(2, 0.9), DegenerateSplit);
  EXPECT_THROW(delta_overlap_exact(8, 0), InvalidArgument);
  EXPECT_THROW(delta_overlap_exact(8, 1), InvalidArgument);
}

TEST(WState, OverlapIsScaleInvariant) {
  const OverlapReport a = overlap_closed_form(10, 8, 8);
  const OverlapReport b = overlap_closed_form(1, 0.8, 0.8);
  EXPECT_NEAR(a.delta_ab, b.delta_ab, 1e-12);
}

TEST(WState, Martingale) {
  EXPECT_NEAR(martingale_epsilon(0.9, OverlapBound::Triangle), 0.5 - 5 * 0.1 / 1.9, 1e-15);
  EXPECT_THROW(martingale_gap_bound(10, 9.0 / 11.0), InvalidGamma);
  EXPECT_THROW(martingale_gap_bound(10, 0.8), InvalidGamma);
  EXPECT_THROW(gap_exponent(0.8, OverlapBound::Triangle), InvalidGamma);
  EXPECT_NEAR(martingale_gap_bound(4, 0.9), hw0_gap(4), 1e-12);
  EXPECT_NEAR(martingale_gap_bound(5, 0.9), martingale_epsilon(0.9, OverlapBound::Triangle) * hw0_gap(4), 1e-12);
  double prev = 1;
  for (std::size_t n = 4; n <= 12; ++n) {
    const double f = martingale_gap_bound(n, 0.95);
    EXPECT_LE(f, prev + 1e-15);
    EXPECT_LE(f, hw0_gap(n) + 1e-12) << n;
    prev = f;
  }
  // f(n) ~ n^p with p = log(1/eps) / log((1+gamma)/2) < 0.
  const double eps = martingale_epsilon(0.95, OverlapBound::Triangle);
  EXPECT_NEAR(gap_exponent(0.95, OverlapBound::Triangle), std::log(1 / eps) / std::log(0.975), 1e-12);
  EXPECT_LT(gap_exponent(0.95, OverlapBound::Triangle), 0);
}

namespace {

struct OracleConstants {
  double C, D;
};

OracleConstants constants_from_definition(std::size_t n, double gamma, std::size_t i, std::size_t j) {
  const Eigen::MatrixXd h = oracle::w_chain(n, gamma);
  const Eigen::MatrixXd g = oracle::psd_pinv(h);
  const Eigen::VectorXd w = oracle::w_state(n).real();
  const Eigen::VectorXd xi = oracle::flip(w, i), xj = oracle::flip(w, j);
  return {xi.dot(g * xj) + xj.dot(g * xi), 2 * xi.dot(g * xi)};
}

}  // namespace

TEST(WState, ConstantsMatchDefinition) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const WChainSpec spec = policy_chain(n);
    const OracleConstants want = constants_from_definition(n, spec.gamma_coupling, 0, n - 1);
    for (auto method : {ConstantsMethod::Dense, ConstantsMethod::Sector}) {
      const GadgetConstants got = compute_constants(spec, 0, n - 1, method);
      EXPECT_NEAR(got.C, want.C, 1e-8 * std::max(1.0, want.C)) << n;
      EXPECT_NEAR(got.D, want.D, 1e-8 * std::max(1.0, want.D)) << n;
      EXPECT_EQ(got.i, 0u);
      EXPECT_EQ(got.j, n - 1);
    }
  }
  const WChainSpec spec = policy_chain(5);
  const OracleConstants inner = constants_from_definition(5, spec.gamma_coupling, 1, 3);
  EXPECT_NEAR(compute_constants(spec, 1, 3).C, inner.C, 1e-8);
}

TEST(WState, ConstantsBounds) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const GadgetConstants c = compute_constants(policy_chain(n), 0, n - 1);
    EXPECT_GE(c.C, 1.0 / static_cast<double>(n) - 1e-12) << n;
    EXPECT_LE(c.D, 2.0) << n;
    EXPECT_GT(c.D, 0.0) << n;
  }
  EXPECT_THROW(compute_constants(policy_chain(4), 2, 2), InvalidArgument);
}

TEST(WState, CorrelationThroughChain) {
  for (std::size_t n = 2; n <= 9; ++n) {
    const Hamiltonian h = build_hw(policy_chain(n));
    const double nn = static_cast<double>(n);
    EXPECT_NEAR(correlation_through_chain(h, single(1, 0, Pauli::X), single(1, static_cast<Qubit>(n - 1), Pauli::X)),
                2 / nn, 1e-9)
        << n;
    EXPECT_NEAR(correlation_through_chain(h, single(1, 0, Pauli::Z), single(1, 0, Pauli::Z)),
                1 - (1 - 2 / nn) * (1 - 2 / nn), 1e-9)
        << n;
  }
  EXPECT_THROW(correlation_through_chain(build_hw0(4), single(1, 0, Pauli::X), single(1, 3, Pauli::X)),
               DegenerateGroundSpace);
}

TEST(WState, ConstantsCacheIsStable) {
  ChainConstantsCache cache;
  const GadgetConstants a = cache.get(5);
  const GadgetConstants b = cache.get(5);
  EXPECT_EQ(a.C, b.C);
  EXPECT_EQ(a.D, b.D);
  EXPECT_EQ(a.n, 5u);
}

TEST(WState, IterativeBackendResolvesDoubleKernel) {
  for (std::size_t n = 7; n <= 10; ++n) {
    const Eigen::VectorXd it = measure_gap(build_hw0(n), 3, Backend::Iterative);
    const Eigen::VectorXd de = measure_gap(build_hw0(n), 3, Backend::Dense);
    EXPECT_LE((it - de).cwiseAbs().maxCoeff(), 1e-9) << n;
  }
  const Eigen::VectorXd coupled = measure_gap(build_hw(policy_chain(9)), 2, Backend::Iterative);
  EXPECT_NEAR(coupled(0), 0, 1e-8);
  EXPECT_GE(coupled(1), 1 - 1e-8);
}

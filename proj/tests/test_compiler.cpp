#include "hsim/codes.hpp"
#include "hsim/compiler.hpp"
#include "hsim/errors.hpp"
#include "hsim/ham_io.hpp"

#include <gtest/gtest.h>

using namespace hsim;

namespace {

PauliTerm zz(Qubit a, Qubit b, double c = 1) { return make_term(c, {{a, Pauli::Z}, {b, Pauli::Z}}); }

RoundBudget budget() { return RoundBudget{0.01, 0.01, {}, 0}; }

const CompilationResult& steane_result() {
  static const CompilationResult r = compile(build_code_hamiltonian(steane_code()));
  return r;
}

}  // namespace

TEST(Layout, InterleavedEdgesCross) {
  const LatticeLayout l = layout_graph(Hamiltonian(4, {zz(0, 2), zz(1, 3)}));
  EXPECT_FALSE(l.compact);
  EXPECT_EQ(l.crossings.size(), 1u);
  EXPECT_FALSE(validate_layout(l).has_value());
}

TEST(Layout, NestedEdgesDoNotCross) {
  const LatticeLayout l = layout_graph(Hamiltonian(4, {zz(0, 3), zz(1, 2)}));
  EXPECT_EQ(l.crossings.size(), 0u);
  EXPECT_FALSE(validate_layout(l).has_value());
}

TEST(Layout, PathIsCompact) {
  const LatticeLayout l = layout_graph(Hamiltonian(4, {zz(0, 1), zz(1, 2), zz(2, 3)}));
  EXPECT_TRUE(l.compact);
  EXPECT_EQ(l.crossings.size(), 0u);
  for (const auto& e : l.edges) EXPECT_EQ(e.interior(), 0u);
}

TEST(Layout, RejectsHighDegreeAndWeight) {
  EXPECT_THROW(layout_graph(Hamiltonian(3, {make_term(1, {{0, Pauli::X}, {1, Pauli::X}, {2, Pauli::X}})})),
               PreconditionViolated);
  std::vector<PauliTerm> star;
  for (Qubit q = 1; q <= 5; ++q) star.push_back(zz(0, q));
  EXPECT_THROW(layout_graph(Hamiltonian(6, star)), PreconditionViolated);
}

TEST(Layout, ValidateCatchesBrokenPath) {
  LatticeLayout l = layout_graph(Hamiltonian(4, {zz(0, 3), zz(1, 2)}));
  ASSERT_FALSE(l.edges.empty());
  ASSERT_GE(l.edges.front().path.size(), 3u);
  l.edges.front().path.erase(l.edges.front().path.begin() + 1);
  EXPECT_TRUE(validate_layout(l).has_value());
}

TEST(Layout, Renders) {
  const LatticeLayout l = layout_graph(Hamiltonian(4, {zz(0, 2), zz(1, 3)}));
  EXPECT_NE(render_svg(l).find("<svg"), std::string::npos);
  EXPECT_NE(render_dot(l).find("graph"), std::string::npos);
}

TEST(Passes, LocalityReachesTwo) {
  const Hamiltonian h(4, {make_term(1, {{0, Pauli::Z}, {1, Pauli::Z}, {2, Pauli::Z}, {3, Pauli::Z}})});
  const PassOutput out = reduce_locality(h, budget());
  ASSERT_GE(out.rounds.size(), 2u);
  EXPECT_EQ(out.rounds.front().stats.kappa, 3u);
  EXPECT_EQ(out.rounds.back().kind, GadgetKind::ThreeToTwo);
  EXPECT_EQ(graph_stats(out.hamiltonian).kappa, 2u);
  EXPECT_EQ(out.certificates.size(), out.rounds.size());
  std::size_t added = 0;
  for (const auto& b : out.ancillas) added += b.qubits.size();
  EXPECT_EQ(out.hamiltonian.n_qubits(), 4 + added);
}

TEST(Passes, TwoLocalIsUntouched) {
  const Hamiltonian h(3, {zz(0, 1), zz(1, 2), single(0.5, 0, Pauli::X)});
  const PassOutput out = reduce_locality(h, budget());
  EXPECT_TRUE(out.rounds.empty());
  EXPECT_EQ(serialize_ham(out.hamiltonian), serialize_ham(h));
}

TEST(Passes, StarDegreeReduced) {
  std::vector<PauliTerm> star;
  for (Qubit q = 1; q <= 5; ++q) star.push_back(zz(0, q, 0.5 + 0.1 * q));
  const PassOutput out = reduce_degree(Hamiltonian(6, star), budget());
  EXPECT_FALSE(out.rounds.empty());
  const GraphStats s = graph_stats(out.hamiltonian);
  EXPECT_LE(s.kappa, 2u);
  EXPECT_LE(s.delta, 4u);
}

TEST(Passes, DegreeRejectsWeightThree) {
  const Hamiltonian h(3, {make_term(1, {{0, Pauli::X}, {1, Pauli::X}, {2, Pauli::X}})});
  EXPECT_THROW(reduce_degree(h, budget()), PreconditionViolated);
}

TEST(Compile, RepetitionCodes) {
  for (std::size_t n = 3; n <= 7; ++n) {
    const Hamiltonian h = build_code_hamiltonian(repetition_code(n));
    const CompilationResult r = compile(h);
    EXPECT_LE(r.report.final_stats.delta, 4u) << n;
    EXPECT_LE(r.report.final_stats.kappa, 2u) << n;
    EXPECT_TRUE(r.report.nearest_neighbour) << n;
    EXPECT_TRUE(r.report.compact) << n;
    EXPECT_EQ(r.report.n_ancilla, 0u) << n;
    EXPECT_EQ(serialize_ham(r.simulator), serialize_ham(h)) << n;
    EXPECT_FALSE(check_structure(r.simulator, r.layout).has_value()) << n;
  }
}

TEST(Compile, Steane) {
  const CompilationResult& r = steane_result();
  const CompilationReport& rep = r.report;
  EXPECT_EQ(rep.n_target, 7u);
  EXPECT_EQ(rep.target_stats.kappa, 4u);
  EXPECT_LE(rep.final_stats.kappa, 2u);
  EXPECT_LE(rep.final_stats.delta, 4u);
  EXPECT_TRUE(rep.nearest_neighbour);
  EXPECT_EQ(rep.crossings, 0u);
  EXPECT_TRUE(rep.qubits_within_bound);
  EXPECT_LE(static_cast<double>(rep.n_total), 16.0 * 49 * 16 * 36);
  EXPECT_TRUE(rep.chain_ok);
  EXPECT_TRUE(rep.budget_ok);
  ASSERT_TRUE(rep.certificate.has_value());
  EXPECT_LE(rep.certificate->epsilon, 0.1);
  EXPECT_LE(rep.certificate->eta, 0.1);
  EXPECT_EQ(rep.round_certificates.size(), rep.rounds.size());
  EXPECT_EQ(rep.n_total, r.simulator.n_qubits());
  EXPECT_EQ(rep.n_total, rep.n_target + rep.n_ancilla);
  // Frozen from the reference run.
  EXPECT_EQ(rep.n_total, 68160u);
  EXPECT_EQ(rep.rounds.size(), 14u);
  EXPECT_FALSE(check_structure(r.simulator, r.layout).has_value());
  EXPECT_FALSE(validate_layout(r.layout).has_value());
  EXPECT_FALSE(validate_layout(r.routing).has_value());
  std::size_t anc = 0;
  for (const auto& b : r.ancillas) anc += b.qubits.size();
  EXPECT_EQ(anc, rep.n_ancilla);
}

TEST(Compile, RoundStrengthsGrow) {
  const auto& rounds = steane_result().report.rounds;
  // Each round simulates the previous simulator, whose norm already carries the earlier strengths.
  for (std::size_t k = 1; k < rounds.size(); ++k) EXPECT_TRUE(rounds[k - 1].delta < rounds[k].delta) << k;
  EXPECT_TRUE(steane_result().report.certificate->delta == rounds.back().delta);
}

TEST(Compile, SimulatorRoundTripsThroughText) {
  const Hamiltonian& sim = steane_result().simulator;
  const std::string text = serialize_ham(sim);
  const Hamiltonian back = parse_ham(text);
  ASSERT_EQ(back.n_qubits(), sim.n_qubits());
  ASSERT_EQ(back.size(), sim.size());
  EXPECT_EQ(serialize_ham(back), text);
  bool same = true;
  for (std::size_t k = 0; k < sim.size(); ++k) same = same && back.terms()[k].coefficient() == sim.terms()[k].coefficient();
  EXPECT_TRUE(same);
}

TEST(Compile, StructureCheckFindsLongEdge) {
  const CompilationResult& r = steane_result();
  std::vector<PauliTerm> terms = r.simulator.terms();
  terms.push_back(zz(0, static_cast<Qubit>(r.simulator.n_qubits() - 1)));
  EXPECT_TRUE(check_structure(Hamiltonian(r.simulator.n_qubits(), terms), r.layout).has_value());
}

TEST(Compile, RandomInstancesAreDeterministic) {
  for (std::uint64_t seed : {1u, 7u}) {
    const Hamiltonian h = random_sparse(6, 4, 4, seed);
    const CompilationResult a = compile(h);
    const CompilationResult b = compile(h);
    EXPECT_EQ(serialize_ham(a.simulator), serialize_ham(b.simulator));
    EXPECT_TRUE(a.report.nearest_neighbour);
    EXPECT_TRUE(a.report.chain_ok);
    EXPECT_TRUE(a.report.budget_ok);
    EXPECT_TRUE(a.report.qubits_within_bound);
  }
}

TEST(Compile, RandomSparseRespectsLimits) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Hamiltonian h = random_sparse(5 + seed % 6, 3, 3, seed);
    const GraphStats s = graph_stats(h);
    EXPECT_LE(s.kappa, 3u);
    EXPECT_LE(s.delta, 3u);
    EXPECT_GT(h.size(), 0u);
    for (const auto& t : h.terms()) {
      const double c = std::abs(to_double(t.coefficient()));
      EXPECT_GT(c, 0);
      EXPECT_LE(c, 1);
    }
  }
  EXPECT_EQ(serialize_ham(random_sparse(8, 4, 4, 3)), serialize_ham(random_sparse(8, 4, 4, 3)));
}

TEST(Compile, RejectsBadOptions) {
  CompilerOptions o;
  o.epsilon = 0;
  EXPECT_THROW(compile(build_code_hamiltonian(repetition_code(3)), o), StageError);
}

#pragma once

#include "hsim/certificate.hpp"
#include "hsim/gadgets.hpp"
#include "hsim/hamiltonian.hpp"
#include "hsim/layout.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hsim {

/// @brief Per-round error allowance and strength policy.
struct RoundBudget {
  double epsilon = 0.01;
  double eta = 0.01;
  PolicyConstants policy;
  Real floor = 0;  ///< lower bound on every round's Delta
};

/// @brief One perturbative round: a parallel gadget application and the strength it used.
struct RoundRecord {
  std::string pass;
  GadgetKind kind = GadgetKind::Subdivision;
  std::size_t gadgets = 0;
  std::size_t ancillas = 0;  ///< qubits added by the round
  std::size_t n_qubits = 0;  ///< register size after the round
  Real delta = 0;
  Real lambda = 0;
  double epsilon = 0;
  double eta = 0;
  GraphStats stats;  ///< of the assembled Hamiltonian
};

/// @brief Output of a pass: the simulator, its rounds and their composed certificate.
struct PassOutput {
  Hamiltonian hamiltonian;
  std::vector<RoundRecord> rounds;
  std::vector<SimulationCertificate> certificates;  ///< one per round
  std::vector<AncillaBlock> ancillas;                ///< blocks added by the rounds, in order
};

/**
 * @brief Subdivision rounds until every term has weight <= 3, then one 3-to-2 round.
 * @throws gadget errors
 */
PassOutput reduce_locality(const Hamiltonian& h, const RoundBudget& budget);

/**
 * @brief Brings every qubit to degree <= 4 and every pair to at most one term.
 *
 * Compact-eligible inputs pass through. Otherwise one subdivision round
 * isolates the high-degree qubits (and splits repeated pairs), then triangle
 * rounds merge same-axis edges of each high-degree qubit pairwise.
 * @throws PreconditionViolated for weight > 2
 */
PassOutput reduce_degree(const Hamiltonian& h, const RoundBudget& budget);

/// @brief Layout of a reduced Hamiltonian together with the simulator built on it.
struct EmbeddedPass {
  PassOutput pass;
  LatticeLayout layout;  ///< routes of every still-nonlocal term; qubits of the pass placed
};

/// @brief Longest run of route sites left between relays before localization.
constexpr std::size_t kMaxChainLength = 48;

/**
 * @brief Relay subdivisions at both sides of every crossing, then one crossing round.
 *
 * Relays split each route so that every segment has at most kMaxChainLength
 * interior sites; they are placed by bisection, one relay per segment per round.
 * @throws PreconditionViolated when the layout does not match the Hamiltonian
 */
EmbeddedPass remove_crossings(const LatticeLayout& routing, const Hamiltonian& h, const RoundBudget& budget);

/**
 * @brief One round replacing each routed segment by a subdivision (one interior
 * site) or a W chain along the route (two or more).
 * @throws PreconditionViolated when crossings remain
 */
EmbeddedPass localize_edges(const LatticeLayout& routing, const Hamiltonian& h, const RoundBudget& budget);

/// @brief Perturbative rounds remove_crossings and localize_edges will run on this routing.
std::size_t planned_rounds(const LatticeLayout& routing);

struct CompilerOptions {
  double epsilon = 0.1;
  double eta = 0.1;
  PolicyConstants policy;
  double c_n = 16;  ///< qubit-count constant in N <= c_N n^2 kappa^2 delta^2
};

struct StageSummary {
  std::string pass;
  std::size_t n_qubits = 0;
  GraphStats stats;
  std::size_t rounds = 0;
  Hamiltonian hamiltonian;
};

struct CompilationReport {
  std::size_t n_target = 0;
  GraphStats target_stats;
  Real target_norm = 0;  ///< triangle bound of the target
  std::size_t n_total = 0;
  std::size_t n_ancilla = 0;
  GraphStats final_stats;
  Real mu = 0;  ///< largest non-identity coefficient of the simulator
  double log10_mu = 0;
  double qubit_bound = 0;  ///< c_N n^2 kappa^2 delta^2
  bool qubits_within_bound = false;
  bool nearest_neighbour = false;
  std::size_t crossings = 0;
  std::size_t routed_crossings = 0;  ///< crossings in the comb layout before removal
  bool compact = false;
  bool chain_ok = false;   ///< every composition precondition held
  bool budget_ok = false;  ///< composed eps, eta within the request
  double round_epsilon = 0;
  double round_eta = 0;
  std::vector<StageSummary> stages;
  std::vector<RoundRecord> rounds;
  std::vector<SimulationCertificate> round_certificates;
  std::optional<SimulationCertificate> certificate;  ///< composed; empty when no round ran
};

struct CompilationResult {
  Hamiltonian simulator;
  LatticeLayout layout;   ///< final placement, every edge of length one
  LatticeLayout routing;  ///< comb routing of the degree-reduced Hamiltonian
  std::vector<AncillaBlock> ancillas;  ///< every ancilla block; the encoding attaches their product state
  CompilationReport report;
};

/**
 * @brief Locality reduction, degree reduction, layout, crossing removal and localization.
 *
 * The request is split evenly over the perturbative rounds; each round's Delta
 * is at least the policy value and at least 2(max(Lambda, |H_t|) + 3 eps) so
 * that every composition step is valid.
 * @throws StageError naming the failing pass
 */
CompilationResult compile(const Hamiltonian& h, const CompilerOptions& options = {});

/**
 * @brief Exhaustive structural scan of a compiled simulator against its layout.
 * @return description of the first violation, or nothing
 */
std::optional<std::string> check_structure(const Hamiltonian& simulator, const LatticeLayout& layout);

/**
 * @brief Random Hamiltonian on n qubits with term weight <= kappa and degree <= delta.
 *
 * Terms are drawn until 2n attempts fail; coefficients uniform in [-1, 1] away from 0.
 */
Hamiltonian random_sparse(std::size_t n, std::size_t kappa, std::size_t delta, std::uint64_t seed);

}  // namespace hsim

#pragma once

#include "hsim/certificate.hpp"
#include "hsim/hamiltonian.hpp"
#include "hsim/matrix.hpp"
#include "hsim/wstate.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hsim {

enum class GadgetKind { Subdivision, ThreeToTwo, Triangle, Crossing, LongRange };

std::string_view kind_name(GadgetKind kind);

/// @brief Ground state of a gadget's ancilla block.
enum class AncillaState { Zero, W };

struct AncillaBlock {
  AncillaState state = AncillaState::Zero;
  std::vector<Qubit> qubits;  ///< W-chain site k sits on qubits[k]
};

/**
 * @brief One gadget detached from the rest of the Hamiltonian.
 *
 * The full application is H0 = h0, H1 = H_else + h1_extra, H1' = h1_prime,
 * H2 = h2, where H_else is the target minus the simulated terms.
 */
struct GadgetParts {
  GadgetKind kind = GadgetKind::Subdivision;
  std::vector<PauliTerm> simulated;
  std::vector<PauliTerm> h0;
  std::vector<PauliTerm> h1_extra;
  std::vector<PauliTerm> h1_prime;
  std::vector<PauliTerm> h2;
  AncillaBlock ancilla;
  std::map<std::string, double> constants;

  bool third_order() const { return kind == GadgetKind::ThreeToTwo; }
};

/// @brief c s_A s_B -> (sign(c) sqrt|c| s_A, sqrt|c| s_B); P_A takes the ceil(w/2) lowest qubits.
/// @throws InvalidArgument for weight < 2.
std::pair<PauliTerm, PauliTerm> split_two(const PauliTerm& term);

/// @brief c s_A s_B s_C -> sign(c)|c|^{1/3} s_A, |c|^{1/3} s_B, |c|^{1/3} s_C for a weight-3 term.
std::array<PauliTerm, 3> split_three(const PauliTerm& term);

/// @throws OverlappingSupports
GadgetParts subdivision_parts(const PauliTerm& p_a, const PauliTerm& p_b, Qubit mediator);
GadgetParts three_to_two_parts(const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c, Qubit mediator);
GadgetParts triangle_parts(const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c, const Real& alpha_ab,
                           const Real& alpha_ac, Qubit mediator);
GadgetParts crossing_parts(const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c, const PauliTerm& p_d,
                           const Real& alpha_ad, const Real& alpha_bc, Qubit mediator);
/// @brief Chain site k on chain[k]; P_A couples to chain.front(), P_B to chain.back().
GadgetParts long_range_parts(const PauliTerm& p_a, const PauliTerm& p_b, const std::vector<Qubit>& chain,
                             const WChainSpec& spec, const GadgetConstants& constants);

/**
 * @brief A gadget round applied to a target Hamiltonian.
 *
 * Data qubits are [0, target.n_qubits()); ancillas sit above. Several parts
 * form a parallel application.
 */
struct GadgetApplication {
  GadgetKind kind = GadgetKind::Subdivision;
  Hamiltonian target;
  Hamiltonian h0;
  Hamiltonian h1;
  Hamiltonian h2;
  std::optional<Hamiltonian> h1_prime;
  Real delta = 1;
  std::vector<AncillaBlock> ancillas;
  std::map<std::string, double> constants;
  std::vector<GadgetParts> parts;

  std::size_t n_data() const { return target.n_qubits(); }
  std::size_t n_qubits() const { return h0.n_qubits(); }
  bool third_order() const { return h1_prime.has_value(); }
  std::vector<Qubit> ancilla_qubits() const;
};

/**
 * @brief Combines parts over a target; H_else is the target minus every simulated term.
 * @throws AncillaCollision, InvalidArgument (mixed orders, ancilla inside the data register)
 */
GadgetApplication make_application(const Hamiltonian& target, std::vector<GadgetParts> parts, const Real& delta = 1);

/// @throws OverlappingSupports
GadgetApplication subdivide(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b);
GadgetApplication three_to_two(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b,
                               const PauliTerm& p_c);
GadgetApplication triangle(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c,
                           const Real& alpha_ab, const Real& alpha_ac);
GadgetApplication crossing(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b, const PauliTerm& p_c,
                           const PauliTerm& p_d, const Real& alpha_ad, const Real& alpha_bc);
/// @throws GammaTooSmall, SingularRestriction
GadgetApplication long_range(const Hamiltonian& h_else, const PauliTerm& p_a, const PauliTerm& p_b,
                             const WChainSpec& chain);

/**
 * @brief Merges applications over the same target into one round.
 * @throws AncillaCollision, InvalidArgument (different targets)
 */
GadgetApplication apply_parallel(const std::vector<GadgetApplication>& apps);

/// @brief Delta H0 + H1 + sqrt(Delta) H2, or Delta H0 + H1 + Delta^(1/3) H1' + Delta^(2/3) H2.
Hamiltonian assemble(const GadgetApplication& app);

/// @brief max(|H1|, |H1'|, |H2|) by the triangle inequality.
Real lambda_bound(const GadgetApplication& app);

/// @brief Policy strength for the application's order.
Real policy_delta(const GadgetApplication& app, double epsilon, double eta, const PolicyConstants& policy = {});

/// @brief Product state of the ancilla register [n_data, n_qubits) in qubit order.
/// @throws InvalidArgument when some register qubit belongs to no block.
CVector ancilla_state(const GadgetApplication& app);

struct ResidualReport {
  double residual = 0;         ///< effective-Hamiltonian condition
  double h1_prime_defect = 0;  ///< |H1'_{--} - H2_{-+} H0^-1 H2_{+-}| (third order)
  double h2_block_defect = 0;  ///< |(H2)_{--}| (third order)
  double max() const;
};

/**
 * @brief Operator norms of the perturbative conditions, computed densely.
 *
 * Second order: T H_t T^dag - (H1)_{--} + (H2)_{-+} H0^-1 (H2)_{+-}.
 * Third order: T H_t T^dag - (H1)_{--} - (H2)_{-+} H0^-1 (H2)_{++} H0^-1 (H2)_{+-}.
 * @throws CapExceeded, PreconditionViolated (H0 kernel not the ancilla state or gap below 1)
 */
struct NamedApplication {
  std::string name;
  GadgetApplication app;
};

/**
 * @brief Desk instances of every gadget: subdivision, 3-to-2, triangle,
 * crossing and long-range on chains of 2, 3 and 4 sites. Delta is left at 1.
 */
std::vector<NamedApplication> gadget_suite();

ResidualReport residual_report(const GadgetApplication& app, const BackendCaps& caps = {});
double residual_check(const GadgetApplication& app, const BackendCaps& caps = {});

}  // namespace hsim

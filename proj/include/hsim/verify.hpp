#pragma once

#include "hsim/eigensolver.hpp"
#include "hsim/gadgets.hpp"
#include "hsim/hamiltonian.hpp"
#include "hsim/matrix.hpp"
#include "hsim/wstate.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hsim {

/**
 * @brief Isometry T|psi> = |psi> (x) |anc>, data on the low bits.
 *
 * Only p = 1, q = 0 encodings exist; anything else is rejected.
 */
struct StateEncoding {
  std::size_t n_data = 0;
  CVector ancilla;  ///< state of the ancilla register, dimension 2^(n - n_data)

  std::size_t n_ancilla() const;
  /// @brief T as a dense 2^n x 2^n_data matrix.
  CMatrix isometry() const;
};

/// @throws UnsupportedEncoding unless p = 1 and q = 0.
StateEncoding make_encoding(std::size_t n_data, CVector ancilla, int p = 1, int q = 0);
StateEncoding encoding_of(const GadgetApplication& app);
/**
 * @brief Product of the blocks' ground states on [n_data, n_total).
 * @throws CapExceeded beyond 24 ancillas, InvalidArgument when a register qubit is in no block
 */
StateEncoding encoding_of(std::size_t n_data, std::size_t n_total, const std::vector<AncillaBlock>& blocks);

/// @brief tr_A over the ancilla (high) bits.
CMatrix partial_trace_ancilla(const CMatrix& rho, std::size_t n_data);

struct MatchedPair {
  std::size_t target_index = 0;
  std::size_t simulator_index = 0;
  double target = 0;
  double simulator = 0;
  double gap = 0;
};

struct SpectralReport {
  std::vector<MatchedPair> pairs;
  double epsilon_hat = 0;     ///< max matched eigenvalue gap
  double eta_hat = 0;         ///< sine of the largest principal angle
  double isometry_error = 0;  ///< |T~ - T| with T~ the polar projection of T onto the low space
  double epsilon_op = 0;      ///< |H_s,low - T~ H_t T~^dag|
  double cutoff = 0;
  std::size_t below_cutoff = 0;  ///< simulator eigenvalues below the cutoff
  double next_level = 0;         ///< first simulator eigenvalue above the encoded block
  double requested_epsilon = 0;
  double requested_eta = 0;
  bool pass_epsilon = false;
  bool pass_eta = false;
};

/**
 * @brief Dense low-spectrum comparison of a simulator against its target.
 *
 * Eigenvalue i of the target is matched with eigenvalue i of the simulator
 * (p + q = 1).
 * @throws CapExceeded, SpectrumMismatch (fewer than 2^n_data levels below the cutoff)
 */
SpectralReport spectral_compare(const Hamiltonian& target, const Hamiltonian& simulator, double cutoff,
                                const StateEncoding& encoding, double epsilon = 0.1, double eta = 0.1,
                                const BackendCaps& caps = {});

struct SuiteRow {
  std::string name;
  double multiplier = 1;  ///< Delta = multiplier * policy Delta
  Real delta = 0;
  SpectralReport report;
};

/**
 * @brief spectral_compare on every gadget_suite() instance at each multiple of
 * its policy Delta, with cutoff Delta / 2.
 */
std::vector<SuiteRow> gadget_spectral_suite(const PolicyConstants& policy, double epsilon, double eta,
                                            const std::vector<double>& multipliers = {1, 10, 100});

/**
 * @brief Smallest k in [k_min, k_max] such that constant 2^k passes eps and eta
 * on every suite gadget of the given order (2 or 3). Returns k_max + 1 if none does.
 */
int calibrate_policy_exponent(int order, double epsilon, double eta, int k_min = -16, int k_max = 8);

/// @brief Low-energy data shared by the state-level checks.
struct LowSpace {
  EigenPairs target;
  EigenPairs simulator;
  CMatrix t;        ///< encoding isometry
  CMatrix t_tilde;  ///< polar projection of t onto the low simulator space
  StateEncoding encoding;
};

LowSpace low_space(const Hamiltonian& target, const Hamiltonian& simulator, const StateEncoding& encoding,
                   const BackendCaps& caps = {});

/// @brief Constant in front of sqrt(eta) in the soundness bound.
constexpr double kSoundnessConstant = 4.0;

struct SoundnessResult {
  double simulator_energy = 0;  ///< tr(rho H_s) - E0
  double target_energy = 0;     ///< tr(tr_A(rho) H_t) - E0
  double bound = 0;             ///< 5 eps' + eps + c_s sqrt(eta) |H_t - E0|
  bool pass = false;
};

/**
 * @brief Energies measured from E0 = lambda_min(H_t), with eps' = max(tr(rho H_s) - E0, 0).
 * @throws NotLowEnergy when eps' exceeds the cutoff.
 */
SoundnessResult soundness_check(const LowSpace& ls, const CMatrix& rho, double epsilon, double eta, double cutoff);

struct CompletenessResult {
  double trace_distance = 0;  ///< |tr_A(sigma~) - sigma|_1
  double energy_gap = 0;      ///< |tr(sigma~ H_s) - tr(sigma H_t)|
};

CompletenessResult completeness_check(const LowSpace& ls, const CMatrix& sigma);

struct GentleResult {
  CMatrix post_state;
  double trace_distance = 0;
  double bound = 0;  ///< 2 sqrt(1 - tr(M rho))
  bool pass = false;
};

/// @throws InvalidMeasurement unless 0 <= M <= 1 and tr(M rho) > 0.
GentleResult gentle_measurement_bound(const CMatrix& rho, const CMatrix& m);

struct PartitionResult {
  double beta = 0;
  double relative_error = 0;
  double bound = 0;
  bool pass = false;
};

/**
 * @brief |Z_s - Z_t| / Z_t against 2^m e^{-beta cutoff} / (2^n e^{-beta |H_t|}) + e^{eps beta} - 1.
 *
 * Sums run in the log domain. The cutoff must not exceed the first level
 * above the encoded block.
 * @throws InvalidArgument for beta <= 0 or a cutoff above that level.
 */
PartitionResult partition_compare(const LowSpace& ls, double beta, double cutoff, double epsilon);

struct DynamicsResult {
  double time = 0;
  double trace_distance = 0;
  double bound = 0;  ///< 2 eps t + 4 eta
  bool pass = false;
};

/// @brief Evolves T sigma T^dag under H_s and under the encoded target.
DynamicsResult dynamics_compare(const LowSpace& ls, const CMatrix& sigma, double t, double epsilon, double eta);

struct PhysicalRow {
  std::string name;
  Real delta = 0;
  SpectralReport spectral;
  std::vector<PartitionResult> partition;
  std::vector<DynamicsResult> dynamics;  ///< fresh rank-2 state per time
  bool pass() const;
};

/**
 * @brief Partition-function and dynamics bounds on the subdivision and
 * long-range desk gadgets at policy Delta, using the measured eps and eta.
 */
std::vector<PhysicalRow> physical_suite(const PolicyConstants& policy, const std::vector<double>& betas,
                                        const std::vector<double>& times, std::uint64_t seed);

/// @brief Random density matrix of rank <= k on dimension d (Ginibre).
CMatrix random_density(std::size_t d, std::size_t rank, std::mt19937_64& rng);

/// @brief Mixture of the given columns with Dirichlet(1, ..., 1) weights.
CMatrix dirichlet_mixture(const CMatrix& vectors, std::mt19937_64& rng);

struct GapStudy {
  std::vector<GapRow> rows;
  double slope = 0;
  bool pass = false;  ///< slope >= -6.13
};

/// @throws ConvergenceFailure
GapStudy gap_scaling_study(const std::vector<std::size_t>& ns, Backend backend = Backend::Auto);

enum class ChainFamily { W, Product };

struct DecayRow {
  std::size_t n = 0;
  double correlation = 0;  ///< <psi|X_1 (1 - |psi><psi|) X_n|psi>
  double expected = 0;     ///< 2/n for the W chain, 0 for the product chain
  double constant_c = 0;   ///< long-range constant C (W chain only)
};

/**
 * @brief End-to-end correlation through a chain with a unique ground state.
 * @throws DegenerateGroundSpace
 */
std::vector<DecayRow> nogo_demo(ChainFamily family, const std::vector<std::size_t>& ns);

}  // namespace hsim

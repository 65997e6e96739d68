#pragma once

#include "hsim/eigensolver.hpp"
#include "hsim/hamiltonian.hpp"
#include "hsim/matrix.hpp"

#include <map>
#include <mutex>

namespace hsim {

/// @brief Polynomial ceiling on the chain coupling: Gamma <= c * n^p.
struct GammaCap {
  double c = 100.0;
  double p = 8.0;
};

/// @brief Chain length, coupling multiplier and the gap of the uncoupled chain used to pick it.
struct WChainSpec {
  std::size_t n = 0;
  double gamma_coupling = 1.0;
  double gap_estimate = 0.0;
};

/// @brief |W_n>: amplitude 1/sqrt(n) on each weight-one basis state (qubit q = bit q).
CVector w_state(std::size_t n);

/// @brief All-zero basis state on n qubits.
CVector zero_state(std::size_t n);

/**
 * @brief Two-qubit projector P = (1 - SWAP)/2 + |11><11| in Pauli form on qubits (u, v).
 *
 * P = 1/2 - (Z_u + Z_v)/4 - (X_u X_v + Y_u Y_v)/4.
 */
std::vector<PauliTerm> pair_projector_terms(Qubit u, Qubit v, const Real& scale = 1);

/// @brief Uncoupled chain Hamiltonian sum_i P_{i,i+1}; kernel span{|0^n>, |W_n>}.
Hamiltonian build_hw0(std::size_t n);

/**
 * @brief Gamma * sum P_{i,i+1} + 1 - sum (1 - Z_i)/2 on qubits offset..offset+n-1.
 *
 * @param require_gadget_condition enforce Gamma * gap_estimate + 1 > 5n.
 * @throws GammaTooSmall, InvalidArgument
 */
Hamiltonian build_hw(const WChainSpec& spec, bool require_gadget_condition = true, const GammaCap& cap = {},
                     std::size_t register_size = 0, Qubit offset = 0);

/// @brief Lowest k eigenvalues, ascending (dense up to 10 qubits, Lanczos beyond).
Eigen::VectorXd measure_gap(const Hamiltonian& h, std::size_t k, Backend backend = Backend::Auto,
                            const BackendCaps& caps = {});

/// @brief Smallest nonzero eigenvalue of H_{W,0} computed block by block in Hamming-weight sectors.
double hw0_gap(std::size_t n);

/// @brief Gap exponent used to extrapolate beyond the calibrated length.
constexpr double kGapFitExponent = -6.13;
constexpr std::size_t kGapCalibrationLength = 12;

/// @brief Measured gap for n <= 12, power-law extrapolation from n = 12 beyond.
double gap_estimate(std::size_t n);

/// @brief Gamma = ceil(5n / gap_estimate) and the matching spec.
WChainSpec policy_chain(std::size_t n);

struct GapRow {
  std::size_t n;
  double lambda2;
  double lambda3;
  double gap;
};

/// @brief Lowest three eigenvalues of H_{W,0} for each n.
std::vector<GapRow> gap_scan(const std::vector<std::size_t>& ns, Backend backend = Backend::Auto);

/// @brief Least-squares slope of log(gap) against log(n).
double loglog_slope(const std::vector<double>& n, const std::vector<double>& gap);

/// @brief Closed-form overlap data for A = [0, a) and B = [m - b, m).
struct OverlapReport {
  std::size_t m = 0;
  double gamma = 0;
  std::size_t a = 0, b = 0, a_bar = 0, b_bar = 0, l = 0;
  double a_exact = 0;  ///< (1 + gamma) m / 2 before rounding
  double lambda[5] = {0, 0, 0, 0, 0};
  double p = 0, q = 0, r = 0;
  double u1 = 0, u2 = 0;
  double delta_ab = 0;
};

/// @brief Closed form with real-valued region sizes (scale invariant in m).
OverlapReport overlap_closed_form(double m, double a, double b);

/**
 * @brief ||Pi_{A u B} - Pi_A Pi_B|| from the closed form, a = b = round((1+gamma)m/2).
 * @throws DegenerateSplit when a region size is below one.
 */
OverlapReport delta_overlap_exact(std::size_t m, double gamma);

enum class OverlapBound { Triangle, Exact };

/// @brief epsilon = 1/2 - delta for the split fraction gamma (continuum region sizes).
double martingale_epsilon(double gamma, OverlapBound bound);

/// @brief Decay exponent log(1/epsilon) / log((1+gamma)/2) of the recursive bound.
double gap_exponent(double gamma, OverlapBound bound);

/**
 * @brief Recursive lower bound f(n) = epsilon f(ceil((1+gamma) n / 2)), base f(n <= 4) measured.
 * @throws InvalidGamma when gamma <= 9/11 (Triangle) or delta >= 1/2 (Exact).
 */
double martingale_gap_bound(std::size_t n, double gamma, OverlapBound bound = OverlapBound::Triangle);

/// @brief Long-range gadget constants for a chain and its coupling sites.
struct GadgetConstants {
  double C = 0;
  double D = 0;
  std::size_t n = 0;
  std::size_t i = 0;  ///< 0-based
  std::size_t j = 0;  ///< 0-based
  double gamma_coupling = 0;
};

enum class ConstantsMethod { Auto, Dense, Sector };

/**
 * @brief C = <W|X_i R X_j|W> + <W|X_j R X_i|W>, D = 2 <W|X_i R X_i|W>, R the inverse of H_W on the complement of |W>.
 *
 * Dense solves the projected system by least squares (singular values below 1e-10 dropped);
 * Sector uses the Hamming-weight 0 and 2 blocks, which is all X_i |W> reaches.
 * Sites are 0-based.
 * @throws InvalidArgument (i == j), SingularRestriction, GammaTooSmall
 */
GadgetConstants compute_constants(const WChainSpec& spec, std::size_t i, std::size_t j,
                                  ConstantsMethod method = ConstantsMethod::Auto);

/**
 * @brief <psi|A (1 - |psi><psi|) B|psi> for the unique ground state psi of h.
 *
 * Hamming-weight conserving Hamiltonians are diagonalized sector by sector;
 * others densely up to 10 qubits and by Lanczos beyond.
 * @throws DegenerateGroundSpace
 */
double correlation_through_chain(const Hamiltonian& h, const PauliTerm& a, const PauliTerm& b);

/// @brief Memo of policy chains and their end-to-end constants, keyed by length.
class ChainConstantsCache {
 public:
  GadgetConstants get(std::size_t n);

 private:
  std::mutex mutex_;
  std::map<std::size_t, GadgetConstants> table_;
};

}  // namespace hsim

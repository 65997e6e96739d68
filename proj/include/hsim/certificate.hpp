#pragma once

#include "hsim/real.hpp"

#include <string>
#include <vector>

namespace hsim {

/**
 * @brief Policy constants of the perturbative lemmas.
 *
 * Defaults are the smallest powers of two for which every gadget of the
 * desk suite reaches eps, eta <= 0.1 (see gadget_suite()).
 */
struct PolicyConstants {
  double c2 = 0.125;            ///< second order, 2^-3
  double c3 = 0.000244140625;  ///< third order, 2^-12
};

/// @brief Delta = c2 (Lambda^6 / eps^2 + Lambda^2 / eta^2).
/// @throws InvalidArgument unless all arguments are positive.
Real choose_delta_2(const Real& lambda, double epsilon, double eta, double c2);

/// @brief Delta = c3 (Lambda^12 / eps^3 + Lambda^3 / eta^3).
Real choose_delta_3(const Real& lambda, double epsilon, double eta, double c3);

/**
 * @brief Parameters of a (cutoff, eta, epsilon)-simulation.
 *
 * The encoding is always ancilla-state attachment (p = 1, q = 0).
 */
struct SimulationCertificate {
  Real delta = 0;   ///< largest gadget strength used
  Real cutoff = 0;  ///< energy below which the simulation holds (Delta / 2 for one round)
  double eta = 0;
  double epsilon = 0;
  Real lambda = 0;  ///< max(|H1|, |H1'|, |H2|) bound
  int p = 1;
  int q = 0;
  std::string encoding = "attach ancilla state";
  std::vector<std::string> provenance;
  bool heuristic_constant = false;
};

/// @brief Certificate of one perturbative round at strength delta.
SimulationCertificate round_certificate(const Real& delta, const Real& lambda, double epsilon, double eta,
                                        std::string pass);

/**
 * @brief A simulates B (cert_a) and B simulates C (cert_b) => A simulates C.
 *
 * cutoff = cutoff_B - eps_A; the O(.) terms are taken with constant 1 and the
 * result is flagged heuristic.
 * @throws PreconditionViolated naming the failing inequality.
 */
SimulationCertificate compose_certificates(const SimulationCertificate& cert_a, const SimulationCertificate& cert_b,
                                           const Real& norm_c);

}  // namespace hsim

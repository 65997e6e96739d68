#include "hsim/certificate.hpp"

#include "hsim/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

namespace hsim {

namespace {

void check_policy_args(const Real& lambda, double epsilon, double eta, double c) {
  if (!(lambda > 0) || !(epsilon > 0) || !(eta > 0) || !(c > 0)) {
    throw InvalidArgument("policy arguments Lambda, epsilon, eta and the constant must be positive");
  }
}

}  // namespace

Real choose_delta_2(const Real& lambda, double epsilon, double eta, double c2) {
  check_policy_args(lambda, epsilon, eta, c2);
  const Real l2 = lambda * lambda;
  const Real l6 = l2 * l2 * l2;
  return Real(c2) * (l6 / (Real(epsilon) * epsilon) + l2 / (Real(eta) * eta));
}

Real choose_delta_3(const Real& lambda, double epsilon, double eta, double c3) {
  check_policy_args(lambda, epsilon, eta, c3);
  const Real l3 = lambda * lambda * lambda;
  const Real l12 = l3 * l3 * l3 * l3;
  const Real e = epsilon, h = eta;
  return Real(c3) * (l12 / (e * e * e) + l3 / (h * h * h));
}

SimulationCertificate round_certificate(const Real& delta, const Real& lambda, double epsilon, double eta,
                                        std::string pass) {
  SimulationCertificate c;
  c.delta = delta;
  c.cutoff = delta / 2;
  c.lambda = lambda;
  c.epsilon = epsilon;
  c.eta = eta;
  c.provenance.push_back(std::move(pass));
  return c;
}

SimulationCertificate compose_certificates(const SimulationCertificate& cert_a, const SimulationCertificate& cert_b,
                                           const Real& norm_c) {
  const Real ea = cert_a.epsilon, eb = cert_b.epsilon;
  if (ea > norm_c) {
    throw PreconditionViolated(fmt::format("eps_A = {} exceeds |C| = {}", cert_a.epsilon, format_real(norm_c)));
  }
  if (eb > norm_c) {
    throw PreconditionViolated(fmt::format("eps_B = {} exceeds |C| = {}", cert_b.epsilon, format_real(norm_c)));
  }
  const Real need = norm_c + 2 * ea + eb;
  if (cert_b.cutoff < need) {
    throw PreconditionViolated(fmt::format("Delta_B = {} is below |C| + 2 eps_A + eps_B = {}",
                                           format_real(cert_b.cutoff), format_real(need)));
  }
  const Real denom = cert_b.cutoff - norm_c + eb;
  SimulationCertificate c;
  c.delta = cert_a.delta > cert_b.delta ? cert_a.delta : cert_b.delta;
  c.cutoff = cert_b.cutoff - ea;
  c.lambda = cert_a.lambda > cert_b.lambda ? cert_a.lambda : cert_b.lambda;
  if (denom > 0) {
    c.eta = cert_a.eta + cert_b.eta + to_double(ea / denom);
    c.epsilon = cert_a.epsilon + cert_b.epsilon + to_double(ea * norm_c / denom);
  } else {
    c.eta = cert_a.eta + cert_b.eta;
    c.epsilon = cert_a.epsilon + cert_b.epsilon;
  }
  c.provenance = cert_b.provenance;
  c.provenance.insert(c.provenance.end(), cert_a.provenance.begin(), cert_a.provenance.end());
  c.heuristic_constant = true;
  return c;
}

}  // namespace hsim

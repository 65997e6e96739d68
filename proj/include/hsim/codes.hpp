#pragma once

#include "hsim/hamiltonian.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hsim {

/// @brief CSS stabilizer code given by X-type and Z-type generator supports.
struct CSSCode {
  std::size_t n_qubits = 0;
  std::vector<std::vector<Qubit>> x_generators;
  std::vector<std::vector<Qubit>> z_generators;
  double a = 1.0;
  double b = 1.0;
  std::string name;
};

/// @brief Checks supports and pairwise commutation.
/// @throws IndexOutOfRange, InvalidArgument, NonCommutingGenerators (message lists every offending (r, s)).
void validate(const CSSCode& code);

/// @brief H = -a sum_r prod X - b sum_s prod Z, one term per generator.
Hamiltonian build_code_hamiltonian(const CSSCode& code);

/**
 * @brief Built-in codes: "repetition(n)" or "repetition" with n, "steane", "surface(2)".
 * @throws UnknownCode
 */
CSSCode builtin_code(std::string_view name);
CSSCode repetition_code(std::size_t n);
CSSCode steane_code();
CSSCode surface_code(std::size_t distance);

/// @brief Rank over GF(2) of the generator matrix rows.
std::size_t gf2_rank(const std::vector<std::vector<Qubit>>& rows, std::size_t n_columns);

/// @brief Number of logical qubits n - rank(X) - rank(Z).
std::size_t logical_qubits(const CSSCode& code);

/// @brief Parses the .css format (`qubits N`, `X i j ...`, `Z i j ...`, optional `weights a b`).
CSSCode parse_css(std::string_view text);
std::string serialize_css(const CSSCode& code);

}  // namespace hsim

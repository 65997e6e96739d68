#pragma once

#include "hsim/hamiltonian.hpp"

#include <string>
#include <string_view>

namespace hsim {

/**
 * @brief Parses the .ham text format.
 *
 * Lines: `qubits N` header, then `<coefficient> <axis><index> ...` terms.
 * `#` starts a comment; `# label: text` sets the label. A line holding only
 * a coefficient is an identity term.
 *
 * @throws ParseError with 1-based line/column; IndexOutOfRange for indices >= N.
 */
Hamiltonian parse_ham(std::string_view text);

/// @brief Inverse of parse_ham up to term order.
std::string serialize_ham(const Hamiltonian& h);

Hamiltonian read_ham_file(const std::string& path);
void write_ham_file(const std::string& path, const Hamiltonian& h);

}  // namespace hsim

#pragma once

#include "hsim/compiler.hpp"
#include "hsim/gadgets.hpp"
#include "hsim/layout.hpp"
#include "hsim/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hsim {

/// Key order is insertion order so that dumps are byte-stable.
using Json = nlohmann::ordered_json;

/// @brief Terms as `.ham` lines ("-0.5 X0 Z1"); coefficients round-trip through parse_real.
Json terms_json(const Hamiltonian& h);

Json to_json(const GadgetApplication& app);
Json to_json(const LatticeLayout& layout);
Json to_json(const SimulationCertificate& cert);
Json to_json(const SpectralReport& report);

/// @brief Round certificates and the composed certificate, with per-round strengths.
Json certificate_chain_json(const CompilationReport& report);

/// @brief Qubit counts, strengths, bound checks and per-stage statistics.
Json report_json(const CompilationReport& report, const CompilerOptions& options);

/// @brief Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

/**
 * @brief Writes <name>.sim.ham, <name>.layout.json, <name>.cert.json and <name>.report.json.
 * @return the paths written, in that order
 * @throws std::system_error when the directory cannot be created, std::ios_base::failure on write errors
 */
std::vector<std::string> write_compile_artifacts(const std::string& directory, const std::string& name,
                                                 const CompilationResult& result, const CompilerOptions& options);

/// @throws std::ios_base::failure
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hsim

#include "hsim/manifest.hpp"

#include "hsim/ham_io.hpp"

#include <filesystem>
#include <fstream>

namespace hsim {

namespace {

Json real(const Real& x) { return format_real(x); }

Json stats_json(const GraphStats& s) {
  return Json{{"kappa", s.kappa}, {"delta", s.delta}, {"mu0", real(s.mu0)}, {"terms", s.term_count}};
}

Json point(const Point& p) { return Json::array({p.x, p.y}); }

Json block_json(const AncillaBlock& b) {
  return Json{{"state", b.state == AncillaState::W ? "W" : "zero"}, {"qubits", b.qubits}};
}

Json constants_json(const std::map<std::string, double>& constants) {
  Json j = Json::object();
  for (const auto& [k, v] : constants) j[k] = v;
  return j;
}

Json round_json(const RoundRecord& r) {
  return Json{{"pass", r.pass},
              {"kind", kind_name(r.kind)},
              {"gadgets", r.gadgets},
              {"ancillas", r.ancillas},
              {"n_qubits", r.n_qubits},
              {"delta", real(r.delta)},
              {"lambda", real(r.lambda)},
              {"epsilon", r.epsilon},
              {"eta", r.eta},
              {"stats", stats_json(r.stats)}};
}

}  // namespace

Json terms_json(const Hamiltonian& h) {
  Json j = Json::array();
  for (const auto& t : h.terms()) j.push_back(t.to_string());
  return j;
}

Json to_json(const GadgetApplication& app) {
  Json j{{"kind", kind_name(app.kind)},
         {"delta", real(app.delta)},
         {"n_data", app.n_data()},
         {"n_qubits", app.n_qubits()},
         {"ancilla_qubits", app.ancilla_qubits()}};
  Json blocks = Json::array();
  for (const auto& b : app.ancillas) blocks.push_back(block_json(b));
  j["ancillas"] = std::move(blocks);
  j["target"] = terms_json(app.target);
  j["H0"] = terms_json(app.h0);
  j["H1"] = terms_json(app.h1);
  j["H2"] = terms_json(app.h2);
  if (app.h1_prime) j["H1_prime"] = terms_json(*app.h1_prime);
  j["constants"] = constants_json(app.constants);
  return j;
}

Json to_json(const LatticeLayout& layout) {
  auto [w, h] = layout.grid();
  Json positions = Json::array();
  for (std::size_t q = 0; q < layout.positions.size(); ++q) {
    if (layout.positions[q]) positions.push_back(Json{{"qubit", q}, {"at", point(*layout.positions[q])}});
  }
  Json edges = Json::array();
  for (const auto& e : layout.edges) {
    Json path = Json::array();
    for (const auto& p : e.path) path.push_back(point(p));
    edges.push_back(Json{{"u", e.u}, {"v", e.v}, {"path", std::move(path)}});
  }
  Json crossings = Json::array();
  for (const auto& c : layout.crossings) {
    crossings.push_back(Json{{"horizontal", c.horizontal}, {"vertical", c.vertical}, {"at", point(c.at)}});
  }
  auto b = layout.bounds();
  return Json{{"grid", Json::array({w, h})},
              {"origin", Json::array({b[0], b[1]})},
              {"compact", layout.compact},
              {"positions", std::move(positions)},
              {"edges", std::move(edges)},
              {"crossings", std::move(crossings)}};
}

Json to_json(const SimulationCertificate& cert) {
  return Json{{"delta", real(cert.delta)},
              {"cutoff", real(cert.cutoff)},
              {"eta", cert.eta},
              {"epsilon", cert.epsilon},
              {"lambda", real(cert.lambda)},
              {"p", cert.p},
              {"q", cert.q},
              {"encoding", cert.encoding},
              {"provenance", cert.provenance},
              {"heuristic_constant", cert.heuristic_constant}};
}

Json to_json(const SpectralReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back(Json{{"target_index", p.target_index},
                         {"simulator_index", p.simulator_index},
                         {"target", p.target},
                         {"simulator", p.simulator},
                         {"gap", p.gap}});
  }
  return Json{{"epsilon_hat", r.epsilon_hat},
              {"eta_hat", r.eta_hat},
              {"isometry_error", r.isometry_error},
              {"epsilon_op", r.epsilon_op},
              {"cutoff", r.cutoff},
              {"below_cutoff", r.below_cutoff},
              {"next_level", r.next_level},
              {"requested_epsilon", r.requested_epsilon},
              {"requested_eta", r.requested_eta},
              {"pass_epsilon", r.pass_epsilon},
              {"pass_eta", r.pass_eta},
              {"pairs", std::move(pairs)}};
}

Json certificate_chain_json(const CompilationReport& report) {
  Json rounds = Json::array();
  for (std::size_t i = 0; i < report.rounds.size(); ++i) {
    Json r = round_json(report.rounds[i]);
    if (i < report.round_certificates.size()) r["certificate"] = to_json(report.round_certificates[i]);
    rounds.push_back(std::move(r));
  }
  return Json{{"chain_ok", report.chain_ok},
              {"budget_ok", report.budget_ok},
              {"round_epsilon", report.round_epsilon},
              {"round_eta", report.round_eta},
              {"target_norm", real(report.target_norm)},
              {"rounds", std::move(rounds)},
              {"composed", report.certificate ? to_json(*report.certificate) : Json(nullptr)}};
}

Json report_json(const CompilationReport& report, const CompilerOptions& options) {
  Json stages = Json::array();
  for (const auto& s : report.stages) {
    stages.push_back(
        Json{{"pass", s.pass}, {"n_qubits", s.n_qubits}, {"rounds", s.rounds}, {"stats", stats_json(s.stats)}});
  }
  return Json{{"n_target", report.n_target},
              {"target", stats_json(report.target_stats)},
              {"n_total", report.n_total},
              {"n_ancilla", report.n_ancilla},
              {"final", stats_json(report.final_stats)},
              {"mu", real(report.mu)},
              {"log10_mu", report.log10_mu},
              {"c_n", options.c_n},
              {"qubit_bound", report.qubit_bound},
              {"qubits_within_bound", report.qubits_within_bound},
              {"nearest_neighbour", report.nearest_neighbour},
              {"compact", report.compact},
              {"routed_crossings", report.routed_crossings},
              {"crossings", report.crossings},
              {"chain_ok", report.chain_ok},
              {"budget_ok", report.budget_ok},
              {"epsilon", options.epsilon},
              {"eta", options.eta},
              {"policy", Json{{"c2", options.policy.c2}, {"c3", options.policy.c3}}},
              {"rounds", report.rounds.size()},
              {"stages", std::move(stages)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

std::vector<std::string> write_compile_artifacts(const std::string& directory, const std::string& name,
                                                 const CompilationResult& result, const CompilerOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  auto path = [&](const char* suffix) { return (fs::path(directory) / (name + suffix)).string(); };
  std::vector<std::string> written{path(".sim.ham"), path(".layout.json"), path(".cert.json"), path(".report.json")};
  write_ham_file(written[0], result.simulator);
  write_text_file(written[1], dump(to_json(result.layout)));
  write_text_file(written[2], dump(certificate_chain_json(result.report)));
  write_text_file(written[3], dump(report_json(result.report, options)));
  return written;
}

}  // namespace hsim

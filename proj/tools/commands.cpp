#include "commands.hpp"

#include "hsim/codes.hpp"
#include "hsim/compiler.hpp"
#include "hsim/errors.hpp"
#include "hsim/gadgets.hpp"
#include "hsim/ham_io.hpp"
#include "hsim/layout.hpp"
#include "hsim/manifest.hpp"
#include "hsim/verify.hpp"
#include "hsim/wstate.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

namespace hsim::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  double epsilon = 0.1;
  double eta = 0.1;
  PolicyConstants policy;
  double c_n = CompilerOptions{}.c_n;
  double c_s = kSoundnessConstant;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::string out;

  CompilerOptions compiler() const { return {epsilon, eta, policy, c_n}; }
};

std::vector<std::size_t> expand(const std::string& text) {
  auto [lo, hi] = parse_range(text);
  std::vector<std::size_t> v;
  for (std::size_t n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  ensure_parent(path);
  write_text_file(path, text);
}

// Runs work(i) for i < count on up to `jobs` threads; the first exception is rethrown.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& work) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          work(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

// ---- code build

int code_build(const std::string& type, std::size_t size, const std::string& css, const std::string& out,
               const std::string& css_out) {
  CSSCode code;
  if (!css.empty()) {
    std::ifstream in(css);
    if (!in) throw std::ios_base::failure("cannot open " + css);
    std::stringstream ss;
    ss << in.rdbuf();
    code = parse_css(ss.str());
  } else if (type == "steane") {
    code = steane_code();
  } else if (type == "repetition") {
    code = repetition_code(size == 0 ? 3 : size);
  } else if (type == "surface") {
    code = surface_code(size == 0 ? 2 : size);
  } else {
    throw UsageError("code build needs --type steane|repetition|surface or --css FILE");
  }
  const Hamiltonian h = build_code_hamiltonian(code);
  if (out.empty() || out == "-") {
    std::cout << serialize_ham(h);
  } else {
    ensure_parent(out);
    write_ham_file(out, h);
  }
  if (!css_out.empty()) emit(css_out, serialize_css(code));
  std::cerr << fmt::format("{}: {} qubits, {} logical, {} terms\n", code.name, code.n_qubits, logical_qubits(code),
                           h.size());
  return kOk;
}

// ---- compile

bool structurally_sound(const CompilationReport& r) {
  return r.final_stats.kappa <= 2 && r.final_stats.delta <= 4 && r.nearest_neighbour && r.crossings == 0 &&
         r.qubits_within_bound && r.chain_ok && r.budget_ok;
}

int compile_cmd(const std::vector<std::string>& inputs, const std::string& name, const RunConfig& cfg) {
  if (inputs.size() > 1 && !name.empty()) throw UsageError("--name applies to a single input");
  const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  std::vector<Hamiltonian> targets;
  for (const auto& in : inputs) targets.push_back(read_ham_file(in));
  std::vector<CompilationResult> results(inputs.size());
  parallel_for(inputs.size(), cfg.jobs, [&](std::size_t i) { results[i] = compile(targets[i], cfg.compiler()); });

  bool ok = true;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    std::string stem = name.empty() ? fs::path(inputs[i]).stem().string() : name;
    const auto paths = write_compile_artifacts(dir.string(), stem, results[i], cfg.compiler());
    const auto& r = results[i].report;
    const bool sound = structurally_sound(r);
    ok = ok && sound;
    std::cout << fmt::format(
        "{}: n={} N={} (bound {:.0f}) rounds={} kappa={} delta={} crossings={} log10(mu)={:.6g} chain={} "
        "budget={} {}\n",
        stem, r.n_target, r.n_total, r.qubit_bound, r.rounds.size(), r.final_stats.kappa, r.final_stats.delta,
        r.crossings, r.log10_mu, r.chain_ok, r.budget_ok, pass_fail(sound));
    for (const auto& p : paths) std::cout << "  wrote " << p << "\n";
  }
  return ok ? kOk : kAssertion;
}

// ---- verify

struct CheckLine {
  std::string check;
  std::string instance;
  double measured = 0;
  double bound = 0;
  bool pass = false;
};

void print_table(const std::vector<CheckLine>& lines) {
  std::cout << fmt::format("{:<22} {:<20} {:>14} {:>14}  {}\n", "check", "instance", "measured", "bound", "result");
  for (const auto& l : lines) {
    std::cout << fmt::format("{:<22} {:<20} {:>14.6e} {:>14.6e}  {}\n", l.check, l.instance, l.measured, l.bound,
                             pass_fail(l.pass));
  }
}

bool all_pass(const std::vector<CheckLine>& lines) {
  return std::all_of(lines.begin(), lines.end(), [](const auto& l) { return l.pass; });
}

Json lines_json(const std::vector<CheckLine>& lines) {
  Json j = Json::array();
  for (const auto& l : lines) {
    j.push_back(Json{{"check", l.check},
                     {"instance", l.instance},
                     {"measured", l.measured},
                     {"bound", l.bound},
                     {"pass", l.pass}});
  }
  return j;
}

Json verify_gadgets(const RunConfig& cfg, std::vector<CheckLine>& lines) {
  const auto rows = gadget_spectral_suite(cfg.policy, cfg.epsilon, cfg.eta);
  Json j = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string inst = fmt::format("{} x{}", r.name, r.multiplier);
    lines.push_back({"eps_hat", inst, r.report.epsilon_hat, cfg.epsilon, r.report.pass_epsilon});
    lines.push_back({"eta_hat", inst, r.report.eta_hat, cfg.eta, r.report.pass_eta});
    if (i > 0 && rows[i - 1].name == r.name) {
      const auto& prev = rows[i - 1].report;
      lines.push_back({"eps_hat monotone", inst, r.report.epsilon_hat, prev.epsilon_hat,
                       r.report.epsilon_hat <= prev.epsilon_hat});
      lines.push_back({"eta_hat monotone", inst, r.report.eta_hat, prev.eta_hat, r.report.eta_hat <= prev.eta_hat});
    }
    j.push_back(Json{{"gadget", r.name},
                     {"multiplier", r.multiplier},
                     {"delta", format_real(r.delta)},
                     {"spectral", to_json(r.report)}});
  }
  return j;
}

Json verify_toy(const RunConfig& cfg, std::size_t samples, std::vector<CheckLine>& lines) {
  const Hamiltonian target(3, {make_term(1, {{0, Pauli::X}, {1, Pauli::X}}), make_term(1, {{1, Pauli::Z}, {2, Pauli::Z}})},
                           "toy");
  CompilerOptions opt = cfg.compiler();
  const CompilationResult res = compile(target, opt);
  const auto& rep = res.report;
  lines.push_back({"total qubits", "toy", static_cast<double>(rep.n_total), 16, rep.n_total <= 16});
  const StateEncoding enc = encoding_of(target.n_qubits(), rep.n_total, res.ancillas);
  const double norm = to_double(triangle_norm_bound(target));
  const double cutoff = rep.certificate ? to_double(rep.certificate->cutoff) : 2 * norm + 1;
  const double req = 2 * cfg.epsilon;
  const SpectralReport sr = spectral_compare(target, res.simulator, cutoff, enc, req, 2 * cfg.eta,
                                             BackendCaps::from_env());
  lines.push_back({"eps_hat", "toy", sr.epsilon_hat, req, sr.pass_epsilon});
  lines.push_back({"eta_hat", "toy", sr.eta_hat, 2 * cfg.eta, sr.pass_eta});

  const LowSpace ls = low_space(target, res.simulator, enc, BackendCaps::from_env());
  std::mt19937_64 rng(cfg.seed);
  const Eigen::Index low = static_cast<Eigen::Index>(sr.below_cutoff);
  std::size_t sound_fail = 0, comp_fail = 0;
  double worst_sound = 0, worst_trace = 0, worst_energy = 0;
  const std::size_t dd = std::size_t{1} << target.n_qubits();
  for (std::size_t k = 0; k < samples; ++k) {
    const CMatrix rho = dirichlet_mixture(ls.simulator.vectors.leftCols(low), rng);
    const auto s = soundness_check(ls, rho, sr.epsilon_hat, sr.eta_hat, cutoff);
    sound_fail += !s.pass;
    worst_sound = std::max(worst_sound, s.target_energy - s.bound);
    const auto c = completeness_check(ls, random_density(dd, 1 + k % dd, rng));
    const bool ok = c.energy_gap <= sr.epsilon_hat + 1e-9 && c.trace_distance <= 2 * sr.isometry_error + 1e-9;
    comp_fail += !ok;
    worst_trace = std::max(worst_trace, c.trace_distance);
    worst_energy = std::max(worst_energy, c.energy_gap);
  }
  lines.push_back({"soundness failures", "toy", static_cast<double>(sound_fail), 0, sound_fail == 0});
  lines.push_back({"completeness failures", "toy", static_cast<double>(comp_fail), 0, comp_fail == 0});
  return Json{{"report", report_json(rep, opt)},
              {"spectral", to_json(sr)},
              {"samples", samples},
              {"soundness_failures", sound_fail},
              {"worst_soundness_excess", worst_sound},
              {"completeness_failures", comp_fail},
              {"worst_trace_distance", worst_trace},
              {"worst_energy_gap", worst_energy}};
}

Json verify_physical(const RunConfig& cfg, std::vector<CheckLine>& lines) {
  const auto rows = physical_suite(cfg.policy, {0.1, 1, 10}, {0, 0.5, 1, 2}, cfg.seed);
  Json j = Json::array();
  for (const auto& r : rows) {
    Json part = Json::array(), dyn = Json::array();
    for (const auto& p : r.partition) {
      lines.push_back({fmt::format("partition b={}", p.beta), r.name, p.relative_error, p.bound, p.pass});
      part.push_back(Json{{"beta", p.beta}, {"relative_error", p.relative_error}, {"bound", p.bound}, {"pass", p.pass}});
    }
    for (const auto& d : r.dynamics) {
      lines.push_back({fmt::format("dynamics t={}", d.time), r.name, d.trace_distance, d.bound, d.pass});
      dyn.push_back(Json{{"time", d.time}, {"trace_distance", d.trace_distance}, {"bound", d.bound}, {"pass", d.pass}});
    }
    j.push_back(Json{{"gadget", r.name},
                     {"delta", format_real(r.delta)},
                     {"spectral", to_json(r.spectral)},
                     {"partition", std::move(part)},
                     {"dynamics", std::move(dyn)}});
  }
  return j;
}

// Random rho of rank <= d and 0 <= M <= 1 with a random spectrum in a random basis.
Json verify_gentle(const RunConfig& cfg, std::size_t trials, std::vector<CheckLine>& lines) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> qubits(1, 4);
  std::uniform_real_distribution<double> unit(0, 1);
  std::size_t violations = 0;
  double worst = -1;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = std::size_t{1} << qubits(rng);
    std::uniform_int_distribution<std::size_t> rank(1, d);
    const CMatrix rho = random_density(d, rank(rng), rng);
    const CMatrix basis = random_density(d, d, rng);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(basis);
    Eigen::VectorXd spec(static_cast<Eigen::Index>(d));
    for (auto& s : spec) s = unit(rng) < 0.3 ? 1.0 : unit(rng);
    const CMatrix m = es.eigenvectors() * spec.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    try {
      const auto g = gentle_measurement_bound(rho, m);
      violations += !g.pass;
      worst = std::max(worst, g.trace_distance - g.bound);
    } catch (const InvalidMeasurement&) {
    }
  }
  lines.push_back({"gentle violations", fmt::format("{} trials", trials), static_cast<double>(violations), 0,
                   violations == 0});
  return Json{{"trials", trials}, {"violations", violations}, {"worst_excess", worst}};
}

int verify_cmd(const std::string& suite, std::size_t samples, std::size_t trials, const RunConfig& cfg) {
  std::vector<CheckLine> lines;
  std::vector<std::pair<std::string, Json>> reports;
  const bool all = suite == "all";
  if (all || suite == "gadgets") reports.emplace_back("gadgets", verify_gadgets(cfg, lines));
  if (all || suite == "toy") reports.emplace_back("toy", verify_toy(cfg, samples, lines));
  if (all || suite == "physical") reports.emplace_back("physical", verify_physical(cfg, lines));
  if (all || suite == "gentle") reports.emplace_back("gentle", verify_gentle(cfg, trials, lines));
  if (reports.empty()) throw UsageError("unknown suite '" + suite + "'");
  if (!cfg.out.empty()) {
    fs::create_directories(cfg.out);
    for (const auto& [name, j] : reports) {
      const std::string path = (fs::path(cfg.out) / ("verify_" + name + ".json")).string();
      write_text_file(path, dump(j));
    }
    write_text_file((fs::path(cfg.out) / "verify_summary.json").string(), dump(lines_json(lines)));
  }
  print_table(lines);
  return all_pass(lines) ? kOk : kAssertion;
}

// ---- gadget apply

std::optional<std::size_t> first_term(const Hamiltonian& h, std::size_t weight, bool at_least) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto w = h.terms()[i].weight();
    if (at_least ? w >= weight : w == weight) return i;
  }
  return std::nullopt;
}

Hamiltonian without(const Hamiltonian& h, std::size_t index) {
  std::vector<PauliTerm> rest;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i != index) rest.push_back(h.terms()[i]);
  }
  return Hamiltonian(h.n_qubits(), std::move(rest));
}

GadgetApplication build_gadget(const std::string& kind, const std::string& input, std::size_t chain) {
  if (input.empty()) {
    const std::string wanted = kind == "long-range" ? fmt::format("long-range n={}", chain) : kind;
    for (auto& g : gadget_suite()) {
      if (g.name == wanted) return g.app;
    }
    throw UsageError(fmt::format("no desk instance for '{}'", wanted));
  }
  const Hamiltonian h = read_ham_file(input);
  auto pick = [&](std::size_t weight, bool at_least) {
    auto i = first_term(h, weight, at_least);
    if (!i) throw UsageError(fmt::format("{} has no term of weight {}{}", input, at_least ? ">= " : "", weight));
    return *i;
  };
  if (kind == "subdivision") {
    const auto i = pick(2, true);
    const auto [a, b] = split_two(h.terms()[i]);
    return subdivide(without(h, i), a, b);
  }
  if (kind == "3-to-2") {
    const auto i = pick(3, false);
    const auto s = split_three(h.terms()[i]);
    return three_to_two(without(h, i), s[0], s[1], s[2]);
  }
  if (kind == "long-range") {
    const auto i = pick(2, false);
    const auto [a, b] = split_two(h.terms()[i]);
    return long_range(without(h, i), a, b, policy_chain(chain));
  }
  throw UsageError(fmt::format("gadget '{}' only has a desk instance; omit the input", kind));
}

int gadget_apply(const std::string& kind, const std::string& input, std::size_t chain, double delta_override,
                 bool check, const std::string& sim_out, const RunConfig& cfg) {
  GadgetApplication app = build_gadget(kind, input, chain);
  app.delta = delta_override > 0 ? Real(delta_override) : policy_delta(app, cfg.epsilon, cfg.eta, cfg.policy);
  Json j = to_json(app);
  j["lambda"] = format_real(lambda_bound(app));
  bool ok = true;
  if (check) {
    const auto rr = residual_report(app, BackendCaps::from_env());
    ok = rr.max() <= 1e-8;
    j["residual"] = Json{{"residual", rr.residual},
                         {"h1_prime_defect", rr.h1_prime_defect},
                         {"h2_block_defect", rr.h2_block_defect},
                         {"pass", ok}};
    std::cerr << fmt::format("{}: residual {:.3e} {}\n", kind_name(app.kind), rr.max(), pass_fail(ok));
  }
  emit(cfg.out, dump(j));
  if (!sim_out.empty()) {
    ensure_parent(sim_out);
    write_ham_file(sim_out, assemble(app));
  }
  return ok ? kOk : kAssertion;
}

// ---- wstate

int wstate_gap(const std::string& range, const std::string& csv, const std::string& backend) {
  Backend b = Backend::Auto;
  if (backend == "dense") b = Backend::Dense;
  if (backend == "iterative") b = Backend::Iterative;
  const GapStudy s = gap_scaling_study(expand(range), b);
  std::string text = "n,lambda2,lambda3,gap\n";
  for (const auto& r : s.rows) text += fmt::format("{},{:.17g},{:.17g},{:.17g}\n", r.n, r.lambda2, r.lambda3, r.gap);
  text += fmt::format("# slope,{:.17g},bound,{},{}\n", s.slope, kGapFitExponent, pass_fail(s.pass));
  emit(csv, text);
  std::cerr << fmt::format("log-log slope {:.4f} (bound {}) {}\n", s.slope, kGapFitExponent, pass_fail(s.pass));
  return s.pass ? kOk : kAssertion;
}

int wstate_constants(const std::string& range, const std::string& csv) {
  std::string text = "n,gamma,gap_estimate,C,D,C_ge_1_over_n,D_le_2\n";
  bool ok = true;
  for (std::size_t n : expand(range)) {
    if (n < 2) throw UsageError("chains need n >= 2");
    const WChainSpec spec = policy_chain(n);
    const GadgetConstants k = compute_constants(spec, 0, n - 1);
    const bool c_ok = k.C >= 1.0 / static_cast<double>(n), d_ok = k.D <= 2.0;
    ok = ok && c_ok && d_ok;
    text += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{},{}\n", n, spec.gamma_coupling, spec.gap_estimate, k.C,
                        k.D, c_ok, d_ok);
  }
  emit(csv, text);
  return ok ? kOk : kAssertion;
}

// ---- layout render

int layout_render(const std::string& input, const std::string& stage, const std::string& format, const RunConfig& cfg) {
  const Hamiltonian h = read_ham_file(input);
  LatticeLayout layout;
  if (stage == "input") {
    layout = layout_graph(h);
  } else {
    const CompilationResult res = compile(h, cfg.compiler());
    layout = stage == "final" ? res.layout : res.routing;
  }
  std::string fmt_name = format;
  if (fmt_name.empty()) fmt_name = fs::path(cfg.out).extension() == ".dot" ? "dot" : "svg";
  emit(cfg.out, fmt_name == "dot" ? render_dot(layout) : render_svg(layout));
  std::cerr << fmt::format("{} sites placed, {} routed edges, {} crossings\n", layout.n_placed(), layout.edges.size(),
                           layout.crossings.size());
  return kOk;
}

// ---- nogo

int nogo_cmd(const std::string& family, const std::string& range, const std::string& csv) {
  const ChainFamily f = family == "product" ? ChainFamily::Product : ChainFamily::W;
  const auto rows = nogo_demo(f, expand(range));
  std::string text = "n,correlation,expected,C\n";
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && std::abs(r.correlation - r.expected) <= 1e-10;
    const std::string c = f == ChainFamily::W ? fmt::format("{:.17g}", r.constant_c) : "";
    text += fmt::format("{},{:.17g},{:.17g},{}\n", r.n, r.correlation, r.expected, c);
  }
  emit(csv, text);
  return ok ? kOk : kAssertion;
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  auto number = [&](std::string_view s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("bad range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = number(text);
    return {v, v};
  }
  const auto lo = number(std::string_view(text).substr(0, dots)), hi = number(std::string_view(text).substr(dots + 2));
  if (lo > hi) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

int run(int argc, char** argv) {
  CLI::App app{"Perturbative-gadget compiler for 2D nearest-neighbour Hamiltonian simulation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_budget = [&](CLI::App* c) {
    c->add_option("--epsilon", cfg.epsilon, "spectral error budget")->check(CLI::Range(1e-12, 1.0));
    c->add_option("--eta", cfg.eta, "encoding error budget")->check(CLI::Range(1e-12, 1.0));
    c->add_option("--c2", cfg.policy.c2, "second-order strength constant")->check(CLI::PositiveNumber);
    c->add_option("--c3", cfg.policy.c3, "third-order strength constant")->check(CLI::PositiveNumber);
  };

  // code build
  auto* code = app.add_subcommand("code", "Stabilizer-code Hamiltonians");
  code->require_subcommand(1);
  auto* build = code->add_subcommand(
      "build", "Build H = -a sum X-checks - b sum Z-checks of a CSS code (repetition, Steane, surface or a .css file)");
  std::string code_type, css_in, code_out, css_out;
  std::size_t code_size = 0;
  build->add_option("--type", code_type, "steane | repetition | surface");
  build->add_option("--size", code_size, "repetition length or surface distance");
  build->add_option("--css", css_in, "read generators from a .css file instead");
  build->add_option("-o,--output", code_out, ".ham output (stdout if omitted)");
  build->add_option("--css-output", css_out, "also write the generators as .css");

  // compile
  auto* comp = app.add_subcommand(
      "compile",
      "Compile a Hamiltonian to a 2-local, degree-4 nearest-neighbour lattice simulator with subdivision, 3-to-2, "
      "triangle, crossing and long-range W-chain gadgets; writes .sim.ham, .layout.json, .cert.json, .report.json");
  std::vector<std::string> comp_inputs;
  std::string comp_name;
  comp->add_option("inputs", comp_inputs, ".ham files")->required();
  comp->add_option("-o,--output", cfg.out, "output directory");
  comp->add_option("--name", comp_name, "artifact stem (single input)");
  comp->add_option("--c-n", cfg.c_n, "constant of the qubit bound N <= c_N n^2 kappa^2 delta^2")
      ->check(CLI::PositiveNumber);
  comp->add_option("--jobs", cfg.jobs, "inputs compiled in parallel")->check(CLI::PositiveNumber);
  add_budget(comp);

  // verify
  auto* ver = app.add_subcommand(
      "verify",
      "Dense checks of the simulation definition: gadget low-spectrum error and subspace angle, end-to-end toy "
      "compile with soundness/completeness, partition-function and dynamics bounds, gentle measurement");
  std::string suite = "all";
  std::size_t samples = 100, trials = 1000;
  ver->add_option("suite", suite, "gadgets | toy | physical | gentle | all")
      ->check(CLI::IsMember({"gadgets", "toy", "physical", "gentle", "all"}));
  ver->add_option("-o,--output", cfg.out, "directory for JSON reports");
  ver->add_option("--seed", cfg.seed, "sampling seed");
  ver->add_option("--samples", samples, "low-energy states for the toy checks");
  ver->add_option("--trials", trials, "gentle-measurement trials");
  add_budget(ver);

  // gadget apply
  auto* gad = app.add_subcommand("gadget", "Perturbation gadgets");
  gad->require_subcommand(1);
  auto* apply = gad->add_subcommand(
      "apply",
      "Apply one gadget (subdivision, 3-to-2, triangle, crossing, long-range W chain) and write its H0/H1/H2 manifest");
  std::string kind, gad_input, sim_out;
  std::size_t chain = 3;
  double delta_override = 0;
  bool check = false;
  apply->add_option("--kind", kind, "gadget")
      ->required()
      ->check(CLI::IsMember({"subdivision", "3-to-2", "triangle", "crossing", "long-range"}));
  apply->add_option("input", gad_input, ".ham target; the first eligible term is simulated (desk instance if omitted)");
  apply->add_option("--chain", chain, "long-range chain length")->check(CLI::Range(2, 12));
  apply->add_option("--delta", delta_override, "strength (policy value if omitted)")->check(CLI::PositiveNumber);
  apply->add_flag("--check", check, "compute the effective-Hamiltonian residual densely");
  apply->add_option("-o,--output", cfg.out, "manifest JSON (stdout if omitted)");
  apply->add_option("--sim", sim_out, "write the assembled simulator .ham");
  add_budget(apply);

  // wstate
  auto* ws = app.add_subcommand("wstate", "W-state parent Hamiltonian chains");
  ws->require_subcommand(1);
  auto* gap = ws->add_subcommand("gap", "Spectral gap of the uncoupled W-chain Hamiltonian and its log-log slope");
  std::string gap_range = "2..12", gap_csv, backend = "auto";
  gap->add_option("--n", gap_range, "chain lengths a..b");
  gap->add_option("--csv", gap_csv, "CSV output (stdout if omitted)");
  gap->add_option("--backend", backend, "auto | dense | iterative")
      ->check(CLI::IsMember({"auto", "dense", "iterative"}));
  auto* cons = ws->add_subcommand("constants", "Constants C and D of the long-range gadget on policy W chains");
  std::string cons_range = "2..10", cons_csv;
  cons->add_option("--n", cons_range, "chain lengths a..b");
  cons->add_option("--csv", cons_csv, "CSV output (stdout if omitted)");

  // layout render
  auto* lay = app.add_subcommand("layout", "2D lattice layouts");
  lay->require_subcommand(1);
  auto* render = lay->add_subcommand("render", "Render the comb routing or the final lattice placement as SVG or DOT");
  std::string lay_input, stage = "routing", format;
  render->add_option("input", lay_input, ".ham file")->required();
  render->add_option("--stage", stage, "input | routing | final")
      ->check(CLI::IsMember({"input", "routing", "final"}));
  render->add_option("--format", format, "svg | dot (from the extension if omitted)")
      ->check(CLI::IsMember({"svg", "dot"}));
  render->add_option("-o,--output", cfg.out, "output file (stdout if omitted)");
  add_budget(render);

  // nogo
  auto* nogo = app.add_subcommand(
      "nogo", "End-to-end correlation through a unique-ground-state chain: W chain (2/n law) or product chain (zero)");
  std::string family = "w", nogo_range = "2..12", nogo_csv;
  nogo->add_option("--family", family, "w | product")->check(CLI::IsMember({"w", "product"}));
  nogo->add_option("--n", nogo_range, "chain lengths a..b");
  nogo->add_option("--csv", nogo_csv, "CSV output (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (build->parsed()) return code_build(code_type, code_size, css_in, code_out, css_out);
    if (comp->parsed()) return compile_cmd(comp_inputs, comp_name, cfg);
    if (ver->parsed()) return verify_cmd(suite, samples, trials, cfg);
    if (apply->parsed()) return gadget_apply(kind, gad_input, chain, delta_override, check, sim_out, cfg);
    if (gap->parsed()) return wstate_gap(gap_range, gap_csv, backend);
    if (cons->parsed()) return wstate_constants(cons_range, cons_csv);
    if (render->parsed()) return layout_render(lay_input, stage, format, cfg);
    if (nogo->parsed()) return nogo_cmd(family, nogo_range, nogo_csv);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input: " << e.what() << "\n";
    return kIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAssertion;
  }
  return kUsage;
}

}  // namespace hsim::cli

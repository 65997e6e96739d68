#include "hsim/compiler.hpp"

#include "hsim/errors.hpp"
#include "hsim/wstate.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <random>
#include <set>

namespace hsim {

namespace bmp = boost::multiprecision;

namespace {

using PairKey = std::pair<Qubit, Qubit>;

PairKey key_of(Qubit a, Qubit b) { return a < b ? PairKey{a, b} : PairKey{b, a}; }

/// Weight-2 terms by qubit pair; the first term wins when a pair repeats.
std::map<PairKey, PauliTerm> pair_terms(const Hamiltonian& h) {
  std::map<PairKey, PauliTerm> m;
  for (const auto& t : h.terms()) {
    if (t.weight() == 2) m.try_emplace(key_of(t.axes()[0].first, t.axes()[1].first), t);
  }
  return m;
}

const PauliTerm& term_on(const std::map<PairKey, PauliTerm>& m, Qubit a, Qubit b) {
  auto it = m.find(key_of(a, b));
  if (it == m.end()) throw PreconditionViolated(fmt::format("no term joins qubits {} and {}", a, b));
  return it->second;
}

/// Split of a 2-local term into (operator on u, operator on the other qubit).
std::pair<PauliTerm, PauliTerm> split_at(const PauliTerm& t, Qubit u) {
  auto [a, b] = split_two(t);
  if (a.axes()[0].first == u) return {a, b};
  return {b, a};
}

Real max_of(const Real& a, const Real& b) { return a < b ? b : a; }

void run_round(PassOutput& out, const std::string& pass, std::vector<GadgetParts> parts, const RoundBudget& b) {
  if (parts.empty()) return;
  const std::size_t before = out.hamiltonian.n_qubits();
  const std::size_t count = parts.size();
  GadgetApplication app = make_application(out.hamiltonian, std::move(parts));
  const Real lambda = lambda_bound(app);
  Real delta = policy_delta(app, b.epsilon, b.eta, b.policy);
  delta = max_of(max_of(delta, b.floor), 2 * lambda);
  app.delta = delta;
  out.hamiltonian = assemble(app).with_label(pass);
  out.ancillas.insert(out.ancillas.end(), app.ancillas.begin(), app.ancillas.end());
  RoundRecord r;
  r.pass = pass;
  r.kind = app.kind;
  r.gadgets = count;
  r.n_qubits = out.hamiltonian.n_qubits();
  r.ancillas = r.n_qubits - before;
  r.delta = delta;
  r.lambda = lambda;
  r.epsilon = b.epsilon;
  r.eta = b.eta;
  r.stats = graph_stats(out.hamiltonian);
  out.rounds.push_back(r);
  out.certificates.push_back(round_certificate(delta, lambda, b.epsilon, b.eta, fmt::format("{} {}", pass,
                                                                                         kind_name(app.kind))));
}

std::set<PairKey> repeated_pairs(const Hamiltonian& h) {
  std::map<PairKey, int> count;
  for (const auto& t : h.terms()) {
    if (t.weight() == 2) ++count[key_of(t.axes()[0].first, t.axes()[1].first)];
  }
  std::set<PairKey> out;
  for (const auto& [k, c] : count) {
    if (c > 1) out.insert(k);
  }
  return out;
}

}  // namespace

PassOutput reduce_locality(const Hamiltonian& h, const RoundBudget& budget) {
  PassOutput out{h, {}, {}, {}};
  for (;;) {
    std::vector<GadgetParts> parts;
    Qubit next = static_cast<Qubit>(out.hamiltonian.n_qubits());
    for (const auto& t : out.hamiltonian.terms()) {
      if (t.weight() <= 3) continue;
      auto [a, b] = split_two(t);
      parts.push_back(subdivision_parts(a, b, next++));
    }
    if (parts.empty()) break;
    run_round(out, "locality", std::move(parts), budget);
  }
  std::vector<GadgetParts> parts;
  Qubit next = static_cast<Qubit>(out.hamiltonian.n_qubits());
  for (const auto& t : out.hamiltonian.terms()) {
    if (t.weight() != 3) continue;
    const auto s = split_three(t);
    parts.push_back(three_to_two_parts(s[0], s[1], s[2], next++));
  }
  run_round(out, "locality", std::move(parts), budget);
  return out;
}

PassOutput reduce_degree(const Hamiltonian& h, const RoundBudget& budget) {
  PassOutput out{h, {}, {}, {}};
  if (graph_stats(h).kappa > 2) throw PreconditionViolated("degree reduction needs a 2-local Hamiltonian");
  if (compact_eligible(h)) return out;

  // Isolate high-degree qubits and split repeated pairs.
  {
    const auto deg = qubit_degrees(h);
    std::set<PairKey> seen;
    std::vector<GadgetParts> parts;
    Qubit next = static_cast<Qubit>(h.n_qubits());
    for (const auto& t : h.terms()) {
      if (t.weight() != 2) continue;
      const Qubit u = t.axes()[0].first, v = t.axes()[1].first;
      const bool repeat = !seen.insert(key_of(u, v)).second;
      if (repeat || deg[u] > 4 || deg[v] > 4) {
        auto [a, b] = split_two(t);
        parts.push_back(subdivision_parts(a, b, next++));
      }
    }
    run_round(out, "degree", std::move(parts), budget);
  }

  for (;;) {
    const Hamiltonian& cur = out.hamiltonian;
    const auto deg = qubit_degrees(cur);
    std::vector<std::vector<std::size_t>> incident(cur.n_qubits());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const auto& t = cur.terms()[i];
      if (t.weight() != 2) continue;
      incident[t.axes()[0].first].push_back(i);
      incident[t.axes()[1].first].push_back(i);
    }
    std::vector<GadgetParts> parts;
    std::set<std::size_t> claimed;
    Qubit next = static_cast<Qubit>(cur.n_qubits());
    for (Qubit v = 0; v < cur.n_qubits(); ++v) {
      if (deg[v] <= 4) continue;
      std::size_t need = deg[v] - 4;
      for (Pauli axis : {Pauli::X, Pauli::Y, Pauli::Z}) {
        std::vector<std::size_t> group;
        for (auto i : incident[v]) {
          if (!claimed.count(i) && cur.terms()[i].axis(v) == axis) group.push_back(i);
        }
        for (std::size_t g = 0; g + 1 < group.size() && need > 0; g += 2, --need) {
          const PauliTerm& t1 = cur.terms()[group[g]];
          const PauliTerm& t2 = cur.terms()[group[g + 1]];
          claimed.insert(group[g]);
          claimed.insert(group[g + 1]);
          auto other = [&](const PauliTerm& t) { return t.axes()[0].first == v ? t.axes()[1] : t.axes()[0]; };
          const auto [qa, pa] = other(t1);
          const auto [qb, pb] = other(t2);
          const Real c1 = t1.coefficient(), c2 = t2.coefficient();
          const Real s = bmp::sqrt(max_of(bmp::abs(c1), bmp::abs(c2)));
          parts.push_back(triangle_parts(single(s, v, axis), single(s, qa, pa), single(s, qb, pb), c1 / (s * s),
                                         c2 / (s * s), next++));
        }
        if (need == 0) break;
      }
    }
    if (parts.empty()) break;
    run_round(out, "degree", std::move(parts), budget);
  }
  const auto deg = qubit_degrees(out.hamiltonian);
  if (std::any_of(deg.begin(), deg.end(), [](std::size_t d) { return d > 4; })) {
    throw PreconditionViolated("degree reduction left a qubit above degree 4");
  }
  if (!repeated_pairs(out.hamiltonian).empty()) {
    throw PreconditionViolated("degree reduction left two terms on one pair");
  }
  return out;
}

namespace {

/// Relay state of one routed edge: placed path indices and the qubit at each.
struct RouteState {
  std::vector<std::size_t> placed;
  std::vector<Qubit> qubit;
  std::vector<std::size_t> required;
};

std::size_t index_on(const RoutedEdge& e, const Point& p) {
  const auto it = std::find(e.path.begin(), e.path.end(), p);
  if (it == e.path.end()) throw InvalidArgument("crossing point is not on its route");
  return static_cast<std::size_t>(it - e.path.begin());
}

void place(std::vector<std::optional<Point>>& positions, Qubit q, const Point& p) {
  if (positions.size() <= q) positions.resize(q + 1);
  positions[q] = p;
}

std::vector<std::vector<std::size_t>> relay_sites(const LatticeLayout& routing) {
  const auto& edges = routing.edges;
  std::vector<std::vector<std::size_t>> out(edges.size());
  for (const auto& c : routing.crossings) {
    for (auto e : {c.horizontal, c.vertical}) {
      const std::size_t i = index_on(edges[e], c.at);
      out[e].push_back(i - 1);
      out[e].push_back(i + 1);
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& req = out[e];
    std::vector<std::size_t> anchors = req;
    anchors.push_back(0);
    anchors.push_back(edges[e].path.size() - 1);
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
    for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
      const std::size_t lo = anchors[k], hi = anchors[k + 1], gap = hi - lo - 1;
      if (gap <= kMaxChainLength) continue;
      const std::size_t extra = gap / (kMaxChainLength + 1);
      for (std::size_t j = 1; j <= extra; ++j) req.push_back(lo + (j * (hi - lo)) / (extra + 1));
    }
    std::sort(req.begin(), req.end());
    req.erase(std::unique(req.begin(), req.end()), req.end());
  }
  return out;
}

// Rounds needed to place k relays on one segment, one median per segment per round.
std::size_t bisection_depth(std::size_t k) {
  std::size_t d = 0;
  while (k > 0) {
    k = k / 2;
    ++d;
  }
  return d;
}

}  // namespace

std::size_t planned_rounds(const LatticeLayout& routing) {
  if (routing.compact) return 0;
  std::size_t depth = 0;
  for (const auto& req : relay_sites(routing)) depth = std::max(depth, bisection_depth(req.size()));
  const bool routed = std::any_of(routing.edges.begin(), routing.edges.end(),
                                  [](const RoutedEdge& e) { return e.interior() > 0; });
  return depth + (routing.crossings.empty() ? 0 : 1) + (routed ? 1 : 0);
}

EmbeddedPass remove_crossings(const LatticeLayout& routing, const Hamiltonian& h, const RoundBudget& budget) {
  EmbeddedPass out{{h, {}, {}, {}}, routing};
  if (routing.compact) return out;
  const auto& edges = routing.edges;
  std::vector<RouteState> st(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    st[e].placed = {0, edges[e].path.size() - 1};
    st[e].qubit = {edges[e].u, edges[e].v};
  }
  const auto required = relay_sites(routing);
  for (std::size_t e = 0; e < edges.size(); ++e) st[e].required = required[e];

  auto& positions = out.layout.positions;
  for (;;) {
    const auto terms = pair_terms(out.pass.hamiltonian);
    std::vector<GadgetParts> parts;
    std::vector<std::tuple<std::size_t, std::size_t, Qubit>> placed;
    Qubit next = static_cast<Qubit>(out.pass.hamiltonian.n_qubits());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto& s = st[e];
      for (std::size_t k = 0; k + 1 < s.placed.size(); ++k) {
        const std::size_t lo = s.placed[k], hi = s.placed[k + 1];
        std::vector<std::size_t> pending;
        for (auto r : s.required) {
          if (r > lo && r < hi) pending.push_back(r);
        }
        if (pending.empty()) continue;
        const std::size_t at = pending[(pending.size() - 1) / 2];
        const PauliTerm& t = term_on(terms, s.qubit[k], s.qubit[k + 1]);
        auto [a, b] = split_two(t);
        const Qubit relay = next++;
        parts.push_back(subdivision_parts(a, b, relay));
        placed.emplace_back(e, at, relay);
      }
    }
    if (parts.empty()) break;
    run_round(out.pass, "relay", std::move(parts), budget);
    for (const auto& [e, at, q] : placed) {
      auto& s = st[e];
      const auto pos = std::lower_bound(s.placed.begin(), s.placed.end(), at) - s.placed.begin();
      s.placed.insert(s.placed.begin() + pos, at);
      s.qubit.insert(s.qubit.begin() + pos, q);
      place(positions, q, edges[e].path[at]);
    }
  }

  auto qubit_at = [&](std::size_t e, std::size_t idx) {
    const auto& s = st[e];
    const auto it = std::lower_bound(s.placed.begin(), s.placed.end(), idx);
    if (it == s.placed.end() || *it != idx) throw PreconditionViolated("crossing relay missing");
    return s.qubit[static_cast<std::size_t>(it - s.placed.begin())];
  };
  std::vector<RoutedEdge> added;
  std::set<std::pair<std::size_t, std::size_t>> consumed;  // (edge, lower relay index)
  {
    const auto terms = pair_terms(out.pass.hamiltonian);
    std::vector<GadgetParts> parts;
    Qubit next = static_cast<Qubit>(out.pass.hamiltonian.n_qubits());
    for (const auto& c : routing.crossings) {
      const std::size_t ih = index_on(edges[c.horizontal], c.at), iv = index_on(edges[c.vertical], c.at);
      Qubit qa = qubit_at(c.horizontal, ih - 1), qd = qubit_at(c.horizontal, ih + 1);
      if (edges[c.horizontal].path[ih - 1].x > edges[c.horizontal].path[ih + 1].x) std::swap(qa, qd);
      Qubit qb = qubit_at(c.vertical, iv - 1), qc = qubit_at(c.vertical, iv + 1);
      if (edges[c.vertical].path[iv - 1].y < edges[c.vertical].path[iv + 1].y) std::swap(qb, qc);
      const auto [pa, pd] = split_at(term_on(terms, qa, qd), qa);
      const auto [pb, pc] = split_at(term_on(terms, qb, qc), qb);
      const Qubit t = next++;
      parts.push_back(crossing_parts(pa, pb, pc, pd, 1, 1, t));
      consumed.insert({c.horizontal, ih - 1});
      consumed.insert({c.vertical, iv - 1});
      place(positions, t, c.at);
      const Point p = c.at;
      for (Qubit q : {qa, qb, qc, qd}) added.push_back({q, t, {*positions[q], p}});
      auto corner = [&](Qubit q1, Qubit q2, Point k) { added.push_back({q1, q2, {*positions[q1], k, *positions[q2]}}); };
      corner(qa, qb, {p.x - 1, p.y + 1});
      corner(qa, qc, {p.x - 1, p.y - 1});
      corner(qb, qd, {p.x + 1, p.y + 1});
      corner(qc, qd, {p.x + 1, p.y - 1});
    }
    run_round(out.pass, "crossing", std::move(parts), budget);
  }

  std::vector<RoutedEdge> segments;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& s = st[e];
    for (std::size_t k = 0; k + 1 < s.placed.size(); ++k) {
      if (consumed.count({e, s.placed[k]})) continue;
      RoutedEdge seg{s.qubit[k], s.qubit[k + 1], {}};
      seg.path.assign(edges[e].path.begin() + static_cast<std::ptrdiff_t>(s.placed[k]),
                      edges[e].path.begin() + static_cast<std::ptrdiff_t>(s.placed[k + 1]) + 1);
      segments.push_back(std::move(seg));
    }
  }
  segments.insert(segments.end(), added.begin(), added.end());
  positions.resize(out.pass.hamiltonian.n_qubits());
  out.layout.edges = std::move(segments);
  out.layout.crossings = enumerate_crossings(out.layout.edges);
  return out;
}

EmbeddedPass localize_edges(const LatticeLayout& routing, const Hamiltonian& h, const RoundBudget& budget) {
  static ChainConstantsCache chains;
  EmbeddedPass out{{h, {}, {}, {}}, routing};
  if (!routing.crossings.empty()) throw PreconditionViolated("routes still cross; remove crossings first");
  auto& positions = out.layout.positions;
  const auto terms = pair_terms(h);
  std::vector<GadgetParts> parts;
  Qubit next = static_cast<Qubit>(h.n_qubits());
  for (const auto& e : routing.edges) {
    const std::size_t len = e.interior();
    if (len == 0) continue;
    const auto [pu, pv] = split_at(term_on(terms, e.u, e.v), e.u);
    if (len == 1) {
      const Qubit t = next++;
      parts.push_back(subdivision_parts(pu, pv, t));
      place(positions, t, e.path[1]);
      continue;
    }
    std::vector<Qubit> chain;
    for (std::size_t k = 1; k <= len; ++k) {
      chain.push_back(next++);
      place(positions, chain.back(), e.path[k]);
    }
    parts.push_back(long_range_parts(pu, pv, chain, policy_chain(len), chains.get(len)));
  }
  run_round(out.pass, "localize", std::move(parts), budget);
  positions.resize(out.pass.hamiltonian.n_qubits());
  out.layout.edges.clear();
  std::set<PairKey> seen;
  for (const auto& t : out.pass.hamiltonian.terms()) {
    if (t.weight() != 2) continue;
    const Qubit u = t.axes()[0].first, v = t.axes()[1].first;
    if (!seen.insert({u, v}).second) continue;
    if (!positions[u] || !positions[v]) throw PreconditionViolated(fmt::format("qubit of term {} unplaced", t.to_string()));
    out.layout.edges.push_back({u, v, {*positions[u], *positions[v]}});
  }
  out.layout.crossings.clear();
  return out;
}

std::optional<std::string> check_structure(const Hamiltonian& simulator, const LatticeLayout& layout) {
  if (layout.positions.size() != simulator.n_qubits()) return std::string("layout does not cover the register");
  for (std::size_t q = 0; q < layout.positions.size(); ++q) {
    if (!layout.positions[q]) return fmt::format("qubit {} is not placed", q);
  }
  for (const auto& t : simulator.terms()) {
    if (t.weight() > 2) return fmt::format("term {} has weight {}", t.to_string(), t.weight());
    if (t.weight() == 2) {
      const auto& a = *layout.positions[t.axes()[0].first];
      const auto& b = *layout.positions[t.axes()[1].first];
      if (manhattan(a, b) != 1) return fmt::format("term {} joins non-neighbouring sites", t.to_string());
    }
  }
  const auto deg = qubit_degrees(simulator);
  for (std::size_t q = 0; q < deg.size(); ++q) {
    if (deg[q] > 4) return fmt::format("qubit {} has degree {}", q, deg[q]);
  }
  if (!layout.crossings.empty()) return fmt::format("{} crossings remain", layout.crossings.size());
  return validate_layout(layout);
}

namespace {

struct Pipeline {
  PassOutput locality, degree;
  LatticeLayout routing;
  EmbeddedPass crossings, localized;
};

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, fmt::format("{}: {}", name, e.what()));
  }
}

Pipeline run_front(const Hamiltonian& h, const RoundBudget& b) {
  Pipeline p;
  p.locality = stage("locality", [&] { return reduce_locality(h, b); });
  p.degree = stage("degree", [&] { return reduce_degree(p.locality.hamiltonian, b); });
  p.routing = stage("layout", [&] { return layout_graph(p.degree.hamiltonian); });
  return p;
}

std::size_t round_count(const Pipeline& p) {
  return p.locality.rounds.size() + p.degree.rounds.size() + p.crossings.pass.rounds.size() +
         p.localized.pass.rounds.size();
}

void run_back(Pipeline& p, const RoundBudget& b) {
  p.crossings = stage("crossings", [&] { return remove_crossings(p.routing, p.degree.hamiltonian, b); });
  p.localized = stage("localize", [&] { return localize_edges(p.crossings.layout, p.crossings.pass.hamiltonian, b); });
}

}  // namespace

CompilationResult compile(const Hamiltonian& h, const CompilerOptions& options) {
  if (h.empty()) throw StageError("input", "input: Hamiltonian has no terms");
  if (!(options.epsilon > 0) || !(options.eta > 0)) throw StageError("input", "input: epsilon and eta must be positive");
  const Real norm_c = triangle_norm_bound(h);
  const double share = std::min(options.epsilon, to_double(norm_c));

  // The round count does not depend on the strengths: a trial run of the cheap
  // front passes plus the relay plan fixes it before the real run.
  RoundBudget b;
  b.policy = options.policy;
  b.floor = 2 * (norm_c + 3 * options.epsilon);
  b.epsilon = share;
  b.eta = options.eta;
  Pipeline trial = run_front(h, b);
  const std::size_t rounds =
      trial.locality.rounds.size() + trial.degree.rounds.size() + planned_rounds(trial.routing);
  // One share is held back for the composition overheads.
  b.epsilon = share / static_cast<double>(rounds + 1);
  b.eta = options.eta / static_cast<double>(rounds + 1);
  Pipeline p = run_front(h, b);
  run_back(p, b);
  if (round_count(p) != rounds) {
    throw StageError("plan", fmt::format("plan: expected {} rounds, ran {}", rounds, round_count(p)));
  }

  CompilationResult res;
  res.simulator = p.localized.pass.hamiltonian;
  res.layout = p.localized.layout;
  res.routing = p.routing;
  auto& r = res.report;
  r.n_target = h.n_qubits();
  r.target_stats = graph_stats(h);
  r.target_norm = norm_c;
  r.n_total = res.simulator.n_qubits();
  r.n_ancilla = r.n_total - r.n_target;
  r.final_stats = graph_stats(res.simulator);
  r.mu = r.final_stats.mu0;
  r.log10_mu = log10_abs(r.mu);
  r.round_epsilon = b.epsilon;
  r.round_eta = b.eta;
  const double n = static_cast<double>(r.n_target), k = static_cast<double>(std::max<std::size_t>(r.target_stats.kappa, 1)),
               d = static_cast<double>(std::max<std::size_t>(r.target_stats.delta, 1));
  r.qubit_bound = options.c_n * n * n * k * k * d * d;
  r.qubits_within_bound = static_cast<double>(r.n_total) <= r.qubit_bound;
  r.compact = p.routing.compact;
  r.routed_crossings = p.routing.crossings.size();
  r.crossings = res.layout.crossings.size();
  r.nearest_neighbour = !check_structure(res.simulator, res.layout).has_value();

  r.stages.push_back({"locality", p.locality.hamiltonian.n_qubits(), graph_stats(p.locality.hamiltonian),
                      p.locality.rounds.size(), p.locality.hamiltonian});
  r.stages.push_back({"degree", p.degree.hamiltonian.n_qubits(), graph_stats(p.degree.hamiltonian),
                      p.degree.rounds.size(), p.degree.hamiltonian});
  r.stages.push_back({"crossings", p.crossings.pass.hamiltonian.n_qubits(),
                      graph_stats(p.crossings.pass.hamiltonian), p.crossings.pass.rounds.size(),
                      p.crossings.pass.hamiltonian});
  r.stages.push_back({"localize", res.simulator.n_qubits(), r.final_stats, p.localized.pass.rounds.size(),
                      res.simulator});
  for (const auto* pass : {&p.locality, &p.degree, &p.crossings.pass, &p.localized.pass}) {
    r.rounds.insert(r.rounds.end(), pass->rounds.begin(), pass->rounds.end());
    r.round_certificates.insert(r.round_certificates.end(), pass->certificates.begin(), pass->certificates.end());
    res.ancillas.insert(res.ancillas.end(), pass->ancillas.begin(), pass->ancillas.end());
  }
  r.chain_ok = true;
  for (const auto& c : r.round_certificates) {
    if (!r.certificate) {
      r.certificate = c;
      continue;
    }
    try {
      r.certificate = compose_certificates(c, *r.certificate, norm_c);
    } catch (const PreconditionViolated&) {
      r.chain_ok = false;
      break;
    }
  }
  r.budget_ok = !r.certificate || (r.certificate->epsilon <= options.epsilon && r.certificate->eta <= options.eta);
  return res;
}

Hamiltonian random_sparse(std::size_t n, std::size_t kappa, std::size_t delta, std::uint64_t seed) {
  if (n < 2 || kappa < 1 || delta < 1) throw InvalidArgument("random_sparse needs n >= 2, kappa >= 1, delta >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(0.1, 1.0);
  std::uniform_int_distribution<int> axis(1, 3);
  std::vector<std::size_t> deg(n, 0);
  std::vector<PauliTerm> terms;
  std::set<std::vector<Qubit>> supports;
  std::size_t failures = 0;
  const std::size_t max_w = std::min(kappa, n);
  while (failures < 2 * n && terms.size() < 2 * n) {
    const std::size_t w = std::uniform_int_distribution<std::size_t>(std::min<std::size_t>(2, max_w), max_w)(rng);
    std::vector<Qubit> open;
    for (Qubit q = 0; q < n; ++q) {
      if (deg[q] < delta) open.push_back(q);
    }
    if (open.size() < w) {
      ++failures;
      continue;
    }
    std::shuffle(open.begin(), open.end(), rng);
    std::vector<Qubit> sup(open.begin(), open.begin() + static_cast<std::ptrdiff_t>(w));
    std::sort(sup.begin(), sup.end());
    if (!supports.insert(sup).second) {
      ++failures;
      continue;
    }
    PauliTerm::Axes axes;
    for (auto q : sup) {
      axes.emplace_back(q, static_cast<Pauli>(axis(rng)));
      if (w >= 2) ++deg[q];
    }
    const double c = coeff(rng) * (rng() & 1 ? 1.0 : -1.0);
    terms.emplace_back(Real(c), std::move(axes));
  }
  for (Qubit q = 0; q < n; ++q) {
    if (std::uniform_int_distribution<int>(0, 1)(rng)) terms.push_back(single(coeff(rng), q, Pauli::Z));
  }
  return Hamiltonian(n, std::move(terms), fmt::format("random(n={}, kappa={}, delta={}, seed={})", n, kappa, delta, seed));
}

}  // namespace hsim

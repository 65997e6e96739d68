#include "hsim/layout.hpp"

#include "hsim/errors.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <set>
#include <unordered_map>

namespace hsim {

int manhattan(const Point& a, const Point& b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

std::array<int, 4> LatticeLayout::bounds() const {
  std::array<int, 4> b{0, 0, 0, 0};
  bool first = true;
  auto take = [&](const Point& p) {
    if (first) {
      b = {p.x, p.y, p.x, p.y};
      first = false;
      return;
    }
    b[0] = std::min(b[0], p.x);
    b[1] = std::min(b[1], p.y);
    b[2] = std::max(b[2], p.x);
    b[3] = std::max(b[3], p.y);
  };
  for (const auto& p : positions) {
    if (p) take(*p);
  }
  for (const auto& e : edges) {
    for (const auto& p : e.path) take(p);
  }
  return b;
}

std::pair<int, int> LatticeLayout::grid() const {
  const auto b = bounds();
  return {b[2] - b[0] + 1, b[3] - b[1] + 1};
}

std::size_t LatticeLayout::n_placed() const {
  return static_cast<std::size_t>(std::count_if(positions.begin(), positions.end(), [](const auto& p) { return p; }));
}

bool compact_eligible(const Hamiltonian& h) {
  for (const auto& t : h.terms()) {
    if (t.weight() > 2) return false;
    if (t.weight() == 2 && t.axes()[1].first != t.axes()[0].first + 1) return false;
  }
  const auto deg = qubit_degrees(h);
  return std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d <= 4; });
}

namespace {

enum class Port { Hook, Left, Down, Right };

int port_offset(Port p) {
  switch (p) {
    case Port::Hook: return -6;
    case Port::Left: return -3;
    case Port::Down: return 0;
    case Port::Right: return 3;
  }
  return 0;
}

std::vector<Port> ports_for(std::size_t k) {
  switch (k) {
    case 1: return {Port::Down};
    case 2: return {Port::Left, Port::Right};
    case 3: return {Port::Left, Port::Down, Port::Right};
    case 4: return {Port::Hook, Port::Left, Port::Down, Port::Right};
    default: return {};
  }
}

// From the vertex at (x, 0) to the top of the port's column on the baseline.
std::vector<Point> stub(Port p, int x) {
  std::vector<Point> s{{x, 0}};
  switch (p) {
    case Port::Down: break;
    case Port::Left:
      for (int k = 1; k <= 3; ++k) s.push_back({x - k, 0});
      break;
    case Port::Right:
      for (int k = 1; k <= 3; ++k) s.push_back({x + k, 0});
      break;
    case Port::Hook:
      for (int k = 0; k <= 6; ++k) s.push_back({x - k, 1});
      s.push_back({x - 6, 0});
      break;
  }
  return s;
}

struct PointHash {
  std::size_t operator()(const Point& p) const {
    return std::hash<std::uint64_t>()((static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) |
                                      static_cast<std::uint32_t>(p.y));
  }
};

}  // namespace

LatticeLayout layout_graph(const Hamiltonian& h) {
  const std::size_t n = h.n_qubits();
  LatticeLayout out;
  out.positions.resize(n);
  if (compact_eligible(h)) {
    out.compact = true;
    for (std::size_t q = 0; q < n; ++q) out.positions[q] = Point{static_cast<int>(q), 0};
    std::set<std::pair<Qubit, Qubit>> seen;
    for (const auto& t : h.terms()) {
      if (t.weight() != 2) continue;
      const Qubit u = t.axes()[0].first, v = t.axes()[1].first;
      if (!seen.insert({u, v}).second) continue;
      out.edges.push_back({u, v, {*out.positions[u], *out.positions[v]}});
    }
    return out;
  }

  std::vector<std::pair<Qubit, Qubit>> pairs;
  std::vector<std::vector<Qubit>> nb(n);
  std::set<std::pair<Qubit, Qubit>> seen;
  for (const auto& t : h.terms()) {
    if (t.weight() > 2) throw PreconditionViolated(fmt::format("term {} is not 2-local", t.to_string()));
    if (t.weight() != 2) continue;
    const Qubit u = t.axes()[0].first, v = t.axes()[1].first;
    if (!seen.insert({u, v}).second) {
      throw PreconditionViolated(fmt::format("qubits {} and {} share more than one term", u, v));
    }
    pairs.emplace_back(u, v);
    nb[u].push_back(v);
    nb[v].push_back(u);
  }
  if (n > static_cast<std::size_t>(std::numeric_limits<int>::max() / kCombSpacing)) {
    throw CapExceeded("too many qubits for the lattice coordinates");
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (nb[q].size() > 4) throw PreconditionViolated(fmt::format("qubit {} has degree {} > 4", q, nb[q].size()));
    std::sort(nb[q].begin(), nb[q].end());
    out.positions[q] = Point{kCombSpacing * static_cast<int>(q), 0};
  }
  auto port_of = [&](Qubit q, Qubit other) {
    const auto idx = std::lower_bound(nb[q].begin(), nb[q].end(), other) - nb[q].begin();
    return ports_for(nb[q].size())[static_cast<std::size_t>(idx)];
  };

  const std::size_t m = pairs.size();
  std::vector<Port> pu(m), pv(m);
  std::vector<int> a(m), b(m);
  for (std::size_t e = 0; e < m; ++e) {
    const auto [u, v] = pairs[e];
    pu[e] = port_of(u, v);
    pv[e] = port_of(v, u);
    a[e] = out.positions[u]->x + port_offset(pu[e]);
    b[e] = out.positions[v]->x + port_offset(pv[e]);
  }
  // Nesting height: 1 + max height of the intervals strictly inside.
  std::vector<std::size_t> by_len(m);
  for (std::size_t e = 0; e < m; ++e) by_len[e] = e;
  std::sort(by_len.begin(), by_len.end(), [&](std::size_t i, std::size_t j) {
    return std::pair(b[i] - a[i], a[i]) < std::pair(b[j] - a[j], a[j]);
  });
  std::vector<int> height(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t e = by_len[i];
    for (std::size_t k = 0; k < i; ++k) {
      const std::size_t f = by_len[k];
      if (a[e] < a[f] && b[f] < b[e]) height[e] = std::max(height[e], height[f] + 1);
    }
  }
  std::vector<std::size_t> rank(m);
  for (std::size_t e = 0; e < m; ++e) rank[e] = e;
  std::sort(rank.begin(), rank.end(),
            [&](std::size_t i, std::size_t j) { return std::pair(height[i], a[i]) < std::pair(height[j], a[j]); });
  std::vector<int> row(m);
  for (std::size_t r = 0; r < m; ++r) row[rank[r]] = -kChannelPitch * static_cast<int>(r + 1);

  for (std::size_t e = 0; e < m; ++e) {
    const auto [u, v] = pairs[e];
    RoutedEdge edge{u, v, stub(pu[e], out.positions[u]->x)};
    for (int y = -1; y >= row[e]; --y) edge.path.push_back({a[e], y});
    for (int x = a[e] + 1; x <= b[e]; ++x) edge.path.push_back({x, row[e]});
    for (int y = row[e] + 1; y <= -1; ++y) edge.path.push_back({b[e], y});
    auto back = stub(pv[e], out.positions[v]->x);
    edge.path.insert(edge.path.end(), back.rbegin(), back.rend());
    out.edges.push_back(std::move(edge));
  }
  out.crossings = enumerate_crossings(out.edges);
  return out;
}

std::vector<Crossing> enumerate_crossings(const std::vector<RoutedEdge>& edges) {
  std::unordered_map<Point, std::vector<std::pair<std::size_t, std::size_t>>, PointHash> visits;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& path = edges[e].path;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) visits[path[i]].emplace_back(e, i);
  }
  std::vector<Crossing> out;
  for (const auto& [site, list] : visits) {
    if (list.size() == 1) continue;
    if (list.size() > 2) throw InvalidArgument(fmt::format("{} routes meet at ({}, {})", list.size(), site.x, site.y));
    auto straight = [&](std::size_t e, std::size_t i) -> int {
      const auto& p = edges[e].path;
      if (p[i - 1].y == site.y && p[i + 1].y == site.y) return 0;
      if (p[i - 1].x == site.x && p[i + 1].x == site.x) return 1;
      return -1;
    };
    const int d0 = straight(list[0].first, list[0].second), d1 = straight(list[1].first, list[1].second);
    if (list[0].first == list[1].first || d0 < 0 || d1 < 0 || d0 == d1) {
      throw InvalidArgument(fmt::format("routes {} and {} overlap at ({}, {}) without a perpendicular crossing",
                                        list[0].first, list[1].first, site.x, site.y));
    }
    const std::size_t h = d0 == 0 ? list[0].first : list[1].first;
    const std::size_t v = d0 == 0 ? list[1].first : list[0].first;
    out.push_back({h, v, site});
  }
  std::sort(out.begin(), out.end(), [](const Crossing& l, const Crossing& r) {
    return std::tie(l.horizontal, l.vertical, l.at) < std::tie(r.horizontal, r.vertical, r.at);
  });
  return out;
}

std::optional<std::string> validate_layout(const LatticeLayout& layout) {
  std::unordered_map<Point, Qubit, PointHash> occupied;
  for (std::size_t q = 0; q < layout.positions.size(); ++q) {
    if (!layout.positions[q]) continue;
    auto [it, fresh] = occupied.emplace(*layout.positions[q], static_cast<Qubit>(q));
    if (!fresh) return fmt::format("qubits {} and {} share a position", it->second, q);
  }
  for (std::size_t e = 0; e < layout.edges.size(); ++e) {
    const auto& edge = layout.edges[e];
    if (edge.u >= layout.positions.size() || edge.v >= layout.positions.size() || !layout.positions[edge.u] ||
        !layout.positions[edge.v]) {
      return fmt::format("edge {} has an unplaced endpoint", e);
    }
    if (edge.path.size() < 2 || edge.path.front() != *layout.positions[edge.u] ||
        edge.path.back() != *layout.positions[edge.v]) {
      return fmt::format("edge {} path does not join its endpoints", e);
    }
    std::set<Point> own;
    for (std::size_t i = 0; i < edge.path.size(); ++i) {
      if (!own.insert(edge.path[i]).second) return fmt::format("edge {} revisits a site", e);
      if (i > 0 && manhattan(edge.path[i - 1], edge.path[i]) != 1) return fmt::format("edge {} takes a non-unit step", e);
      if (i > 0 && i + 1 < edge.path.size() && occupied.count(edge.path[i])) {
        return fmt::format("edge {} passes through qubit {}", e, occupied.at(edge.path[i]));
      }
    }
  }
  std::vector<Crossing> found;
  try {
    found = enumerate_crossings(layout.edges);
  } catch (const InvalidArgument& ex) {
    return std::string(ex.what());
  }
  if (found.size() != layout.crossings.size()) {
    return fmt::format("{} crossings listed, {} present", layout.crossings.size(), found.size());
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto& l = found[i];
    const auto& r = layout.crossings[i];
    if (l.horizontal != r.horizontal || l.vertical != r.vertical || l.at != r.at) {
      return fmt::format("crossing {} differs from the enumerated one", i);
    }
  }
  return std::nullopt;
}

std::string render_svg(const LatticeLayout& layout) {
  constexpr int kCell = 10;
  const auto b = layout.bounds();
  const int w = (b[2] - b[0] + 2) * kCell, hgt = (b[3] - b[1] + 2) * kCell;
  auto sx = [&](int x) { return (x - b[0] + 1) * kCell; };
  auto sy = [&](int y) { return (b[3] - y + 1) * kCell; };
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", w, hgt, w, hgt);
  s += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", w, hgt);
  for (const auto& e : layout.edges) {
    s += "<polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"2\" points=\"";
    for (const auto& p : e.path) s += fmt::format("{},{} ", sx(p.x), sy(p.y));
    s += "\"/>\n";
  }
  for (const auto& c : layout.crossings) {
    s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"6\" height=\"6\" fill=\"#c0392b\"/>\n", sx(c.at.x) - 3,
                     sy(c.at.y) - 3);
  }
  for (std::size_t q = 0; q < layout.positions.size(); ++q) {
    if (!layout.positions[q]) continue;
    const auto& p = *layout.positions[q];
    s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"><title>{}</title></circle>\n", sx(p.x),
                     sy(p.y), q);
  }
  s += "</svg>\n";
  return s;
}

std::string render_dot(const LatticeLayout& layout) {
  std::string s = "graph lattice {\n  node [shape=point];\n";
  for (std::size_t q = 0; q < layout.positions.size(); ++q) {
    if (!layout.positions[q]) continue;
    s += fmt::format("  q{} [pos=\"{},{}!\"];\n", q, layout.positions[q]->x, layout.positions[q]->y);
  }
  for (const auto& e : layout.edges) {
    s += fmt::format("  q{} -- q{} [len={}];\n", e.u, e.v, e.path.size() - 1);
  }
  s += "}\n";
  return s;
}

}  // namespace hsim

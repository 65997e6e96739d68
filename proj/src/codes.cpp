#include "hsim/codes.hpp"

#include "hsim/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <set>

namespace hsim {

namespace {

std::vector<Qubit> sorted_unique(std::vector<Qubit> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t overlap(const std::vector<Qubit>& a, const std::vector<Qubit>& b) {
  std::vector<Qubit> sa = sorted_unique(a), sb = sorted_unique(b), out;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out.size();
}

}  // namespace

void validate(const CSSCode& code) {
  if (!(code.a > 0) || !(code.b > 0)) throw InvalidArgument("code weights a, b must be positive");
  auto check = [&](const auto& gens, char kind) {
    for (std::size_t r = 0; r < gens.size(); ++r) {
      if (gens[r].empty()) throw InvalidArgument(fmt::format("{} generator {} is empty", kind, r));
      if (sorted_unique(gens[r]).size() != gens[r].size()) {
        throw InvalidArgument(fmt::format("{} generator {} repeats a qubit", kind, r));
      }
      for (auto q : gens[r]) {
        if (q >= code.n_qubits) {
          throw IndexOutOfRange(fmt::format("{} generator {} uses qubit {} >= {}", kind, r, q, code.n_qubits));
        }
      }
    }
  };
  check(code.x_generators, 'X');
  check(code.z_generators, 'Z');
  std::string bad;
  for (std::size_t r = 0; r < code.x_generators.size(); ++r) {
    for (std::size_t s = 0; s < code.z_generators.size(); ++s) {
      if (overlap(code.x_generators[r], code.z_generators[s]) % 2 != 0) {
        bad += fmt::format("{}({}, {})", bad.empty() ? "" : ", ", r, s);
      }
    }
  }
  if (!bad.empty()) throw NonCommutingGenerators("odd overlap between X and Z generators (r, s): " + bad);
}

Hamiltonian build_code_hamiltonian(const CSSCode& code) {
  validate(code);
  std::vector<PauliTerm> terms;
  auto add = [&](const std::vector<Qubit>& gen, Pauli p, double w) {
    PauliTerm::Axes axes;
    for (auto q : gen) axes.emplace_back(q, p);
    terms.emplace_back(Real(-w), std::move(axes));
  };
  for (const auto& g : code.x_generators) add(g, Pauli::X, code.a);
  for (const auto& g : code.z_generators) add(g, Pauli::Z, code.b);
  return Hamiltonian(code.n_qubits, std::move(terms), code.name);
}

CSSCode repetition_code(std::size_t n) {
  if (n < 2) throw UnknownCode("repetition code needs n >= 2");
  CSSCode c;
  c.n_qubits = n;
  c.name = fmt::format("repetition({})", n);
  for (Qubit i = 0; i + 1 < n; ++i) c.z_generators.push_back({i, i + 1});
  return c;
}

CSSCode steane_code() {
  CSSCode c;
  c.n_qubits = 7;
  c.name = "steane";
  // Rows of the [7,4] Hamming parity-check matrix.
  const std::vector<std::vector<Qubit>> rows = {{3, 4, 5, 6}, {1, 2, 5, 6}, {0, 2, 4, 6}};
  c.x_generators = rows;
  c.z_generators = rows;
  return c;
}

CSSCode surface_code(std::size_t d) {
  if (d < 2) throw UnknownCode("surface code needs distance >= 2");
  CSSCode c;
  c.n_qubits = d * d;
  c.name = fmt::format("surface({})", d);
  const int di = static_cast<int>(d);
  for (int r = -1; r < di; ++r) {
    for (int col = -1; col < di; ++col) {
      const bool x_type = ((r + col) % 2 + 2) % 2 == 0;
      const bool row_edge = r == -1 || r == di - 1;
      const bool col_edge = col == -1 || col == di - 1;
      if (row_edge && col_edge) continue;
      if (row_edge && !x_type) continue;
      if (col_edge && x_type) continue;
      std::vector<Qubit> support;
      for (int dr = 0; dr <= 1; ++dr) {
        for (int dc = 0; dc <= 1; ++dc) {
          const int rr = r + dr, cc = col + dc;
          if (rr >= 0 && rr < di && cc >= 0 && cc < di) support.push_back(static_cast<Qubit>(rr * di + cc));
        }
      }
      (x_type ? c.x_generators : c.z_generators).push_back(std::move(support));
    }
  }
  return c;
}

CSSCode builtin_code(std::string_view name) {
  auto arg = [&](std::string_view prefix) -> std::optional<std::size_t> {
    if (!name.starts_with(prefix) || name.size() < prefix.size() + 3) return std::nullopt;
    if (name[prefix.size()] != '(' || name.back() != ')') return std::nullopt;
    auto inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), v);
    if (ec != std::errc() || p != inner.data() + inner.size()) return std::nullopt;
    return v;
  };
  if (name == "steane") return steane_code();
  if (auto n = arg("repetition")) return repetition_code(*n);
  if (auto d = arg("surface")) return surface_code(*d);
  throw UnknownCode(fmt::format("unknown code '{}'", name));
}

std::size_t gf2_rank(const std::vector<std::vector<Qubit>>& rows, std::size_t n_columns) {
  std::vector<std::vector<bool>> m;
  for (const auto& r : rows) {
    std::vector<bool> v(n_columns, false);
    for (auto q : r) v.at(q) = !v.at(q);
    m.push_back(std::move(v));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_columns && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && !m[pivot][col]) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != rank && m[i][col]) {
        for (std::size_t j = 0; j < n_columns; ++j) m[i][j] = m[i][j] != m[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t logical_qubits(const CSSCode& code) {
  return code.n_qubits - gf2_rank(code.x_generators, code.n_qubits) - gf2_rank(code.z_generators, code.n_qubits);
}

CSSCode parse_css(std::string_view text) {
  CSSCode code;
  bool have_n = false;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    std::vector<std::pair<std::string_view, std::size_t>> tok;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      tok.emplace_back(line.substr(i, j - i), i + 1);
      i = j;
    }
    if (tok.empty()) continue;
    auto to_index = [&](const auto& t) {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(t.first.data(), t.first.data() + t.first.size(), v);
      if (ec != std::errc() || p != t.first.data() + t.first.size()) {
        throw ParseError(fmt::format("invalid integer '{}'", t.first), line_no, t.second);
      }
      return v;
    };
    const auto head = tok[0].first;
    if (head == "qubits") {
      if (tok.size() != 2) throw ParseError("expected 'qubits N'", line_no, tok[0].second);
      code.n_qubits = to_index(tok[1]);
      have_n = true;
    } else if (head == "weights") {
      if (tok.size() != 3) throw ParseError("expected 'weights a b'", line_no, tok[0].second);
      auto a = parse_real(tok[1].first), b = parse_real(tok[2].first);
      if (!a) throw ParseError("invalid weight", line_no, tok[1].second);
      if (!b) throw ParseError("invalid weight", line_no, tok[2].second);
      code.a = to_double(*a);
      code.b = to_double(*b);
    } else if (head == "X" || head == "Z") {
      if (!have_n) throw ParseError("generator before 'qubits' header", line_no, tok[0].second);
      std::vector<Qubit> gen;
      for (std::size_t k = 1; k < tok.size(); ++k) {
        auto q = to_index(tok[k]);
        if (q >= code.n_qubits) {
          throw IndexOutOfRange(fmt::format("{}:{}: qubit {} out of range", line_no, tok[k].second, q));
        }
        gen.push_back(static_cast<Qubit>(q));
      }
      (head == "X" ? code.x_generators : code.z_generators).push_back(std::move(gen));
    } else {
      throw ParseError(fmt::format("unknown directive '{}'", head), line_no, tok[0].second);
    }
  }
  if (!have_n) throw ParseError("missing 'qubits' header", line_no, 1);
  validate(code);
  return code;
}

std::string serialize_css(const CSSCode& code) {
  std::string out = fmt::format("qubits {}\n", code.n_qubits);
  if (code.a != 1.0 || code.b != 1.0) out += fmt::format("weights {} {}\n", code.a, code.b);
  for (const auto& g : code.x_generators) out += fmt::format("X {}\n", fmt::join(g, " "));
  for (const auto& g : code.z_generators) out += fmt::format("Z {}\n", fmt::join(g, " "));
  return out;
}

}  // namespace hsim

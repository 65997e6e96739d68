#include "hsim/ham_io.hpp"

#include "hsim/errors.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

namespace hsim {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(fmt::format("{}:{}: {}", line, column, what)), line_(line), column_(column) {}

StageError::StageError(std::string stage, const std::string& what)
    : Error(fmt::format("[{}] {}", stage, what)), stage_(std::move(stage)) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

Hamiltonian parse_ham(std::string_view text) {
  std::optional<std::size_t> n;
  std::string label;
  std::vector<PauliTerm> terms;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      std::string_view comment = line.substr(hash + 1);
      while (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
      if (comment.starts_with("label:")) {
        comment.remove_prefix(6);
        while (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
        while (!comment.empty() && (comment.back() == '\r' || comment.back() == ' ')) comment.remove_suffix(1);
        label = std::string(comment);
      }
      line = line.substr(0, hash);
    }
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0].text == "qubits") {
      if (n) throw ParseError("duplicate 'qubits' header", line_no, tokens[0].column);
      if (tokens.size() != 2) throw ParseError("expected 'qubits N'", line_no, tokens[0].column);
      n = parse_index(tokens[1].text);
      if (!n) throw ParseError("invalid qubit count", line_no, tokens[1].column);
      continue;
    }
    if (!n) throw ParseError("term before 'qubits' header", line_no, tokens[0].column);
    auto coefficient = parse_real(tokens[0].text);
    if (!coefficient) throw ParseError(fmt::format("invalid coefficient '{}'", tokens[0].text), line_no, tokens[0].column);
    PauliTerm::Axes axes;
    std::set<std::size_t> seen;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      const auto& tok = tokens[k];
      Pauli p;
      switch (tok.text[0]) {
        case 'X': p = Pauli::X; break;
        case 'Y': p = Pauli::Y; break;
        case 'Z': p = Pauli::Z; break;
        default: throw ParseError(fmt::format("invalid axis '{}'", tok.text), line_no, tok.column);
      }
      auto idx = parse_index(tok.text.substr(1));
      if (!idx) throw ParseError(fmt::format("invalid qubit index in '{}'", tok.text), line_no, tok.column + 1);
      if (*idx >= *n) {
        throw IndexOutOfRange(fmt::format("{}:{}: qubit {} out of range for {} qubits", line_no, tok.column, *idx, *n));
      }
      if (!seen.insert(*idx).second) {
        throw ParseError(fmt::format("qubit {} repeated in one term", *idx), line_no, tok.column);
      }
      axes.emplace_back(static_cast<Qubit>(*idx), p);
    }
    if (*coefficient == 0) continue;
    terms.emplace_back(*coefficient, std::move(axes));
  }
  if (!n) throw ParseError("missing 'qubits' header", line_no, 1);
  return Hamiltonian(*n, std::move(terms), std::move(label));
}

std::string serialize_ham(const Hamiltonian& h) {
  std::string out;
  if (!h.label().empty()) out += fmt::format("# label: {}\n", h.label());
  out += fmt::format("qubits {}\n", h.n_qubits());
  for (const auto& t : h.terms()) {
    out += t.to_string();
    out += '\n';
  }
  return out;
}

Hamiltonian read_ham_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ham(ss.str());
}

void write_ham_file(const std::string& path, const Hamiltonian& h) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << serialize_ham(h);
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

}  // namespace hsim

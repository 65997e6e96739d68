#include "hsim/pauli.hpp"

#include "hsim/errors.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace hsim {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

std::complex<double> PauliProduct::factor() const {
  static const std::complex<double> powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return powers[phase & 3];
}

PauliProduct pauli_mul(Pauli a, Pauli b) {
  if (a == Pauli::I) return {0, b};
  if (b == Pauli::I) return {0, a};
  if (a == b) return {0, Pauli::I};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto c = static_cast<Pauli>(ia ^ ib);
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? 1 : 3, c};
}

PauliTerm::PauliTerm(Real coefficient, Axes axes) : coefficient_(std::move(coefficient)), axes_(std::move(axes)) {
  std::erase_if(axes_, [](const auto& a) { return a.second == Pauli::I; });
  std::sort(axes_.begin(), axes_.end());
  for (std::size_t i = 1; i < axes_.size(); ++i) {
    if (axes_[i].first == axes_[i - 1].first) {
      throw InvalidArgument(fmt::format("qubit {} appears twice in one Pauli string", axes_[i].first));
    }
  }
}

std::vector<Qubit> PauliTerm::support() const {
  std::vector<Qubit> s;
  s.reserve(axes_.size());
  for (const auto& [q, p] : axes_) s.push_back(q);
  return s;
}

Pauli PauliTerm::axis(Qubit q) const {
  auto it = std::lower_bound(axes_.begin(), axes_.end(), std::make_pair(q, Pauli::I));
  if (it != axes_.end() && it->first == q) return it->second;
  return Pauli::I;
}

Qubit PauliTerm::max_qubit() const { return axes_.empty() ? 0 : axes_.back().first; }

PauliTerm PauliTerm::scaled(const Real& factor) const {
  PauliTerm t = *this;
  t.coefficient_ *= factor;
  return t;
}

PauliTerm PauliTerm::with_coefficient(Real coefficient) const {
  PauliTerm t = *this;
  t.coefficient_ = std::move(coefficient);
  return t;
}

bool PauliTerm::overlaps(const PauliTerm& other) const {
  std::size_t i = 0, j = 0;
  while (i < axes_.size() && j < other.axes_.size()) {
    if (axes_[i].first == other.axes_[j].first) return true;
    if (axes_[i].first < other.axes_[j].first) ++i;
    else ++j;
  }
  return false;
}

std::uint64_t PauliTerm::flip_mask() const {
  std::uint64_t m = 0;
  for (const auto& [q, p] : axes_) {
    if (p == Pauli::X || p == Pauli::Y) m |= std::uint64_t{1} << q;
  }
  return m;
}

std::uint64_t PauliTerm::phase_mask() const {
  std::uint64_t m = 0;
  for (const auto& [q, p] : axes_) {
    if (p == Pauli::Z || p == Pauli::Y) m |= std::uint64_t{1} << q;
  }
  return m;
}

int PauliTerm::y_count() const {
  return static_cast<int>(std::count_if(axes_.begin(), axes_.end(), [](const auto& a) { return a.second == Pauli::Y; }));
}

std::string PauliTerm::to_string() const {
  std::string s = format_real(coefficient_);
  for (const auto& [q, p] : axes_) s += fmt::format(" {}{}", pauli_char(p), q);
  return s;
}

PauliTerm single(Real coefficient, Qubit q, Pauli p) { return PauliTerm(std::move(coefficient), {{q, p}}); }

PauliTerm make_term(Real coefficient, std::initializer_list<std::pair<Qubit, Pauli>> ops) {
  return PauliTerm(std::move(coefficient), PauliTerm::Axes(ops));
}

TermProduct multiply(const PauliTerm& a, const PauliTerm& b) {
  PauliTerm::Axes out;
  int phase = 0;
  const auto& x = a.axes();
  const auto& y = b.axes();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back(y[j++]);
    } else {
      auto pr = pauli_mul(x[i].second, y[j].second);
      phase += pr.phase;
      if (pr.result != Pauli::I) out.emplace_back(x[i].first, pr.result);
      ++i, ++j;
    }
  }
  return {phase & 3, PauliTerm(a.coefficient() * b.coefficient(), std::move(out))};
}

PauliTerm disjoint_product(const PauliTerm& a, const PauliTerm& b) {
  if (a.overlaps(b)) throw OverlappingSupports("product of Pauli strings with overlapping supports");
  return multiply(a, b).term;
}

}  // namespace hsim

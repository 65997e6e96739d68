#pragma once

#include "hsim/hamiltonian.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hsim {

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

int manhattan(const Point& a, const Point& b);

/// @brief An interaction routed on the lattice; path runs from positions[u] to positions[v] in unit steps.
struct RoutedEdge {
  Qubit u = 0;
  Qubit v = 0;
  std::vector<Point> path;

  /// @brief Sites strictly between the endpoints.
  std::size_t interior() const { return path.size() < 2 ? 0 : path.size() - 2; }
};

/// @brief Edge `horizontal` runs straight through `at` along x, edge `vertical` along y.
struct Crossing {
  std::size_t horizontal = 0;
  std::size_t vertical = 0;
  Point at;
};

/**
 * @brief Qubit positions and routed interactions on the square lattice.
 *
 * Comb layouts put qubit u at (12u, 0) with channels below the baseline;
 * compact layouts put qubit u at (u, 0) and have no routing.
 */
struct LatticeLayout {
  std::vector<std::optional<Point>> positions;  ///< by qubit; unplaced qubits are empty
  std::vector<RoutedEdge> edges;
  std::vector<Crossing> crossings;
  bool compact = false;

  /// @brief (x_min, y_min, x_max, y_max) over positions and paths.
  std::array<int, 4> bounds() const;
  /// @brief (width, height) of the bounding box in lattice sites.
  std::pair<int, int> grid() const;
  std::size_t n_placed() const;
};

/// @brief Horizontal distance between consecutive baseline qubits in comb layouts.
constexpr int kCombSpacing = 12;
/// @brief Vertical distance between channel rows.
constexpr int kChannelPitch = 3;

/// @brief All weight-2 terms join qubits u, u + 1 and every qubit has degree <= 4.
bool compact_eligible(const Hamiltonian& h);

/**
 * @brief Places the interaction graph of a 2-local, degree <= 4 Hamiltonian.
 *
 * Compact-eligible graphs stay on a line. Otherwise every 2-local term gets a
 * port at each endpoint and a private channel row; rows are ranked by nesting
 * height, then left port column.
 * @throws PreconditionViolated (weight > 2, degree > 4, two terms on one pair)
 */
LatticeLayout layout_graph(const Hamiltonian& h);

/**
 * @brief Every lattice site shared by two routes, as a crossing.
 * @throws InvalidArgument if two routes share a site without crossing perpendicularly there
 */
std::vector<Crossing> enumerate_crossings(const std::vector<RoutedEdge>& edges);

/**
 * @brief Structural check of a layout; returns a description of the first defect.
 *
 * Positions distinct, paths unit-step from endpoint to endpoint, interiors
 * away from placed qubits, shared sites only at perpendicular crossings and
 * the crossing list equal to enumerate_crossings().
 */
std::optional<std::string> validate_layout(const LatticeLayout& layout);

std::string render_svg(const LatticeLayout& layout);
std::string render_dot(const LatticeLayout& layout);

}  // namespace hsim

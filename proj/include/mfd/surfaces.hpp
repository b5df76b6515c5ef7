#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfd/graph_operad.hpp"
#include "mfd/types.hpp"

namespace mfd {

/// Compact oriented surface of genus g with n labelled boundary circles.
struct SurfaceSpec {
  int genus = 0;
  std::vector<Element> labels;

  std::size_t boundary_count() const noexcept { return labels.size(); }
  /// 2g - 2 + n, the number of pairs of pants in any decomposition.
  int complexity() const noexcept { return 2 * genus - 2 + static_cast<int>(labels.size()); }
};

/// Errors: surfaces.NegativeGenus.
SurfaceSpec make_surface(int genus, std::vector<Element> labels);

/// Maximal cut system, recorded through its dual graph: one trivalent vertex
/// per pair of pants, one internal edge per cut, one leg per boundary circle.
class PantsDecomposition {
 public:
  const Graph& dual() const noexcept { return dual_; }
  /// Leg half-edge -> boundary index 0..n-1.
  const std::map<Label, std::size_t>& leg_order() const noexcept { return leg_order_; }
  int genus() const noexcept { return genus_; }
  std::size_t boundary_count() const noexcept { return leg_order_.size(); }
  /// Moves applied since construction, e.g. "F(e0.0)" or "S(e1.0)".
  const std::vector<std::string>& move_log() const noexcept { return log_; }

 private:
  friend PantsDecomposition make_pants_decomposition(Graph, std::map<Label, std::size_t>, std::optional<std::pair<int, std::size_t>>);
  friend PantsDecomposition whitehead_move(const PantsDecomposition&, const Label&);
  friend PantsDecomposition s_move(const PantsDecomposition&, const Label&);

  Graph dual_;
  std::map<Label, std::size_t> leg_order_;
  int genus_ = 0;
  std::vector<std::string> log_;
};

/// Validates trivalence, connectedness and the leg bijection; when
/// `expected` = (g, n) is given the derived genus and leg count must match.
/// Errors: surfaces.NotTrivalent, Disconnected, CountMismatch, BadLegOrder.
PantsDecomposition make_pants_decomposition(Graph dual, std::map<Label, std::size_t> leg_order,
                                            std::optional<std::pair<int, std::size_t>> expected = std::nullopt);

/// Convenience: legs labelled b0..b{n-1} in boundary order.
PantsDecomposition make_pants_decomposition(Graph dual);

/// All isomorphism classes (legs labelled b0..b{n-1}, fixed) of connected
/// trivalent dual graphs for (g, n), sorted by canonical code, truncated at
/// `cap`. Requires 1 <= 2g - 2 + n <= 4.
/// Errors: surfaces.ComplexityOutOfRange.
std::vector<PantsDecomposition> enumerate_decompositions(int genus, std::size_t boundary_count, std::size_t cap = 1000);
std::vector<PantsDecomposition> enumerate_decompositions(const SurfaceSpec& spec, std::size_t cap = 1000);

/// Flip across an edge joining two distinct pants. With outer half-edges
/// {a, b} at one end and {c, d} at the other, the two re-pairings
/// {a, c | b, d} and {a, d | b, c} are compared; the one with fewer loop
/// edges wins, ties go to {a, c | b, d}. Outer half-edges are taken in
/// label order.
/// Errors: surfaces.MoveNotApplicable for loops, surfaces.UnknownEdge.
PantsDecomposition whitehead_move(const PantsDecomposition& pd, const Label& half_edge);

/// Replaces the cut of the one-holed torus cut out by a loop with a
/// transversal one. The dual graph is unchanged; only the log grows.
/// Errors: surfaces.MoveNotApplicable for non-loops, surfaces.UnknownEdge.
PantsDecomposition s_move(const PantsDecomposition& pd, const Label& half_edge);

}  // namespace mfd

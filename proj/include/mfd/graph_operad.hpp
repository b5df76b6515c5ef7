#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mfd {

using Label = std::string;

/// One-vertex graph with an ordered (presentation-only) list of legs.
struct Corolla {
  std::string id;
  std::vector<Label> legs;
};

/// Errors: graph_operad.DuplicateLeg.
Corolla new_corolla(std::vector<Label> legs, std::string id = {});

/// A disjoint union of corollas.
using Forest = std::vector<Corolla>;

/// Finite graph made of half-edges: each half-edge is attached to a vertex,
/// and an involution pairs half-edges into internal edges. Fixed points of
/// the involution are the legs.
class Graph {
 public:
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  std::vector<Label> half_edges() const;
  std::size_t half_edge_count() const noexcept { return attach_.size(); }

  const std::string& vertex_of(const Label& h) const;
  const Label& partner(const Label& h) const;
  bool is_leg(const Label& h) const { return partner(h) == h; }

  std::vector<Label> legs() const;
  /// Internal edges as (smaller, larger) label pairs, sorted.
  std::vector<std::pair<Label, Label>> edges() const;
  std::size_t edge_count() const;
  std::vector<Label> half_edges_at(const std::string& vertex) const;

  /// Vertex sets of the connected components, each sorted, ordered by their
  /// smallest vertex.
  std::vector<std::vector<std::string>> components() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph make_graph(std::vector<std::string> vertices, std::map<Label, std::string> attach,
                          std::map<Label, Label> involution);

  std::vector<std::string> vertices_;
  std::map<Label, std::string> attach_;
  std::map<Label, Label> involution_;
};

/// Errors: graph_operad.InvalidGraph (duplicate vertex, half-edge attached
/// to an unknown vertex, involution not defined on every half-edge or not
/// self-inverse).
Graph make_graph(std::vector<std::string> vertices, std::map<Label, std::string> attach,
                 std::map<Label, Label> involution);

/// Builder in the shape of the text format: vertices with their half-edges,
/// plus the internal edges. Half-edges not named in `edges` are legs.
Graph graph_from_incidence(const std::vector<std::pair<std::string, std::vector<Label>>>& vertices,
                           const std::vector<std::pair<Label, Label>>& edges);

Graph corolla_graph(const Corolla& c);

/// Text form, one record per line:
///   vertex <name> <half-edge>...
///   edge <half-edge> <half-edge>
/// Blank lines and lines starting with '#' are ignored.
Graph parse_graph(std::string_view text);
std::string to_text(const Graph& g);

/// nu: one corolla per vertex; halves of internal edges become legs "h:<label>".
Forest cut_edges(const Graph& g);

/// pi_0: one corolla per connected component carrying that component's legs.
Forest contract_edges(const Graph& g);

/// First Betti number E - V + 1 of each component, in components() order.
std::vector<int> genus(const Graph& g);

/// Representative of the isomorphism class of g. Legs keep their labels;
/// vertices become v0, v1, ... and internal half-edges e<k>.0 / e<k>.1.
/// Chosen as the lexicographically least adjacency code over all vertex
/// orderings compatible with a leg/loop/degree invariant (at most 10 vertices).
Graph canonical_graph(const Graph& g);
std::string canonical_code(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

/// Reference to leg `leg` of corolla number `corolla` in a forest.
struct LegRef {
  std::size_t corolla = 0;
  Label leg;

  friend auto operator<=>(const LegRef&, const LegRef&) = default;
  friend bool operator==(const LegRef&, const LegRef&) = default;
};

/// Morphism source -> target in the graph category: a graph together with
/// identifications of the source corollas with nu(graph) and of the target
/// corollas with pi_0(graph).
class GraphMorphism {
 public:
  const Forest& source() const noexcept { return source_; }
  const Forest& target() const noexcept { return target_; }
  const Graph& graph() const noexcept { return graph_; }

  /// Vertex standing for source corolla i.
  const std::vector<std::string>& source_vertices() const noexcept { return source_vertices_; }
  /// Source leg -> half-edge of graph.
  const std::map<LegRef, Label>& source_ident() const noexcept { return source_ident_; }
  /// A vertex of the component standing for target corolla j.
  const std::vector<std::string>& target_vertices() const noexcept { return target_vertices_; }
  /// Target leg -> leg of graph.
  const std::map<LegRef, Label>& target_ident() const noexcept { return target_ident_; }

 private:
  friend GraphMorphism make_morphism(Forest, Forest, Graph, std::vector<std::string>, std::map<LegRef, Label>,
                                     std::vector<std::string>, std::map<LegRef, Label>);

  Forest source_;
  Forest target_;
  Graph graph_;
  std::vector<std::string> source_vertices_;
  std::map<LegRef, Label> source_ident_;
  std::vector<std::string> target_vertices_;
  std::map<LegRef, Label> target_ident_;
};

/// Errors: graph_operad.InvalidMorphism when either identification is not a
/// bijection compatible with attachment / components.
GraphMorphism make_morphism(Forest source, Forest target, Graph graph, std::vector<std::string> source_vertices,
                            std::map<LegRef, Label> source_ident, std::vector<std::string> target_vertices,
                            std::map<LegRef, Label> target_ident);

/// Graph without internal edges: vertex s<i> per corolla, half-edges "<i>:<leg>".
GraphMorphism identity_morphism(const Forest& forest);

/// Vertex substitution: each vertex of outer.graph() is replaced by the
/// component of inner.graph() with the matching target corolla.
/// Errors: graph_operad.CompositionError when inner.target() and
/// outer.source() differ (corolla count or leg sets).
GraphMorphism compose(const GraphMorphism& outer, const GraphMorphism& inner);

/// Presentation-independent code: every vertex and half-edge is renamed
/// through the source identification.
std::string canonical_code(const GraphMorphism& m);
bool equivalent(const GraphMorphism& a, const GraphMorphism& b);

bool same_legs(const Corolla& a, const Corolla& b);

}  // namespace mfd

#include "mfd/surfaces.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "mfd/error.hpp"

namespace mfd {

namespace {

std::string counts(int g, std::size_t n, std::size_t v, std::size_t e) {
  return "genus " + std::to_string(g) + ", legs " + std::to_string(n) + ", vertices " + std::to_string(v) + ", edges " +
         std::to_string(e);
}

std::string boundary_label(std::size_t i) { return "b" + std::to_string(i); }

}  // namespace

SurfaceSpec make_surface(int genus, std::vector<Element> labels) {
  if (genus < 0) throw validation_error("surfaces.NegativeGenus", "genus must be >= 0, got " + std::to_string(genus));
  return SurfaceSpec{genus, std::move(labels)};
}

PantsDecomposition make_pants_decomposition(Graph dual, std::map<Label, std::size_t> leg_order,
                                            std::optional<std::pair<int, std::size_t>> expected) {
  const std::size_t v = dual.vertices().size();
  const std::size_t e = dual.edge_count();
  const auto legs = dual.legs();
  const int g = static_cast<int>(e) - static_cast<int>(v) + 1;
  if (v == 0)
    throw validation_error("surfaces.CountMismatch", "a pants decomposition needs at least one pair of pants (" +
                                                         counts(g, legs.size(), v, e) + ")");
  for (const auto& vert : dual.vertices()) {
    const auto deg = dual.half_edges_at(vert).size();
    if (deg != 3)
      throw validation_error("surfaces.NotTrivalent",
                             "vertex \"" + vert + "\" has " + std::to_string(deg) + " half-edges, expected 3");
  }
  if (dual.components().size() != 1) throw validation_error("surfaces.Disconnected", "dual graph is not connected");

  std::vector<bool> seen(legs.size(), false);
  if (leg_order.size() != legs.size()) throw validation_error("surfaces.BadLegOrder", "leg order must cover every leg once");
  for (const auto& [leg, i] : leg_order) {
    if (!std::binary_search(legs.begin(), legs.end(), leg))
      throw validation_error("surfaces.BadLegOrder", "\"" + leg + "\" is not a leg of the dual graph");
    if (i >= legs.size() || seen[i])
      throw validation_error("surfaces.BadLegOrder", "boundary indices must be a permutation of 0..n-1");
    seen[i] = true;
  }
  if (expected && (expected->first != g || expected->second != legs.size()))
    throw validation_error("surfaces.CountMismatch", "decomposition has " + counts(g, legs.size(), v, e) +
                                                         "; surface has genus " + std::to_string(expected->first) +
                                                         " and " + std::to_string(expected->second) + " boundary circles");
  PantsDecomposition pd;
  pd.dual_ = std::move(dual);
  pd.leg_order_ = std::move(leg_order);
  pd.genus_ = g;
  return pd;
}

PantsDecomposition make_pants_decomposition(Graph dual) {
  std::map<Label, std::size_t> order;
  const auto legs = dual.legs();
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (std::find(legs.begin(), legs.end(), boundary_label(i)) == legs.end())
      throw validation_error("surfaces.BadLegOrder", "expected legs named b0..b" + std::to_string(legs.size() - 1));
    order[boundary_label(i)] = i;
  }
  return make_pants_decomposition(std::move(dual), std::move(order));
}

std::vector<PantsDecomposition> enumerate_decompositions(int genus, std::size_t boundary_count, std::size_t cap) {
  if (genus < 0) throw validation_error("surfaces.NegativeGenus", "genus must be >= 0");
  const int complexity = 2 * genus - 2 + static_cast<int>(boundary_count);
  if (complexity < 1 || complexity > 4)
    throw capacity_error("surfaces.ComplexityOutOfRange",
                         "enumeration needs 1 <= 2g-2+n <= 4, got " + std::to_string(complexity));
  const auto nv = static_cast<std::size_t>(complexity);
  const std::size_t n = boundary_count;

  std::map<std::string, Graph> classes;
  std::vector<std::size_t> leg_vertex(n, 0);
  std::vector<int> free(nv);
  std::vector<int> loops(nv);
  std::vector<std::vector<int>> adj(nv, std::vector<int>(nv, 0));

  auto emit = [&] {
    std::vector<std::pair<std::string, std::vector<Label>>> vertices(nv);
    std::vector<std::pair<Label, Label>> edges;
    for (std::size_t i = 0; i < nv; ++i) vertices[i].first = "p" + std::to_string(i);
    for (std::size_t l = 0; l < n; ++l) vertices[leg_vertex[l]].second.push_back(boundary_label(l));
    int k = 0;
    auto add = [&](std::size_t a, std::size_t b) {
      Label x = "x" + std::to_string(k) + ".0", y = "x" + std::to_string(k) + ".1";
      ++k;
      vertices[a].second.push_back(x);
      vertices[b].second.push_back(y);
      edges.emplace_back(x, y);
    };
    for (std::size_t i = 0; i < nv; ++i) {
      for (int l = 0; l < loops[i]; ++l) add(i, i);
      for (std::size_t j = i + 1; j < nv; ++j)
        for (int c = 0; c < adj[i][j]; ++c) add(i, j);
    }
    Graph g = graph_from_incidence(vertices, edges);
    if (g.components().size() != 1) return;
    Graph canon = canonical_graph(g);
    classes.emplace(to_text(canon), std::move(canon));
  };

  // Fill vertex v: choose loops, then multiplicities towards later vertices.
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t v, std::size_t w) {
    if (v == nv) {
      emit();
      return;
    }
    if (w == v) {
      for (int l = 0; 2 * l <= free[v]; ++l) {
        loops[v] = l;
        free[v] -= 2 * l;
        fill(v, v + 1);
        free[v] += 2 * l;
      }
      loops[v] = 0;
      return;
    }
    if (w == nv) {
      if (free[v] == 0) fill(v + 1, v + 1);
      return;
    }
    for (int c = 0; c <= std::min(free[v], free[w]); ++c) {
      adj[v][w] = c;
      free[v] -= c;
      free[w] -= c;
      fill(v, w + 1);
      free[v] += c;
      free[w] += c;
    }
    adj[v][w] = 0;
  };

  std::function<void(std::size_t)> place = [&](std::size_t leg) {
    if (leg == n) {
      std::fill(free.begin(), free.end(), 3);
      for (std::size_t l = 0; l < n; ++l) --free[leg_vertex[l]];
      if (std::any_of(free.begin(), free.end(), [](int f) { return f < 0; })) return;
      fill(0, 0);
      return;
    }
    for (std::size_t v = 0; v < nv; ++v) {
      leg_vertex[leg] = v;
      place(leg + 1);
    }
  };
  place(0);

  std::vector<PantsDecomposition> out;
  for (auto& [code, g] : classes) {
    if (out.size() >= cap) break;
    out.push_back(make_pants_decomposition(g));
  }
  return out;
}

std::vector<PantsDecomposition> enumerate_decompositions(const SurfaceSpec& spec, std::size_t cap) {
  return enumerate_decompositions(spec.genus, spec.boundary_count(), cap);
}

namespace {

struct EdgeEnds {
  Label h, p;
  std::string u, v;
};

EdgeEnds locate_edge(const Graph& g, const Label& half_edge) {
  const auto all = g.half_edges();
  if (!std::binary_search(all.begin(), all.end(), half_edge))
    throw validation_error("surfaces.UnknownEdge", "no half-edge \"" + half_edge + "\"");
  const Label& p = g.partner(half_edge);
  if (p == half_edge) throw validation_error("surfaces.MoveNotApplicable", "\"" + half_edge + "\" is a boundary leg");
  return EdgeEnds{half_edge, p, g.vertex_of(half_edge), g.vertex_of(p)};
}

std::size_t loop_count(const Graph& g) {
  std::size_t n = 0;
  for (const auto& [a, b] : g.edges())
    if (g.vertex_of(a) == g.vertex_of(b)) ++n;
  return n;
}

}  // namespace

PantsDecomposition whitehead_move(const PantsDecomposition& pd, const Label& half_edge) {
  const Graph& g = pd.dual();
  const EdgeEnds e = locate_edge(g, half_edge);
  if (e.u == e.v) throw validation_error("surfaces.MoveNotApplicable", "flip needs an edge between distinct pants");

  auto outer = [&](const std::string& vert, const Label& skip) {
    std::vector<Label> hs;
    for (const auto& h : g.half_edges_at(vert))
      if (h != skip) hs.push_back(h);
    return hs;  // already sorted
  };
  const auto ab = outer(e.u, e.h);
  const auto cd = outer(e.v, e.p);

  auto rebuild = [&](const Label& to_v, const Label& to_u) {
    std::map<Label, std::string> attach;
    std::map<Label, Label> inv;
    for (const auto& h : g.half_edges()) {
      attach[h] = g.vertex_of(h);
      inv[h] = g.partner(h);
    }
    attach[to_v] = e.v;
    attach[to_u] = e.u;
    return make_graph(g.vertices(), std::move(attach), std::move(inv));
  };
  // {a, c | b, d}: b and c trade places; {a, d | b, c}: b and d trade places.
  Graph first = rebuild(ab[1], cd[0]);
  Graph second = rebuild(ab[1], cd[1]);
  Graph chosen = loop_count(second) < loop_count(first) ? std::move(second) : std::move(first);

  PantsDecomposition out =
      make_pants_decomposition(std::move(chosen), pd.leg_order(), std::make_pair(pd.genus(), pd.boundary_count()));
  out.log_ = pd.log_;
  out.log_.push_back("F(" + std::min(e.h, e.p) + ")");
  return out;
}

PantsDecomposition s_move(const PantsDecomposition& pd, const Label& half_edge) {
  const EdgeEnds e = locate_edge(pd.dual(), half_edge);
  if (e.u != e.v) throw validation_error("surfaces.MoveNotApplicable", "S-move needs a loop edge");
  PantsDecomposition out = pd;
  out.log_.push_back("S(" + std::min(e.h, e.p) + ")");
  return out;
}

}  // namespace mfd

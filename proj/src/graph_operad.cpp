#include "mfd/graph_operad.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "mfd/error.hpp"

namespace mfd {

namespace {

Error invalid_graph(const std::string& message) { return validation_error("graph_operad.InvalidGraph", message); }
Error invalid_morphism(const std::string& message) { return validation_error("graph_operad.InvalidMorphism", message); }

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<Label> sorted(std::vector<Label> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Corolla new_corolla(std::vector<Label> legs, std::string id) {
  std::set<Label> seen;
  for (const auto& l : legs)
    if (!seen.insert(l).second) throw validation_error("graph_operad.DuplicateLeg", "leg \"" + l + "\" appears twice");
  return Corolla{std::move(id), std::move(legs)};
}

bool same_legs(const Corolla& a, const Corolla& b) { return sorted(a.legs) == sorted(b.legs); }

Graph make_graph(std::vector<std::string> vertices, std::map<Label, std::string> attach,
                 std::map<Label, Label> involution) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw invalid_graph("duplicate vertex name");
  for (const auto& [h, v] : attach)
    if (!std::binary_search(vertices.begin(), vertices.end(), v))
      throw invalid_graph("half-edge \"" + h + "\" attached to unknown vertex \"" + v + "\"");
  if (involution.size() != attach.size()) throw invalid_graph("involution must be defined on exactly the half-edges");
  for (const auto& [h, p] : involution) {
    if (!attach.count(h)) throw invalid_graph("involution names unattached half-edge \"" + h + "\"");
    auto it = involution.find(p);
    if (it == involution.end() || it->second != h)
      throw invalid_graph("involution is not self-inverse at \"" + h + "\"");
  }
  Graph g;
  g.vertices_ = std::move(vertices);
  g.attach_ = std::move(attach);
  g.involution_ = std::move(involution);
  return g;
}

Graph graph_from_incidence(const std::vector<std::pair<std::string, std::vector<Label>>>& vertices,
                           const std::vector<std::pair<Label, Label>>& edges) {
  std::vector<std::string> names;
  std::map<Label, std::string> attach;
  std::map<Label, Label> inv;
  for (const auto& [v, hs] : vertices) {
    names.push_back(v);
    for (const auto& h : hs) {
      if (!attach.emplace(h, v).second) throw invalid_graph("half-edge \"" + h + "\" listed twice");
      inv[h] = h;
    }
  }
  for (const auto& [a, b] : edges) {
    if (a == b) throw invalid_graph("edge joins half-edge \"" + a + "\" to itself");
    if (!attach.count(a) || !attach.count(b)) throw invalid_graph("edge " + a + " " + b + " names an undeclared half-edge");
    if (inv[a] != a || inv[b] != b) throw invalid_graph("half-edge used by two edges in edge " + a + " " + b);
    inv[a] = b;
    inv[b] = a;
  }
  return make_graph(std::move(names), std::move(attach), std::move(inv));
}

Graph corolla_graph(const Corolla& c) {
  const std::string v = c.id.empty() ? "v" : c.id;
  return graph_from_incidence({{v, c.legs}}, {});
}

std::vector<Label> Graph::half_edges() const {
  std::vector<Label> out;
  for (const auto& [h, v] : attach_) out.push_back(h);
  return out;
}

const std::string& Graph::vertex_of(const Label& h) const {
  auto it = attach_.find(h);
  if (it == attach_.end()) throw invalid_graph("unknown half-edge \"" + h + "\"");
  return it->second;
}

const Label& Graph::partner(const Label& h) const {
  auto it = involution_.find(h);
  if (it == involution_.end()) throw invalid_graph("unknown half-edge \"" + h + "\"");
  return it->second;
}

std::vector<Label> Graph::legs() const {
  std::vector<Label> out;
  for (const auto& [h, p] : involution_)
    if (h == p) out.push_back(h);
  return out;
}

std::vector<std::pair<Label, Label>> Graph::edges() const {
  std::vector<std::pair<Label, Label>> out;
  for (const auto& [h, p] : involution_)
    if (h < p) out.emplace_back(h, p);
  return out;
}

std::size_t Graph::edge_count() const { return (attach_.size() - legs().size()) / 2; }

std::vector<Label> Graph::half_edges_at(const std::string& vertex) const {
  std::vector<Label> out;
  for (const auto& [h, v] : attach_)
    if (v == vertex) out.push_back(h);
  return out;
}

std::vector<std::vector<std::string>> Graph::components() const {
  auto index = [&](const std::string& v) {
    return static_cast<std::size_t>(std::lower_bound(vertices_.begin(), vertices_.end(), v) - vertices_.begin());
  };
  DisjointSets sets(vertices_.size());
  for (const auto& [a, b] : edges()) sets.unite(index(vertex_of(a)), index(vertex_of(b)));
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < vertices_.size(); ++i) groups[sets.find(i)].push_back(vertices_[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, vs] : groups) out.push_back(std::move(vs));
  return out;
}

Graph parse_graph(std::string_view text) {
  std::vector<std::pair<std::string, std::vector<Label>>> vertices;
  std::vector<std::pair<Label, Label>> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind.front() == '#') continue;
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (kind == "vertex") {
      if (tokens.empty()) throw invalid_graph("line " + std::to_string(lineno) + ": vertex needs a name");
      vertices.emplace_back(tokens.front(), std::vector<Label>(tokens.begin() + 1, tokens.end()));
    } else if (kind == "edge") {
      if (tokens.size() != 2) throw invalid_graph("line " + std::to_string(lineno) + ": edge needs two half-edges");
      edges.emplace_back(tokens[0], tokens[1]);
    } else {
      throw invalid_graph("line " + std::to_string(lineno) + ": unknown record \"" + kind + "\"");
    }
  }
  return graph_from_incidence(vertices, edges);
}

std::string to_text(const Graph& g) {
  std::ostringstream os;
  for (const auto& v : g.vertices()) {
    os << "vertex " << v;
    for (const auto& h : g.half_edges_at(v)) os << ' ' << h;
    os << '\n';
  }
  for (const auto& [a, b] : g.edges()) os << "edge " << a << ' ' << b << '\n';
  return os.str();
}

Forest cut_edges(const Graph& g) {
  Forest out;
  for (const auto& v : g.vertices()) {
    std::vector<Label> legs;
    for (const auto& h : g.half_edges_at(v)) legs.push_back(g.is_leg(h) ? h : "h:" + h);
    out.push_back(Corolla{v, std::move(legs)});
  }
  return out;
}

Forest contract_edges(const Graph& g) {
  Forest out;
  for (const auto& comp : g.components()) {
    std::vector<Label> legs;
    for (const auto& v : comp)
      for (const auto& h : g.half_edges_at(v))
        if (g.is_leg(h)) legs.push_back(h);
    out.push_back(Corolla{comp.front(), sorted(std::move(legs))});
  }
  return out;
}

std::vector<int> genus(const Graph& g) {
  std::map<std::string, std::size_t> comp_of;
  const auto comps = g.components();
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (const auto& v : comps[c]) comp_of[v] = c;
  std::vector<int> edges(comps.size(), 0);
  for (const auto& [a, b] : g.edges()) ++edges[comp_of[g.vertex_of(a)]];
  std::vector<int> out;
  for (std::size_t c = 0; c < comps.size(); ++c) out.push_back(edges[c] - static_cast<int>(comps[c].size()) + 1);
  return out;
}

Graph canonical_graph(const Graph& g) {
  const auto& verts = g.vertices();
  const std::size_t n = verts.size();
  if (n > 10) throw capacity_error("graph_operad.TooLarge", "canonical form supports at most 10 vertices");

  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[verts[i]] = i;
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  std::vector<int> loops(n, 0);
  std::vector<std::vector<Label>> legs(n);
  for (const auto& h : g.half_edges()) {
    const std::size_t v = idx[g.vertex_of(h)];
    if (g.is_leg(h)) legs[v].push_back(h);
  }
  for (const auto& [a, b] : g.edges()) {
    const std::size_t u = idx[g.vertex_of(a)], w = idx[g.vertex_of(b)];
    if (u == w) {
      ++loops[u];
    } else {
      ++adj[u][w];
      ++adj[w][u];
    }
  }

  using Invariant = std::tuple<std::size_t, int, std::vector<Label>>;
  auto invariant = [&](std::size_t v) {
    return Invariant{g.half_edges_at(verts[v]).size(), loops[v], legs[v]};
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return invariant(a) < invariant(b); });

  // Class boundaries: only vertices with equal invariants may be permuted.
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && invariant(order[j]) == invariant(order[i])) ++j;
    classes.emplace_back(i, j);
    i = j;
  }

  auto code_of = [&](const std::vector<std::size_t>& o) {
    std::vector<int> code;
    code.reserve(n * n / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) code.push_back(adj[o[i]][o[j]]);
    return code;
  };

  std::vector<std::size_t> best = order;
  std::vector<int> best_code = code_of(order);
  std::vector<std::size_t> cur = order;
  for (;;) {
    // Odometer over per-class permutations.
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      auto [lo, hi] = classes[c];
      if (std::next_permutation(cur.begin() + static_cast<std::ptrdiff_t>(lo), cur.begin() + static_cast<std::ptrdiff_t>(hi)))
        break;
    }
    if (c == classes.size()) break;
    auto code = code_of(cur);
    if (code < best_code) {
      best_code = std::move(code);
      best = cur;
    }
  }

  std::set<Label> leg_set;
  for (const auto& l : g.legs()) leg_set.insert(l);
  std::string prefix = "e";
  auto collides = [&](const std::string& p) {
    return std::any_of(leg_set.begin(), leg_set.end(), [&](const Label& l) { return l.rfind(p, 0) == 0; });
  };
  while (collides(prefix)) prefix = "_" + prefix;

  std::vector<std::pair<std::string, std::vector<Label>>> vertices(n);
  std::vector<std::pair<Label, Label>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    vertices[i].first = "v" + std::to_string(i);
    vertices[i].second = legs[best[i]];
  }
  int k = 0;
  auto add_edge = [&](std::size_t i, std::size_t j) {
    Label a = prefix + std::to_string(k) + ".0", b = prefix + std::to_string(k) + ".1";
    ++k;
    vertices[i].second.push_back(a);
    vertices[j].second.push_back(b);
    edges.emplace_back(a, b);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (int l = 0; l < loops[best[i]]; ++l) add_edge(i, i);
    for (std::size_t j = i + 1; j < n; ++j)
      for (int e = 0; e < adj[best[i]][best[j]]; ++e) add_edge(i, j);
  }
  return graph_from_incidence(vertices, edges);
}

std::string canonical_code(const Graph& g) { return to_text(canonical_graph(g)); }

bool isomorphic(const Graph& a, const Graph& b) { return canonical_code(a) == canonical_code(b); }

GraphMorphism make_morphism(Forest source, Forest target, Graph graph, std::vector<std::string> source_vertices,
                            std::map<LegRef, Label> source_ident, std::vector<std::string> target_vertices,
                            std::map<LegRef, Label> target_ident) {
  for (const auto& c : source) new_corolla(c.legs);
  for (const auto& c : target) new_corolla(c.legs);

  // Source corollas <-> vertices, legs <-> half-edges at that vertex.
  if (source_vertices.size() != source.size()) throw invalid_morphism("need one vertex per source corolla");
  if (sorted(source_vertices) != graph.vertices())
    throw invalid_morphism("source corollas must correspond bijectively to the vertices");
  std::size_t expected = 0;
  std::set<Label> hit;
  for (std::size_t i = 0; i < source.size(); ++i) {
    for (const auto& leg : source[i].legs) {
      auto it = source_ident.find(LegRef{i, leg});
      if (it == source_ident.end())
        throw invalid_morphism("source leg " + std::to_string(i) + ":" + leg + " is not identified");
      if (graph.vertex_of(it->second) != source_vertices[i])
        throw invalid_morphism("source leg " + std::to_string(i) + ":" + leg + " maps off its vertex");
      if (!hit.insert(it->second).second) throw invalid_morphism("half-edge \"" + it->second + "\" hit twice");
      ++expected;
    }
    if (graph.half_edges_at(source_vertices[i]).size() != source[i].legs.size())
      throw invalid_morphism("vertex \"" + source_vertices[i] + "\" has a different arity than its source corolla");
  }
  if (source_ident.size() != expected) throw invalid_morphism("source identification has extra entries");

  // Target corollas <-> components, legs <-> legs of that component.
  const auto comps = graph.components();
  std::map<std::string, std::size_t> comp_of;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (const auto& v : comps[c]) comp_of[v] = c;
  if (target_vertices.size() != target.size() || target.size() != comps.size())
    throw invalid_morphism("need one target corolla per connected component");
  std::set<std::size_t> used;
  for (const auto& v : target_vertices) {
    if (!comp_of.count(v)) throw invalid_morphism("target vertex \"" + v + "\" is not in the graph");
    if (!used.insert(comp_of[v]).second) throw invalid_morphism("two target corollas share a component");
  }
  expected = 0;
  hit.clear();
  for (std::size_t j = 0; j < target.size(); ++j) {
    for (const auto& leg : target[j].legs) {
      auto it = target_ident.find(LegRef{j, leg});
      if (it == target_ident.end())
        throw invalid_morphism("target leg " + std::to_string(j) + ":" + leg + " is not identified");
      if (!graph.is_leg(it->second)) throw invalid_morphism("target leg maps to internal half-edge \"" + it->second + "\"");
      if (comp_of[graph.vertex_of(it->second)] != comp_of[target_vertices[j]])
        throw invalid_morphism("target leg " + std::to_string(j) + ":" + leg + " maps outside its component");
      if (!hit.insert(it->second).second) throw invalid_morphism("leg \"" + it->second + "\" hit twice");
      ++expected;
    }
  }
  if (target_ident.size() != expected || expected != graph.legs().size())
    throw invalid_morphism("target identification is not a bijection onto the legs");

  GraphMorphism m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.graph_ = std::move(graph);
  m.source_vertices_ = std::move(source_vertices);
  m.source_ident_ = std::move(source_ident);
  m.target_vertices_ = std::move(target_vertices);
  m.target_ident_ = std::move(target_ident);
  return m;
}

GraphMorphism identity_morphism(const Forest& forest) {
  std::vector<std::pair<std::string, std::vector<Label>>> vertices;
  std::vector<std::string> names;
  std::map<LegRef, Label> ident;
  for (std::size_t i = 0; i < forest.size(); ++i) {
    const std::string v = "s" + std::to_string(i);
    std::vector<Label> hs;
    for (const auto& leg : forest[i].legs) {
      Label h = std::to_string(i) + ":" + leg;
      hs.push_back(h);
      ident[LegRef{i, leg}] = h;
    }
    vertices.emplace_back(v, hs);
    names.push_back(v);
  }
  Graph g = graph_from_incidence(vertices, {});
  return make_morphism(forest, forest, std::move(g), names, ident, names, ident);
}

GraphMorphism compose(const GraphMorphism& outer, const GraphMorphism& inner) {
  const Forest& middle = inner.target();
  if (middle.size() != outer.source().size())
    throw validation_error("graph_operad.CompositionError", "inner target has " + std::to_string(middle.size()) +
                                                                " corollas, outer source has " +
                                                                std::to_string(outer.source().size()));
  for (std::size_t j = 0; j < middle.size(); ++j)
    if (!same_legs(middle[j], outer.source()[j]))
      throw validation_error("graph_operad.CompositionError",
                             "corolla " + std::to_string(j) + " has different legs on the two sides");

  const Graph& g1 = inner.graph();
  const Graph& g2 = outer.graph();

  // Each leg of g1 is glued to the half-edge of g2 with the same middle leg.
  std::map<Label, Label> leg_to_outer;
  std::map<Label, Label> outer_to_leg;
  for (const auto& [ref, leg1] : inner.target_ident()) {
    const Label& h2 = outer.source_ident().at(ref);
    leg_to_outer[leg1] = h2;
    outer_to_leg[h2] = leg1;
  }

  std::set<Label> taken;
  for (const auto& h : g2.half_edges()) taken.insert(h);
  std::map<Label, Label> rename;
  for (const auto& h : g1.half_edges()) {
    if (g1.is_leg(h)) continue;
    Label name = h;
    while (taken.count(name)) name = "i." + name;
    taken.insert(name);
    rename[h] = name;
  }

  std::map<Label, std::string> attach;
  std::map<Label, Label> inv;
  for (const auto& [h1, name] : rename) {
    attach[name] = g1.vertex_of(h1);
    inv[name] = rename.at(g1.partner(h1));
  }
  for (const auto& h2 : g2.half_edges()) {
    attach[h2] = g1.vertex_of(outer_to_leg.at(h2));
    inv[h2] = g2.partner(h2);
  }
  Graph g = make_graph(g1.vertices(), std::move(attach), std::move(inv));

  std::map<LegRef, Label> source_ident;
  for (const auto& [ref, h1] : inner.source_ident())
    source_ident[ref] = g1.is_leg(h1) ? leg_to_outer.at(h1) : rename.at(h1);

  std::vector<std::string> target_vertices;
  const auto& outer_sv = outer.source_vertices();
  for (const auto& v2 : outer.target_vertices()) {
    auto s = static_cast<std::size_t>(std::find(outer_sv.begin(), outer_sv.end(), v2) - outer_sv.begin());
    target_vertices.push_back(inner.target_vertices().at(s));
  }

  return make_morphism(inner.source(), outer.target(), std::move(g), inner.source_vertices(), std::move(source_ident),
                       std::move(target_vertices), outer.target_ident());
}

std::string canonical_code(const GraphMorphism& m) {
  std::map<std::string, std::size_t> vertex_index;
  for (std::size_t i = 0; i < m.source_vertices().size(); ++i) vertex_index[m.source_vertices()[i]] = i;
  std::map<Label, std::string> name;
  for (const auto& [ref, h] : m.source_ident()) name[h] = std::to_string(ref.corolla) + ":" + ref.leg;

  std::ostringstream os;
  for (std::size_t i = 0; i < m.source().size(); ++i) {
    os << "source " << i;
    for (const auto& l : sorted(m.source()[i].legs)) os << ' ' << l;
    os << '\n';
  }
  for (std::size_t j = 0; j < m.target().size(); ++j) {
    os << "target " << j;
    for (const auto& l : sorted(m.target()[j].legs)) os << ' ' << l;
    os << '\n';
  }
  std::vector<std::string> edges;
  for (const auto& [a, b] : m.graph().edges()) edges.push_back("edge " + std::min(name[a], name[b]) + ' ' + std::max(name[a], name[b]));
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) os << e << '\n';

  const auto comps = m.graph().components();
  for (std::size_t j = 0; j < m.target_vertices().size(); ++j) {
    const auto& v = m.target_vertices()[j];
    for (const auto& comp : comps) {
      if (!std::binary_search(comp.begin(), comp.end(), v)) continue;
      std::vector<std::size_t> members;
      for (const auto& w : comp) members.push_back(vertex_index[w]);
      std::sort(members.begin(), members.end());
      os << "component " << j;
      for (auto s : members) os << ' ' << s;
      os << '\n';
    }
  }
  for (const auto& [ref, h] : m.target_ident()) os << "leg " << ref.corolla << ':' << ref.leg << ' ' << name[h] << '\n';
  return os.str();
}

bool equivalent(const GraphMorphism& a, const GraphMorphism& b) { return canonical_code(a) == canonical_code(b); }

}  // namespace mfd

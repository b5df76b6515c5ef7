#include "mfd/blocks.hpp"

#include <cmath>
#include <numbers>

#include "mfd/error.hpp"
#include "mfd/mcg_torus.hpp"

namespace mfd {

namespace {

constexpr std::uint64_t kMaxLabellings = 100'000'000;

void require_labels(const FinAbGroup& g, const std::vector<Element>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!g.contains(labels[i]))
      throw validation_error("blocks.LabelOutsideGroup",
                             "boundary label #" + std::to_string(i) + " " + format_element(labels[i]) + " is not in the group");
}

std::uint64_t checked_power(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && out > UINT64_MAX / base)
      throw capacity_error("blocks.Overflow", "block dimension exceeds 64 bits");
    out *= base;
  }
  return out;
}

Complex int_power(Complex z, int exponent) {
  Complex out = 1.0;
  if (exponent < 0) {
    z = 1.0 / z;
    exponent = -exponent;
  }
  for (int i = 0; i < exponent; ++i) out *= z;
  return out;
}

}  // namespace

ModularData make_modular_data(std::vector<std::string> labels, ComplexMatrix S, ComplexMatrix T,
                              std::vector<std::size_t> conjugation, double tol) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  auto bad = [](const std::string& m) { return validation_error("blocks.InvalidModularData", m); };
  if (n == 0) throw bad("modular data needs at least the unit label");
  if (S.rows() != n || S.cols() != n || T.rows() != n || T.cols() != n) throw bad("S and T must be square of label size");
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > tol) throw bad("S is not symmetric");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && std::abs(T(i, j)) > tol) throw bad("T is not diagonal");
      if (i == j && std::abs(std::abs(T(i, i)) - 1.0) > tol) throw bad("T is not unitary");
    }
  if (conjugation.size() != labels.size()) throw bad("conjugation must list one image per label");
  std::vector<bool> seen(labels.size(), false);
  for (auto c : conjugation) {
    if (c >= labels.size() || seen[c]) throw bad("conjugation is not a permutation");
    seen[c] = true;
  }
  return ModularData{std::move(labels), std::move(S), std::move(T), std::move(conjugation), std::nullopt};
}

BlockDimension block_dim_direct(const PointedGVCategory& category, const SurfaceSpec& surface) {
  const FinAbGroup& g = category.group();
  require_labels(g, surface.labels);
  Element total = g.scale(surface.genus - 1, category.g0());
  for (const auto& x : surface.labels) total = g.add(total, x);
  BlockDimension out;
  out.condition_met = total.isZero();
  out.dim = out.condition_met ? checked_power(g.order(), surface.genus) : 0;
  return out;
}

int pants_multiplicity(const PointedGVCategory& category, const Element& x, const Element& y, const Element& z) {
  const FinAbGroup& g = category.group();
  return g.add(g.add(x, y), z) == category.g0() ? 1 : 0;
}

std::uint64_t block_dim_glued(const PointedGVCategory& category, const PantsDecomposition& pd,
                              const std::vector<Element>& labels) {
  const FinAbGroup& group = category.group();
  if (labels.size() != pd.boundary_count())
    throw validation_error("blocks.DecompositionMismatch", "decomposition has " + std::to_string(pd.boundary_count()) +
                                                               " legs but " + std::to_string(labels.size()) +
                                                               " labels were given");
  require_labels(group, labels);

  const Graph& dual = pd.dual();
  const auto edges = dual.edges();
  const std::size_t ne = edges.size();
  const std::uint64_t order = group.order();
  std::uint64_t labellings = 1;
  for (std::size_t i = 0; i < ne; ++i) {
    if (labellings > kMaxLabellings / order)
      throw capacity_error("blocks.TooManyLabellings", "gluing sum needs more than 10^8 edge labellings");
    labellings *= order;
  }

  const Eigen::Index k = group.rank();
  const auto& n = group.invariant_factors();
  const auto elements = group.elements();
  std::vector<std::size_t> dual_index(order);
  for (std::uint64_t e = 0; e < order; ++e) dual_index[e] = group.index_of(category.dual(elements[e]));

  // Per vertex: the fixed sum of its boundary labels and its edge sides.
  struct Side {
    std::size_t edge;
    bool dual;
  };
  struct Pants {
    IntVector fixed;
    std::vector<Side> sides;
  };
  std::map<Label, Side> side_of;
  for (std::size_t i = 0; i < ne; ++i) {
    side_of[edges[i].first] = Side{i, false};
    side_of[edges[i].second] = Side{i, true};
  }
  std::vector<Pants> pants;
  for (const auto& v : dual.vertices()) {
    Pants p{IntVector::Zero(k), {}};
    for (const auto& h : dual.half_edges_at(v)) {
      if (dual.is_leg(h)) {
        p.fixed += labels[pd.leg_order().at(h)];
      } else {
        p.sides.push_back(side_of.at(h));
      }
    }
    pants.push_back(std::move(p));
  }

  std::vector<std::size_t> assign(ne, 0);
  std::vector<std::int64_t> acc(static_cast<std::size_t>(k));
  std::uint64_t total = 0;
  for (;;) {
    bool ok = true;
    for (const Pants& p : pants) {
      for (Eigen::Index c = 0; c < k; ++c) acc[c] = p.fixed(c);
      for (const Side& s : p.sides) {
        const Element& x = elements[s.dual ? dual_index[assign[s.edge]] : assign[s.edge]];
        for (Eigen::Index c = 0; c < k; ++c) acc[c] += x(c);
      }
      for (Eigen::Index c = 0; c < k && ok; ++c) ok = acc[c] % n[c] == category.g0()(c);
      if (!ok) break;
    }
    if (ok) ++total;

    std::size_t i = 0;
    for (; i < ne; ++i) {
      if (++assign[i] < order) break;
      assign[i] = 0;
    }
    if (i == ne) break;
  }
  return total;
}

VerlindeReport verlinde_dim(const ModularData& md, int genus, const std::vector<std::size_t>& boundary) {
  for (auto b : boundary)
    if (b >= md.size()) throw validation_error("blocks.BadLabel", "label index " + std::to_string(b) + " out of range");
  const int exponent = 2 - 2 * genus - static_cast<int>(boundary.size());
  Complex sum = 0.0;
  for (Eigen::Index j = 0; j < md.S.cols(); ++j) {
    const Complex s0 = md.S(0, j);
    if (std::abs(s0) < 1e-12) throw validation_error("blocks.DegenerateData", "S_0j vanishes at j = " + std::to_string(j));
    Complex term = int_power(s0, exponent);
    for (auto b : boundary) term *= md.S(static_cast<Eigen::Index>(b), j);
    sum += term;
  }
  VerlindeReport r;
  r.value = sum;
  r.nearest = std::llround(sum.real());
  r.residual = std::abs(sum - Complex(static_cast<double>(r.nearest), 0.0));
  return r;
}

namespace {

ModularData fibonacci() {
  const double phi = std::numbers::phi;
  const double d = std::sqrt(2.0 + phi);
  ComplexMatrix S(2, 2);
  S << 1.0, phi, phi, -1.0;
  S /= d;
  ComplexMatrix T = ComplexMatrix::Zero(2, 2);
  T(0, 0) = 1.0;
  T(1, 1) = std::polar(1.0, 4.0 * std::numbers::pi / 5.0);
  return make_modular_data({"1", "tau"}, S, T, {0, 1});
}

ModularData ising() {
  const double r2 = std::numbers::sqrt2;
  ComplexMatrix S(3, 3);
  S << 1.0, r2, 1.0, r2, 0.0, -r2, 1.0, -r2, 1.0;
  S /= 2.0;
  ComplexMatrix T = ComplexMatrix::Zero(3, 3);
  T(0, 0) = 1.0;
  T(1, 1) = std::polar(1.0, std::numbers::pi / 8.0);
  T(2, 2) = -1.0;
  return make_modular_data({"1", "sigma", "psi"}, S, T, {0, 1, 2});
}

}  // namespace

ModularData builtin_modular_data(std::string_view name, const PointedGVCategory* category) {
  if (name == "pointed") {
    if (category == nullptr)
      throw validation_error("blocks.UnknownModularData", "\"pointed\" modular data needs a pointed category");
    return st_matrices(*category);
  }
  ModularData md;
  if (name == "fibonacci") {
    md = fibonacci();
  } else if (name == "ising") {
    md = ising();
  } else {
    throw validation_error("blocks.UnknownModularData", "unknown modular data \"" + std::string(name) +
                                                            "\" (expected pointed, fibonacci or ising)");
  }
  if (!check_relations(md, 1e-9).passed())
    throw std::logic_error("embedded modular data \"" + std::string(name) + "\" fails its SL(2,Z) relations");
  return md;
}

}  // namespace mfd

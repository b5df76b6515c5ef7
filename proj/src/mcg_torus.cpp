#include "mfd/mcg_torus.hpp"

#include <cmath>
#include <numbers>

#include "mfd/error.hpp"

namespace mfd {

namespace {

void require_modular(const PointedGVCategory& c) {
  if (!c.h0().isZero())
    throw unsupported_error("mcg_torus.Unsupported", "torus data is only defined here for h0 = 0; h0 = " +
                                                         format_element(c.h0()) + " supports block dimensions only");
  if (c.group().order() > kTorusLimit)
    throw capacity_error("mcg_torus.GroupTooLarge", "torus data needs |G| <= " + std::to_string(kTorusLimit));
  if (!radical(c.braiding()).is_trivial())
    throw validation_error("mcg_torus.Degenerate", "braiding is degenerate (non-trivial radical)");
}

double sup_norm(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

ModularData st_matrices(const PointedGVCategory& category) {
  require_modular(category);
  const FinAbGroup& g = category.group();
  const auto elements = g.elements();
  const auto n = static_cast<Eigen::Index>(elements.size());
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const double tau = 2.0 * std::numbers::pi;

  ComplexMatrix S(n, n);
  ComplexMatrix T = ComplexMatrix::Zero(n, n);
  std::vector<std::string> labels;
  std::vector<std::size_t> conjugation;
  for (Eigen::Index x = 0; x < n; ++x) {
    labels.push_back(format_element(elements[x]));
    conjugation.push_back(g.index_of(g.neg(elements[x])));
    T(x, x) = std::polar(1.0, tau * category.qform()(elements[x]).to_double());
    for (Eigen::Index y = 0; y < n; ++y)
      S(x, y) = norm * std::polar(1.0, -tau * category.braiding()(elements[x], elements[y]).to_double());
  }
  ModularData md = make_modular_data(std::move(labels), std::move(S), std::move(T), std::move(conjugation));
  md.group = g;
  return md;
}

RelationReport check_relations(const ModularData& md, double tol) {
  const auto n = static_cast<Eigen::Index>(md.size());
  ComplexMatrix C = ComplexMatrix::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) C(static_cast<Eigen::Index>(md.conjugation[x]), x) = 1.0;
  const ComplexMatrix ST = md.S * md.T;
  const ComplexMatrix st3 = ST * ST * ST;
  const ComplexMatrix s2 = md.S * md.S;

  RelationReport r;
  r.tolerance = tol;
  r.lambda = std::abs(s2(0, 0)) > 1e-12 ? st3(0, 0) / s2(0, 0) : Complex(0.0, 0.0);
  r.st_cubed = sup_norm(st3 - r.lambda * s2);
  r.s_squared = sup_norm(s2 - C);
  r.unitarity = sup_norm(md.S * md.S.adjoint() - ComplexMatrix::Identity(n, n));
  return r;
}

double central_charge_mod8(Complex phase) {
  double c = 8.0 * std::arg(phase) / (2.0 * std::numbers::pi);
  c = std::fmod(c, 8.0);
  if (c < 0) c += 8.0;
  // Snap values that are 8 - epsilon back to 0.
  if (8.0 - c < 1e-9) c = 0.0;
  return c;
}

AnomalyReport anomaly(const PointedGVCategory& category) {
  require_modular(category);
  AnomalyReport r;
  r.gamma = gauss_sum(category.qform());
  if (std::abs(std::abs(r.gamma) - 1.0) > 1e-9)
    throw std::logic_error("Gauss sum of a non-degenerate form has modulus " + std::to_string(std::abs(r.gamma)));
  r.central_charge_mod8 = central_charge_mod8(r.gamma);
  return r;
}

FusionReport fusion_from_s(const ModularData& md) {
  const auto n = static_cast<Eigen::Index>(md.size());
  for (Eigen::Index w = 0; w < n; ++w)
    if (std::abs(md.S(0, w)) < 1e-12)
      throw validation_error("blocks.DegenerateData", "S_0w vanishes at w = " + std::to_string(w));

  FusionReport r;
  r.rank = md.size();
  r.coefficients.resize(r.rank * r.rank * r.rank);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      for (Eigen::Index z = 0; z < n; ++z) {
        Complex sum = 0.0;
        for (Eigen::Index w = 0; w < n; ++w) sum += md.S(x, w) * md.S(y, w) * std::conj(md.S(z, w)) / md.S(0, w);
        const std::int64_t rounded = std::llround(sum.real());
        r.max_residual = std::max(r.max_residual, std::abs(sum - Complex(static_cast<double>(rounded), 0.0)));
        r.coefficients[(x * n + y) * n + z] = rounded;
      }
  if (md.group) {
    const FinAbGroup& g = *md.group;
    bool ok = true;
    for (std::uint64_t x = 0; x < g.order() && ok; ++x)
      for (std::uint64_t y = 0; y < g.order() && ok; ++y) {
        const std::uint64_t sum = g.index_of(g.add(g.element_at(x), g.element_at(y)));
        for (std::uint64_t z = 0; z < g.order() && ok; ++z) ok = r.at(x, y, z) == (z == sum ? 1 : 0);
      }
    r.matches_group_law = ok;
  }
  return r;
}

ConnectednessVerdict connectedness_verdict(const PointedGVCategory& category) {
  if (radical(category.braiding()).is_trivial())
    return {TriState::True, "cofactorizable (non-degenerate b)"};
  return {TriState::Undetermined,
          "braiding is degenerate, so the cofactorizability criterion does not apply; the genus-one handlebody "
          "comparison that would settle connectedness is not computable here"};
}

}  // namespace mfd

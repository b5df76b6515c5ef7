#include "mfd/finite_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mfd/error.hpp"

namespace mfd {

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 62;

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

void require_member(const FinAbGroup& g, const Element& x, const char* what) {
  if (x.size() != g.rank())
    throw validation_error("finite_forms.ShapeMismatch",
                           std::string(what) + " has " + std::to_string(x.size()) + " coordinates, group has rank " +
                               std::to_string(g.rank()));
}

Rational quadratic_value(const RationalMatrix& A, const IntVector& x) {
  Rational sum;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) == 0) continue;
    Rational row;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (x(j) != 0) row += A(i, j) * Rational(x(j));
    sum += Rational(x(i)) * row;
  }
  return sum;
}

}  // namespace

FinAbGroup make_group(std::vector<std::int64_t> invariant_factors) {
  FinAbGroup g;
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    const std::int64_t n = invariant_factors[i];
    if (n <= 0)
      throw validation_error("finite_forms.InvalidFactor",
                             "invariant factor #" + std::to_string(i) + " is " + std::to_string(n) + " (must be >= 1)");
    if (order > kMaxOrder / static_cast<std::uint64_t>(n))
      throw capacity_error("finite_forms.GroupTooLarge", "group order exceeds 2^62");
    order *= static_cast<std::uint64_t>(n);
  }
  g.factors_ = std::move(invariant_factors);
  g.order_ = order;
  return g;
}

Element FinAbGroup::generator(Eigen::Index i) const {
  Element e = zero();
  e(i) = 1;
  return reduce(e);
}

Element FinAbGroup::reduce(const IntVector& v) const {
  Element out(rank());
  for (Eigen::Index i = 0; i < rank(); ++i) out(i) = mod(v(i), factors_[i]);
  return out;
}

bool FinAbGroup::contains(const Element& x) const {
  if (x.size() != rank()) return false;
  for (Eigen::Index i = 0; i < rank(); ++i)
    if (x(i) < 0 || x(i) >= factors_[i]) return false;
  return true;
}

std::uint64_t FinAbGroup::index_of(const Element& x) const {
  std::uint64_t idx = 0;
  for (Eigen::Index i = 0; i < rank(); ++i)
    idx = idx * static_cast<std::uint64_t>(factors_[i]) + static_cast<std::uint64_t>(mod(x(i), factors_[i]));
  return idx;
}

Element FinAbGroup::element_at(std::uint64_t index) const {
  Element x(rank());
  for (Eigen::Index i = rank() - 1; i >= 0; --i) {
    const auto n = static_cast<std::uint64_t>(factors_[i]);
    x(i) = static_cast<std::int64_t>(index % n);
    index /= n;
  }
  return x;
}

std::vector<Element> FinAbGroup::elements(std::uint64_t limit) const {
  if (order_ > limit)
    throw capacity_error("finite_forms.GroupTooLarge",
                         "group of order " + std::to_string(order_) + " exceeds enumeration limit " + std::to_string(limit));
  std::vector<Element> out;
  out.reserve(order_);
  for (std::uint64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

std::string format_element(const Element& x) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << x(i);
  os << ')';
  return os.str();
}

std::optional<QFormDefect> find_qform_defect(const FinAbGroup& group, const RationalMatrix& A) {
  const auto& n = group.invariant_factors();
  // q(x + n_i e_i) - q(x) = 2 n_i (A x)_i + n_i^2 A_ii is affine in x, so
  // x = 0 and x = e_j exhaust the ways it can fail to be integral.
  auto shifted = [&](const IntVector& x, Eigen::Index i) {
    IntVector y = x;
    y(i) += n[i];
    return QFormDefect{x, i, QZ(quadratic_value(A, x)), QZ(quadratic_value(A, y))};
  };
  for (Eigen::Index i = 0; i < group.rank(); ++i) {
    const Rational ni(n[i]);
    if (!(ni * ni * A(i, i)).is_integer()) return shifted(IntVector::Zero(group.rank()), i);
    for (Eigen::Index j = 0; j < group.rank(); ++j) {
      if (!(Rational(2) * ni * A(i, j)).is_integer()) {
        IntVector e = IntVector::Zero(group.rank());
        e(j) = 1;
        return shifted(e, i);
      }
    }
  }
  return std::nullopt;
}

QForm make_qform(FinAbGroup group, RationalMatrix matrix) {
  if (matrix.rows() != group.rank() || matrix.cols() != group.rank())
    throw validation_error("finite_forms.ShapeMismatch", "quadratic form matrix is " + std::to_string(matrix.rows()) + "x" +
                                                             std::to_string(matrix.cols()) + ", group has rank " +
                                                             std::to_string(group.rank()));
  for (Eigen::Index i = 0; i < matrix.rows(); ++i)
    for (Eigen::Index j = i + 1; j < matrix.cols(); ++j)
      if (matrix(i, j) != matrix(j, i))
        throw validation_error("finite_forms.NotSymmetric", "quadratic form matrix is not symmetric at (" + std::to_string(i) +
                                                                "," + std::to_string(j) + ")");
  if (auto defect = find_qform_defect(group, matrix)) {
    std::ostringstream os;
    os << "quadratic form is not well defined: q(x) = " << defect->at_element << " but q(x + "
       << group.invariant_factors()[defect->factor] << "*e_" << defect->factor << ") = " << defect->at_shifted
       << " at x = " << format_element(defect->element);
    throw validation_error("finite_forms.InvalidQForm", os.str());
  }
  QForm q;
  q.group_ = std::move(group);
  q.matrix_ = std::move(matrix);
  return q;
}

QForm zero_qform(const FinAbGroup& group) { return make_qform(group, RationalMatrix::Zero(group.rank(), group.rank())); }

QZ QForm::operator()(const Element& x) const {
  require_member(group_, x, "element");
  return QZ(quadratic_value(matrix_, x));
}

BilinearForm bilinear(const QForm& q) {
  BilinearForm b;
  b.group_ = q.group();
  b.polar_ = q.matrix() * Rational(2);
  return b;
}

QZ BilinearForm::operator()(const Element& x, const Element& y) const {
  require_member(group_, x, "element");
  require_member(group_, y, "element");
  Rational sum;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) == 0) continue;
    for (Eigen::Index j = 0; j < y.size(); ++j)
      if (y(j) != 0) sum += Rational(x(i)) * polar_(i, j) * Rational(y(j));
  }
  return QZ(sum);
}

Subgroup make_subgroup(const FinAbGroup& group, std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end(),
            [&](const Element& a, const Element& b) { return group.index_of(a) < group.index_of(b); });

  // Greedy generating set: add an element whenever it escapes the span so far.
  std::vector<bool> in_span(group.order(), false);
  std::vector<std::uint64_t> span{group.index_of(group.zero())};
  in_span[span.front()] = true;
  std::vector<Element> gens;
  for (const Element& h : elements) {
    if (in_span[group.index_of(h)]) continue;
    gens.push_back(h);
    const std::size_t base = span.size();
    for (std::size_t s = 0; s < base; ++s) {
      Element cur = group.add(group.element_at(span[s]), h);
      while (!in_span[group.index_of(cur)]) {
        in_span[group.index_of(cur)] = true;
        span.push_back(group.index_of(cur));
        cur = group.add(cur, h);
      }
    }
  }

  Subgroup out;
  out.elements = std::move(elements);
  const Eigen::Index k = group.rank();
  if (k == 0 || gens.empty()) return out;

  // H = L / N with L spanned by the generator lifts and N = diag(n) Z^k.
  // If U [gens | diag(n)] V = diag(d), then L has basis U^{-1} diag(d) and N
  // is expressed in it by M = diag(d)^{-1} U diag(n).
  IntMatrix lattice(k, static_cast<Eigen::Index>(gens.size()) + k);
  lattice.setZero();
  for (std::size_t c = 0; c < gens.size(); ++c) lattice.col(static_cast<Eigen::Index>(c)) = gens[c];
  for (Eigen::Index i = 0; i < k; ++i) lattice(i, static_cast<Eigen::Index>(gens.size()) + i) = group.invariant_factors()[i];
  auto snf = smith_normal_form(lattice);
  IntMatrix relations(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) relations(i, j) = snf.U(i, j) * group.invariant_factors()[j] / snf.D(i, i);
  auto inner = smith_normal_form(relations);
  for (Eigen::Index i = 0; i < k; ++i)
    if (inner.D(i, i) > 1) out.invariant_factors.push_back(inner.D(i, i));
  return out;
}

Subgroup radical(const BilinearForm& b) {
  const FinAbGroup& g = b.group();
  std::vector<Element> gens;
  for (Eigen::Index i = 0; i < g.rank(); ++i) gens.push_back(g.generator(i));
  std::vector<Element> members;
  for (const Element& x : g.elements()) {
    bool transparent = std::all_of(gens.begin(), gens.end(), [&](const Element& e) { return b(x, e).is_zero(); });
    if (transparent) members.push_back(x);
  }
  return make_subgroup(g, std::move(members));
}

std::complex<double> gauss_sum(const QForm& q) {
  std::complex<double> sum = 0.0;
  const auto all = q.group().elements();
  for (const Element& x : all) sum += std::polar(1.0, 2.0 * std::numbers::pi * q(x).to_double());
  return sum / std::sqrt(static_cast<double>(all.size()));
}

}  // namespace mfd

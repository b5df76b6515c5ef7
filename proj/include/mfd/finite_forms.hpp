#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfd/rational.hpp"
#include "mfd/smith.hpp"
#include "mfd/types.hpp"

namespace mfd {

/// Upper bound on |G| for anything that enumerates the group.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 16;

/// Z/n_1 x ... x Z/n_k in the presentation the caller supplied. The factors
/// are not normalised to a divisibility chain.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }
  Eigen::Index rank() const noexcept { return static_cast<Eigen::Index>(factors_.size()); }
  std::uint64_t order() const noexcept { return order_; }

  Element zero() const { return Element::Zero(rank()); }
  Element generator(Eigen::Index i) const;

  /// Coordinatewise reduction into [0, n_i).
  Element reduce(const IntVector& v) const;
  Element add(const Element& a, const Element& b) const { return reduce(a + b); }
  Element sub(const Element& a, const Element& b) const { return reduce(a - b); }
  Element neg(const Element& a) const { return reduce(-a); }
  Element scale(std::int64_t k, const Element& a) const { return reduce(k * a); }

  /// True when x has the right length and reduced coordinates.
  bool contains(const Element& x) const;

  /// Mixed-radix indexing, last coordinate fastest.
  std::uint64_t index_of(const Element& x) const;
  Element element_at(std::uint64_t index) const;

  /// All elements in index order; capacity error above `limit`.
  std::vector<Element> elements(std::uint64_t limit = kEnumerationLimit) const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ == b.factors_; }

 private:
  friend FinAbGroup make_group(std::vector<std::int64_t> invariant_factors);

  std::vector<std::int64_t> factors_;
  std::uint64_t order_ = 1;
};

FinAbGroup make_group(std::vector<std::int64_t> invariant_factors);

std::string format_element(const Element& x);

/// A point where x -> x^T A x fails to descend to G: q(x + n_i e_i) != q(x).
struct QFormDefect {
  Element element;
  Eigen::Index factor = 0;
  QZ at_element;
  QZ at_shifted;
};

/// Returns the first defect in the (factor, column) scan, or nullopt when
/// n_i * 2 A_ij and n_i^2 A_ii are integral for all i, j.
std::optional<QFormDefect> find_qform_defect(const FinAbGroup& group, const RationalMatrix& matrix);

/// Q/Z-valued quadratic form q(x) = x^T A x mod 1.
class QForm {
 public:
  const FinAbGroup& group() const noexcept { return group_; }
  const RationalMatrix& matrix() const noexcept { return matrix_; }

  QZ operator()(const Element& x) const;

 private:
  friend QForm make_qform(FinAbGroup group, RationalMatrix matrix);

  FinAbGroup group_;
  RationalMatrix matrix_;
};

/// Throws finite_forms.ShapeMismatch, finite_forms.NotSymmetric or
/// finite_forms.InvalidQForm (message carries the witness).
QForm make_qform(FinAbGroup group, RationalMatrix matrix);

/// Zero form on a group.
QForm zero_qform(const FinAbGroup& group);

/// b(x, y) = x^T P y mod 1 with P = 2A, the polarisation of q.
class BilinearForm {
 public:
  const FinAbGroup& group() const noexcept { return group_; }
  const RationalMatrix& polar_matrix() const noexcept { return polar_; }

  QZ operator()(const Element& x, const Element& y) const;

 private:
  friend BilinearForm bilinear(const QForm& q);

  FinAbGroup group_;
  RationalMatrix polar_;
};

BilinearForm bilinear(const QForm& q);

/// A subgroup given by its elements (sorted by ambient index) together with
/// the invariant factors of its abstract isomorphism type.
struct Subgroup {
  std::vector<Element> elements;
  std::vector<std::int64_t> invariant_factors;

  std::uint64_t order() const noexcept { return elements.size(); }
  bool is_trivial() const noexcept { return elements.size() == 1; }
};

/// Builds the Subgroup record for a set of elements that is already closed
/// under the group law. Invariant factors come from a Smith form of the
/// relation lattice.
Subgroup make_subgroup(const FinAbGroup& group, std::vector<Element> elements);

/// {x : b(x, y) = 0 for all y}, by enumeration of x against the generators.
Subgroup radical(const BilinearForm& b);

/// |G|^{-1/2} sum_x exp(2 pi i q(x)).
std::complex<double> gauss_sum(const QForm& q);

}  // namespace mfd

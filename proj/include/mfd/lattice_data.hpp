#pragma once

#include <vector>

#include "mfd/finite_forms.hpp"
#include "mfd/pointed_gv.hpp"
#include "mfd/types.hpp"

namespace mfd {

/// Full-rank even lattice (Gram matrix on a basis of the lattice) together
/// with a dual-lattice vector xi in lattice-basis coordinates.
class LatticeData {
 public:
  const IntMatrix& gram() const noexcept { return gram_; }
  const RationalVector& xi() const noexcept { return xi_; }

 private:
  friend LatticeData make_lattice(IntMatrix gram, RationalVector xi);

  IntMatrix gram_;
  RationalVector xi_;
};

/// Errors: lattice_data.ShapeMismatch, NotSymmetric, NotEven, Degenerate,
/// XiNotDual.
LatticeData make_lattice(IntMatrix gram, RationalVector xi);

/// The discriminant group L*/L in the presentation read off the Smith form
/// U * gram * V = D: one cyclic factor per diagonal entry d_i > 1, generated
/// by the class of V e_i / d_i.
struct DiscriminantGroup {
  FinAbGroup group;
  std::vector<RationalVector> generator_lifts;
  std::int64_t determinant_abs = 0;
  SmithDecomposition<std::int64_t> smith;

  /// Coordinates in `group` of a dual vector given in lattice-basis
  /// coordinates. The vector must satisfy gram * v integral.
  Element coordinates(const IntMatrix& gram, const RationalVector& v) const;
};

DiscriminantGroup discriminant_group(const LatticeData& lattice);

/// q(x) = <x~, x~>/2 mod 1 on the discriminant generators.
QForm discriminant_form(const LatticeData& lattice);

/// (L*/L, discriminant form, h0 = class of xi).
PointedGVCategory to_pointed_gv(const LatticeData& lattice);

}  // namespace mfd

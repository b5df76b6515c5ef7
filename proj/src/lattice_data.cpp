#include "mfd/lattice_data.hpp"

#include "mfd/error.hpp"

namespace mfd {

namespace {

RationalVector times(const IntMatrix& m, const RationalVector& v) {
  RationalVector out(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Rational s;
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += Rational(m(i, j)) * v(j);
    out(i) = s;
  }
  return out;
}

}  // namespace

LatticeData make_lattice(IntMatrix gram, RationalVector xi) {
  if (gram.rows() != gram.cols())
    throw validation_error("lattice_data.ShapeMismatch", "Gram matrix must be square");
  if (xi.size() != gram.rows())
    throw validation_error("lattice_data.ShapeMismatch", "xi has " + std::to_string(xi.size()) +
                                                             " coordinates, lattice has rank " + std::to_string(gram.rows()));
  if (gram != gram.transpose()) throw validation_error("lattice_data.NotSymmetric", "Gram matrix is not symmetric");
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    if (gram(i, i) % 2 != 0)
      throw validation_error("lattice_data.NotEven", "diagonal entry " + std::to_string(i) + " is " +
                                                         std::to_string(gram(i, i)) + "; the lattice must be even");
  auto snf = smith_normal_form(gram);
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    if (snf.D(i, i) == 0) throw validation_error("lattice_data.Degenerate", "Gram matrix is singular");
  RationalVector pairing = times(gram, xi);
  for (Eigen::Index i = 0; i < pairing.size(); ++i)
    if (!pairing(i).is_integer())
      throw validation_error("lattice_data.XiNotDual", "gram * xi has non-integral entry " + pairing(i).str() + " at " +
                                                           std::to_string(i) + "; xi is not in the dual lattice");
  LatticeData l;
  l.gram_ = std::move(gram);
  l.xi_ = std::move(xi);
  return l;
}

Element DiscriminantGroup::coordinates(const IntMatrix& gram, const RationalVector& v) const {
  // L*/L ~ Z^k / gram Z^k via v -> gram v, and U maps the latter onto Z^k / D Z^k.
  RationalVector y = times(gram, v);
  IntVector yi(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!y(i).is_integer())
      throw validation_error("lattice_data.XiNotDual", "vector is not in the dual lattice");
    yi(i) = y(i).num();
  }
  IntVector u = smith.U * yi;
  IntVector coords(group.rank());
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < smith.D.rows(); ++i)
    if (smith.D(i, i) > 1) coords(c++) = u(i);
  return group.reduce(coords);
}

DiscriminantGroup discriminant_group(const LatticeData& lattice) {
  DiscriminantGroup out;
  out.smith = smith_normal_form(lattice.gram());
  std::vector<std::int64_t> factors;
  out.determinant_abs = 1;
  const Eigen::Index k = lattice.gram().rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    const std::int64_t d = out.smith.D(i, i);
    out.determinant_abs *= d;
    if (d > 1) {
      factors.push_back(d);
      RationalVector lift(k);
      for (Eigen::Index r = 0; r < k; ++r) lift(r) = Rational(out.smith.V(r, i), d);
      out.generator_lifts.push_back(std::move(lift));
    }
  }
  out.group = make_group(std::move(factors));
  return out;
}

QForm discriminant_form(const LatticeData& lattice) {
  const DiscriminantGroup disc = discriminant_group(lattice);
  const auto r = static_cast<Eigen::Index>(disc.generator_lifts.size());
  RationalMatrix A(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    RationalVector gi = times(lattice.gram(), disc.generator_lifts[i]);
    for (Eigen::Index j = 0; j < r; ++j) {
      Rational inner;
      for (Eigen::Index t = 0; t < gi.size(); ++t) inner += disc.generator_lifts[j](t) * gi(t);
      A(i, j) = inner / Rational(2);
    }
  }
  return make_qform(disc.group, std::move(A));
}

PointedGVCategory to_pointed_gv(const LatticeData& lattice) {
  const DiscriminantGroup disc = discriminant_group(lattice);
  return make_category(discriminant_form(lattice), disc.coordinates(lattice.gram(), lattice.xi()));
}

}  // namespace mfd

#pragma once

#include <algorithm>
#include <cstdlib>

#include <Eigen/Core>

#include "mfd/types.hpp"

namespace mfd {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... ,
/// nonnegative diagonal, zeros last.
template <typename Scalar>
struct SmithDecomposition {
  Matrix<Scalar> U;
  Matrix<Scalar> D;
  Matrix<Scalar> V;

  Vector<Scalar> diagonal() const { return D.diagonal(); }
};

namespace detail {

template <typename Scalar>
bool find_pivot(const Matrix<Scalar>& D, Eigen::Index t, Eigen::Index& row, Eigen::Index& col) {
  bool found = false;
  Scalar best = 0;
  for (Eigen::Index j = t; j < D.cols(); ++j) {
    for (Eigen::Index i = t; i < D.rows(); ++i) {
      Scalar a = D(i, j) < 0 ? -D(i, j) : D(i, j);
      if (a != 0 && (!found || a < best)) {
        found = true;
        best = a;
        row = i;
        col = j;
      }
    }
  }
  return found;
}

}  // namespace detail

/// Smith normal form by repeated pivoting on the smallest nonzero entry.
template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  static_assert(Eigen::NumTraits<Scalar>::IsInteger, "smith_normal_form needs an integer scalar");

  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  SmithDecomposition<Scalar> out{Matrix<Scalar>::Identity(m, m), A.eval(), Matrix<Scalar>::Identity(n, n)};
  Matrix<Scalar>& D = out.D;
  Matrix<Scalar>& U = out.U;
  Matrix<Scalar>& V = out.V;

  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      Eigen::Index pr = t, pc = t;
      if (!detail::find_pivot(D, t, pr, pc)) return out;
      if (pr != t) {
        D.row(pr).swap(D.row(t));
        U.row(pr).swap(U.row(t));
      }
      if (pc != t) {
        D.col(pc).swap(D.col(t));
        V.col(pc).swap(V.col(t));
      }

      bool clean = true;
      const Scalar p = D(t, t);
      for (Eigen::Index i = t + 1; i < m; ++i) {
        Scalar q = D(i, t) / p;
        if (q != 0) {
          D.row(i) -= q * D.row(t);
          U.row(i) -= q * U.row(t);
        }
        clean = clean && D(i, t) == 0;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        Scalar q = D(t, j) / p;
        if (q != 0) {
          D.col(j) -= q * D.col(t);
          V.col(j) -= q * V.col(t);
        }
        clean = clean && D(t, j) == 0;
      }
      if (!clean) continue;

      // The pivot must divide the whole trailing block; otherwise fold an
      // offending row in and go around again with a smaller remainder.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (D(i, j) % p != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      D.row(t) += D.row(bad);
      U.row(t) += U.row(bad);
    }
    if (D(t, t) < 0) {
      D.row(t) *= Scalar(-1);
      U.row(t) *= Scalar(-1);
    }
  }
  return out;
}

}  // namespace mfd

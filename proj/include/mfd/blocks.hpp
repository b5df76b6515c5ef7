#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfd/finite_forms.hpp"
#include "mfd/pointed_gv.hpp"
#include "mfd/surfaces.hpp"
#include "mfd/types.hpp"

namespace mfd {

/// Floating-point (S, T) data on a finite label set with unit at index 0.
struct ModularData {
  std::vector<std::string> labels;
  ComplexMatrix S;
  ComplexMatrix T;
  /// Charge conjugation as a permutation of label indices.
  std::vector<std::size_t> conjugation;
  /// Present when the data comes from a pointed category; labels are then
  /// the group elements in index order.
  std::optional<FinAbGroup> group;

  std::size_t size() const noexcept { return labels.size(); }
};

/// Checks shapes, S symmetric and T unitary diagonal within `tol`, and the
/// conjugation is a permutation. Errors: blocks.InvalidModularData.
ModularData make_modular_data(std::vector<std::string> labels, ComplexMatrix S, ComplexMatrix T,
                              std::vector<std::size_t> conjugation, double tol = 1e-9);

/// Conformal-block dimension and whether the Hom condition held.
struct BlockDimension {
  std::uint64_t dim = 0;
  bool condition_met = false;
};

/// dim A(X_1 + ... + X_n + g A, K) for pointed A: the end collapses to |G|
/// copies of g0, so the dimension is |G|^g when X_1 + ... + X_n + (g-1) g0 = 0
/// and zero otherwise.
/// Errors: blocks.LabelOutsideGroup, blocks.Overflow (capacity).
BlockDimension block_dim_direct(const PointedGVCategory& category, const SurfaceSpec& surface);

/// 1 iff x + y + z = g0.
int pants_multiplicity(const PointedGVCategory& category, const Element& x, const Element& y, const Element& z);

/// Sum over edge labellings of the product of pants multiplicities. Each
/// internal edge carries e on its smaller half-edge and D(e) = g0 - e on the
/// other; legs carry the boundary labels.
/// Errors: blocks.DecompositionMismatch, blocks.LabelOutsideGroup,
/// blocks.TooManyLabellings (capacity, above 10^8 labellings).
std::uint64_t block_dim_glued(const PointedGVCategory& category, const PantsDecomposition& pd,
                              const std::vector<Element>& labels);

struct VerlindeReport {
  Complex value;
  std::int64_t nearest = 0;
  double residual = 0.0;  // |value - nearest|
};

/// sum_j S_0j^{2-2g-n} prod_k S_{i_k j}.
/// Errors: blocks.DegenerateData when some S_0j vanishes, blocks.BadLabel.
VerlindeReport verlinde_dim(const ModularData& md, int genus, const std::vector<std::size_t>& boundary);

/// "fibonacci" and "ising" are embedded tables checked against the SL(2,Z)
/// relations on load; "pointed" needs `category` and delegates to
/// st_matrices. Errors: blocks.UnknownModularData, plus those of st_matrices.
ModularData builtin_modular_data(std::string_view name, const PointedGVCategory* category = nullptr);

}  // namespace mfd

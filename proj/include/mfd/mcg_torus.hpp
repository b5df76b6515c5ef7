#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfd/blocks.hpp"
#include "mfd/pointed_gv.hpp"

namespace mfd {

inline constexpr std::uint64_t kTorusLimit = std::uint64_t{1} << 10;

/// T_xx = exp(2 pi i q(x)), S_xy = |G|^{-1/2} exp(-2 pi i b(x, y)).
/// Errors: mcg_torus.Unsupported when h0 != 0, mcg_torus.Degenerate when b
/// has a radical, mcg_torus.GroupTooLarge above 2^10 elements.
ModularData st_matrices(const PointedGVCategory& category);

/// Sup-norm residuals of the projective SL(2, Z) relations. lambda is read
/// off the (0, 0) entries of (ST)^3 and S^2.
struct RelationReport {
  Complex lambda;
  double st_cubed = 0.0;    // |(ST)^3 - lambda S^2|
  double s_squared = 0.0;   // |S^2 - C|
  double unitarity = 0.0;   // |S S^* - Id|
  double tolerance = 0.0;

  bool passed() const { return st_cubed < tolerance && s_squared < tolerance && unitarity < tolerance; }
};

RelationReport check_relations(const ModularData& md, double tol = 1e-9);

struct AnomalyReport {
  Complex gamma;
  /// (8 / 2 pi) arg(gamma) reduced to [0, 8).
  double central_charge_mod8 = 0.0;
};

/// Errors: as st_matrices.
AnomalyReport anomaly(const PointedGVCategory& category);

/// The same phase read off a fitted lambda.
double central_charge_mod8(Complex phase);

struct FusionReport {
  std::size_t rank = 0;
  std::vector<std::int64_t> coefficients;  // N_{xy}^z at (x * rank + y) * rank + z
  double max_residual = 0.0;
  /// For pointed data: whether the rounded tensor is delta(x + y, z).
  std::optional<bool> matches_group_law;

  std::int64_t at(std::size_t x, std::size_t y, std::size_t z) const { return coefficients[(x * rank + y) * rank + z]; }
};

/// N_{xy}^z = sum_w S_xw S_yw conj(S_zw) / S_0w.
/// Errors: blocks.DegenerateData when some S_0w vanishes.
FusionReport fusion_from_s(const ModularData& md);

struct ConnectednessVerdict {
  TriState value = TriState::Undetermined;
  std::string justification;
};

ConnectednessVerdict connectedness_verdict(const PointedGVCategory& category);

}  // namespace mfd

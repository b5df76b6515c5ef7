#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mfd/finite_forms.hpp"

namespace mfd {

inline constexpr std::uint64_t kAxiomLimit = std::uint64_t{1} << 12;

/// Pointed ribbon Grothendieck-Verdier category vect_G^{q, 2 h0}.
///
/// Simple objects are the elements of G, the tensor product is addition and
/// the unit is 0. Everything else is derived from (G, q, h0):
///   dualizing object  K = g0 = 2 h0
///   duality           D(x) = g0 - x
///   double braiding   b = polarisation of q
///   twist             theta(x) = q(x) - b(x, h0)
///   pairing           kappa(x, y) = [x + y == g0]
/// Individual braiding scalars and the associator are not represented; only
/// the braided-equivalence class carried by q is.
class PointedGVCategory {
 public:
  const FinAbGroup& group() const noexcept { return qform_.group(); }
  const QForm& qform() const noexcept { return qform_; }
  const BilinearForm& braiding() const noexcept { return braiding_; }
  const Element& h0() const noexcept { return h0_; }
  const Element& g0() const noexcept { return g0_; }

  Element dual(const Element& x) const { return group().sub(g0_, x); }
  QZ twist(const Element& x) const { return qform_(x) - braiding_(x, h0_); }
  int pairing(const Element& x, const Element& y) const { return group().add(x, y) == g0_ ? 1 : 0; }

 private:
  friend PointedGVCategory make_category(QForm q, Element h0);

  QForm qform_;
  BilinearForm braiding_;
  Element h0_;
  Element g0_;
};

/// Errors: pointed_gv.InvalidH0 when h0 is not a reduced element of G.
PointedGVCategory make_category(QForm q, Element h0);

/// Unit category on the trivial group.
PointedGVCategory unit_category();

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed
};

struct AxiomReport {
  std::vector<AxiomResult> results;

  bool all_passed() const;
  const AxiomResult* find(const std::string& name) const;
};

using TwistFunction = std::function<QZ(const Element&)>;

/// Exhaustive check over G (|G| <= 2^12) of the pointed-level balanced
/// braided, self-duality and ribbon axioms:
///   "hexagon"          b biadditive and symmetric
///   "balancing"        theta(x+y) = theta(x) + theta(y) + b(x,y)
///   "twist_unit"       theta(0) = 0
///   "ribbon"           theta(D x) = theta(x)
///   "pairing_balance"  theta(x) = theta(y) whenever kappa(x, y) = 1
///   "duality"          D(D x) = x and kappa(x, D x) = 1
///   "q_even"           q(-x) = q(x)
/// Biadditivity runs over all triples up to |G| = 256 and over all pairs
/// against a generator set above that.
AxiomReport check_axioms(const PointedGVCategory& category);

/// Same checks with the category's twist replaced by `twist`.
AxiomReport check_axioms(const PointedGVCategory& category, const TwistFunction& twist);

struct MuegerCenter {
  Subgroup transparent;  // radical of b
  Subgroup balanced;     // transparent objects with theta = 0
};

MuegerCenter mueger_center(const PointedGVCategory& category);

/// Tri-state used where a sufficient criterion can confirm but not refute.
enum class TriState { True, False, Undetermined };

std::string to_string(TriState t);

struct Verdicts {
  bool nondegenerate = false;
  bool cofactorizable = false;
  bool modular = false;
  TriState connected = TriState::Undetermined;
  TriState extension_unique = TriState::Undetermined;
};

Verdicts verdicts(const PointedGVCategory& category);

}  // namespace mfd

#include "mfd/pointed_gv.hpp"

#include <numeric>
#include <sstream>

#include "mfd/error.hpp"

namespace mfd {

namespace {

// Group elements by index with a digit table, and Q/Z values as residues
// mod a common denominator, so the quadratic loops stay integer-only.
class IndexedTables {
 public:
  IndexedTables(const PointedGVCategory& c, const TwistFunction& twist) : group_(c.group()) {
    if (group_.order() > kAxiomLimit)
      throw capacity_error("pointed_gv.GroupTooLarge", "axiom check needs |G| <= " + std::to_string(kAxiomLimit) +
                                                           ", got " + std::to_string(group_.order()));
    order_ = group_.order();
    k_ = group_.rank();
    digits_.resize(order_ * static_cast<std::size_t>(k_));
    for (std::uint64_t i = 0; i < order_; ++i) {
      Element x = group_.element_at(i);
      for (Eigen::Index j = 0; j < k_; ++j) digits_[i * k_ + j] = x(j);
    }

    std::vector<QZ> q(order_), theta(order_);
    std::int64_t den = 1;
    auto absorb = [&](std::int64_t d) {
      den = std::lcm(den, d);
      if (den > (std::int64_t{1} << 40))
        throw capacity_error("pointed_gv.DenominatorTooLarge", "common denominator of form values exceeds 2^40");
    };
    const RationalMatrix& polar = c.braiding().polar_matrix();
    for (Eigen::Index i = 0; i < k_; ++i)
      for (Eigen::Index j = 0; j < k_; ++j) absorb(polar(i, j).den());
    for (std::uint64_t i = 0; i < order_; ++i) {
      Element x = group_.element_at(i);
      q[i] = c.qform()(x);
      theta[i] = twist(x);
      absorb(q[i].value().den());
      absorb(theta[i].value().den());
    }
    den_ = den;
    q_.resize(order_);
    theta_.resize(order_);
    for (std::uint64_t i = 0; i < order_; ++i) {
      q_[i] = residue(q[i].value());
      theta_[i] = residue(theta[i].value());
    }
    polar_ = IntMatrix(k_, k_);
    for (Eigen::Index i = 0; i < k_; ++i)
      for (Eigen::Index j = 0; j < k_; ++j) polar_(i, j) = residue(polar(i, j));
    g0_ = group_.index_of(c.g0());
  }

  std::uint64_t order() const { return order_; }
  std::int64_t q(std::uint64_t x) const { return q_[x]; }
  std::int64_t theta(std::uint64_t x) const { return theta_[x]; }
  std::uint64_t g0() const { return g0_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t idx = 0;
    for (Eigen::Index j = 0; j < k_; ++j) {
      const std::int64_t n = group_.invariant_factors()[j];
      idx = idx * n + static_cast<std::uint64_t>((digits_[a * k_ + j] + digits_[b * k_ + j]) % n);
    }
    return idx;
  }

  std::uint64_t neg(std::uint64_t a) const {
    std::uint64_t idx = 0;
    for (Eigen::Index j = 0; j < k_; ++j) {
      const std::int64_t n = group_.invariant_factors()[j];
      idx = idx * n + static_cast<std::uint64_t>((n - digits_[a * k_ + j]) % n);
    }
    return idx;
  }

  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

  std::int64_t b(std::uint64_t x, std::uint64_t y) const {
    __int128 sum = 0;
    for (Eigen::Index i = 0; i < k_; ++i) {
      const std::int64_t xi = digits_[x * k_ + i];
      if (xi == 0) continue;
      for (Eigen::Index j = 0; j < k_; ++j) sum += static_cast<__int128>(xi) * polar_(i, j) * digits_[y * k_ + j];
    }
    return wrap(sum);
  }

  std::int64_t plus(std::int64_t a, std::int64_t b) const { return wrap(static_cast<__int128>(a) + b); }
  std::int64_t minus(std::int64_t a, std::int64_t b) const { return wrap(static_cast<__int128>(a) - b); }

  std::vector<std::uint64_t> generators() const {
    std::vector<std::uint64_t> out;
    for (Eigen::Index i = 0; i < k_; ++i) out.push_back(group_.index_of(group_.generator(i)));
    return out;
  }

  std::string element(std::uint64_t i) const { return format_element(group_.element_at(i)); }
  std::string value(std::int64_t r) const { return Rational(r, den_).str(); }

 private:
  std::int64_t wrap(__int128 v) const {
    v %= den_;
    if (v < 0) v += den_;
    return static_cast<std::int64_t>(v);
  }

  std::int64_t residue(const Rational& r) const {
    return wrap(static_cast<__int128>(r.num()) * (den_ / r.den()));
  }

  const FinAbGroup& group_;
  std::uint64_t order_ = 0;
  Eigen::Index k_ = 0;
  std::vector<std::int64_t> digits_;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> q_, theta_;
  IntMatrix polar_;
  std::uint64_t g0_ = 0;
};

struct Recorder {
  AxiomResult result;

  explicit Recorder(std::string name) { result.name = std::move(name); }

  // Returns false once a witness is recorded so loops can stop early.
  bool check(bool ok, const std::function<std::string()>& witness) {
    if (ok) return true;
    result.passed = false;
    result.witness = witness();
    return false;
  }
};

AxiomResult check_hexagon(const IndexedTables& t) {
  Recorder r("hexagon");
  const std::uint64_t n = t.order();
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y) {
      const std::int64_t bxy = t.b(x, y);
      if (!r.check(bxy == t.b(y, x), [&] { return "b not symmetric at x=" + t.element(x) + " y=" + t.element(y); }))
        return r.result;
      const std::int64_t polar = t.minus(t.minus(t.q(t.add(x, y)), t.q(x)), t.q(y));
      if (!r.check(bxy == polar, [&] {
            return "b(x,y)=" + t.value(bxy) + " differs from q(x+y)-q(x)-q(y)=" + t.value(polar) + " at x=" + t.element(x) +
                   " y=" + t.element(y);
          }))
        return r.result;
    }
  std::vector<std::uint64_t> third;
  if (n <= 256) {
    for (std::uint64_t z = 0; z < n; ++z) third.push_back(z);
  } else {
    third = t.generators();
  }
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y)
      for (std::uint64_t z : third) {
        const std::int64_t lhs = t.b(t.add(x, y), z);
        const std::int64_t rhs = t.plus(t.b(x, z), t.b(y, z));
        if (!r.check(lhs == rhs, [&] {
              return "b(x+y,z)=" + t.value(lhs) + " but b(x,z)+b(y,z)=" + t.value(rhs) + " at x=" + t.element(x) +
                     " y=" + t.element(y) + " z=" + t.element(z);
            }))
          return r.result;
      }
  return r.result;
}

AxiomResult check_balancing(const IndexedTables& t) {
  Recorder r("balancing");
  for (std::uint64_t x = 0; x < t.order(); ++x)
    for (std::uint64_t y = 0; y < t.order(); ++y) {
      const std::int64_t lhs = t.theta(t.add(x, y));
      const std::int64_t rhs = t.plus(t.plus(t.theta(x), t.theta(y)), t.b(x, y));
      if (!r.check(lhs == rhs, [&] {
            return "theta(x+y)=" + t.value(lhs) + " but theta(x)+theta(y)+b(x,y)=" + t.value(rhs) + " at x=" +
                   t.element(x) + " y=" + t.element(y);
          }))
        return r.result;
    }
  return r.result;
}

AxiomResult check_twist_unit(const IndexedTables& t) {
  Recorder r("twist_unit");
  r.check(t.theta(0) == 0, [&] { return "theta(0)=" + t.value(t.theta(0)); });
  return r.result;
}

AxiomResult check_ribbon(const IndexedTables& t) {
  Recorder r("ribbon");
  for (std::uint64_t x = 0; x < t.order(); ++x) {
    const std::uint64_t dx = t.sub(t.g0(), x);
    if (!r.check(t.theta(dx) == t.theta(x), [&] {
          return "theta(D x)=" + t.value(t.theta(dx)) + " but theta(x)=" + t.value(t.theta(x)) + " at x=" + t.element(x) +
                 " D x=" + t.element(dx);
        }))
      break;
  }
  return r.result;
}

AxiomResult check_pairing_balance(const IndexedTables& t) {
  Recorder r("pairing_balance");
  for (std::uint64_t x = 0; x < t.order(); ++x)
    for (std::uint64_t y = 0; y < t.order(); ++y) {
      if (t.add(x, y) != t.g0()) continue;
      if (!r.check(t.theta(x) == t.theta(y), [&] {
            return "kappa(x,y)=1 but theta(x)=" + t.value(t.theta(x)) + ", theta(y)=" + t.value(t.theta(y)) + " at x=" +
                   t.element(x) + " y=" + t.element(y);
          }))
        return r.result;
    }
  return r.result;
}

AxiomResult check_duality(const IndexedTables& t) {
  Recorder r("duality");
  for (std::uint64_t x = 0; x < t.order(); ++x) {
    const std::uint64_t dx = t.sub(t.g0(), x);
    const std::uint64_t ddx = t.sub(t.g0(), dx);
    if (!r.check(ddx == x, [&] { return "D(D x)=" + t.element(ddx) + " at x=" + t.element(x); })) break;
    if (!r.check(t.add(x, dx) == t.g0(), [&] { return "kappa(x, D x)=0 at x=" + t.element(x); })) break;
  }
  return r.result;
}

AxiomResult check_q_even(const IndexedTables& t) {
  Recorder r("q_even");
  for (std::uint64_t x = 0; x < t.order(); ++x) {
    const std::uint64_t nx = t.neg(x);
    if (!r.check(t.q(nx) == t.q(x), [&] {
          return "q(-x)=" + t.value(t.q(nx)) + " but q(x)=" + t.value(t.q(x)) + " at x=" + t.element(x);
        }))
      break;
  }
  return r.result;
}

}  // namespace

PointedGVCategory make_category(QForm q, Element h0) {
  if (!q.group().contains(h0))
    throw validation_error("pointed_gv.InvalidH0", "h0 = " + format_element(h0) + " is not a reduced element of the group");
  PointedGVCategory c;
  c.braiding_ = bilinear(q);
  c.g0_ = q.group().scale(2, h0);
  c.h0_ = std::move(h0);
  c.qform_ = std::move(q);
  return c;
}

PointedGVCategory unit_category() {
  FinAbGroup trivial = make_group({});
  return make_category(zero_qform(trivial), trivial.zero());
}

bool AxiomReport::all_passed() const {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

const AxiomResult* AxiomReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

AxiomReport check_axioms(const PointedGVCategory& category) {
  return check_axioms(category, [&](const Element& x) { return category.twist(x); });
}

AxiomReport check_axioms(const PointedGVCategory& category, const TwistFunction& twist) {
  IndexedTables t(category, twist);
  AxiomReport report;
  report.results.push_back(check_hexagon(t));
  report.results.push_back(check_balancing(t));
  report.results.push_back(check_twist_unit(t));
  report.results.push_back(check_ribbon(t));
  report.results.push_back(check_pairing_balance(t));
  report.results.push_back(check_duality(t));
  report.results.push_back(check_q_even(t));
  return report;
}

MuegerCenter mueger_center(const PointedGVCategory& category) {
  MuegerCenter m;
  m.transparent = radical(category.braiding());
  std::vector<Element> balanced;
  for (const Element& x : m.transparent.elements)
    if (category.twist(x).is_zero()) balanced.push_back(x);
  m.balanced = make_subgroup(category.group(), std::move(balanced));
  return m;
}

std::string to_string(TriState t) {
  switch (t) {
    case TriState::True:
      return "true";
    case TriState::False:
      return "false";
    case TriState::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

Verdicts verdicts(const PointedGVCategory& category) {
  Verdicts v;
  v.nondegenerate = radical(category.braiding()).is_trivial();
  v.cofactorizable = v.nondegenerate;
  v.modular = v.nondegenerate && category.g0().isZero();
  v.connected = v.cofactorizable ? TriState::True : TriState::Undetermined;
  v.extension_unique = v.connected == TriState::True ? TriState::True : TriState::Undetermined;
  return v;
}

}  // namespace mfd

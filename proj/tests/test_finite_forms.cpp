#include <doctest.h>

#include <cmath>
#include <random>

#include "mfd/finite_forms.hpp"
#include "mfd/smith.hpp"
#include "oracles.hpp"

using namespace mfd;
using oracle::element;
using oracle::error_code;
using oracle::rational_matrix;

TEST_SUITE("finite_forms") {

TEST_CASE("rational arithmetic and parsing") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, 6).str() == "-1/2");
  CHECK(Rational(3).str() == "3/1");
  CHECK(Rational(-1, 3).frac() == Rational(2, 3));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK(error_code([] { Rational::parse("1/0"); }) == "rational.Malformed");
  CHECK(error_code([] { Rational::parse("1/-2"); }) == "rational.Malformed");
  CHECK(error_code([] { Rational::parse("abc"); }) == "rational.Malformed");
  CHECK(error_code([] { Rational::parse(""); }) == "rational.Malformed");
  CHECK(error_code([] { Rational(INT64_MAX) + Rational(1); }) == "rational.Overflow");
  CHECK(QZ(5, 4) == QZ(1, 4));
  CHECK(-QZ(1, 4) == QZ(3, 4));
  CHECK(3 * QZ(1, 2) == QZ(1, 2));
}

TEST_CASE("make_group") {
  auto z2 = make_group({2});
  CHECK(z2.order() == 2);
  auto g = make_group({2, 4});
  CHECK(g.order() == 8);
  CHECK(g.rank() == 2);
  CHECK(error_code([] { make_group({0}); }) == "finite_forms.InvalidFactor");
  CHECK(error_code([] { make_group({-3}); }) == "finite_forms.InvalidFactor");
  CHECK(make_group({}).order() == 1);
  CHECK(make_group({4, 2}).invariant_factors() == std::vector<std::int64_t>{4, 2});

  CHECK(g.reduce(element({3, -1})) == element({1, 3}));
  for (std::uint64_t i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
  CHECK(g.element_at(1) == element({0, 1}));
  CHECK(g.elements().size() == 8);
  CHECK(g.contains(element({1, 3})));
  CHECK_FALSE(g.contains(element({2, 0})));
  CHECK(format_element(element({1, 3})) == "(1,3)");
  CHECK(error_code([] { make_group({1 << 20}).elements(); }) == "finite_forms.GroupTooLarge");
}

TEST_CASE("make_qform examples") {
  auto z2 = make_group({2});
  auto semion = make_qform(z2, rational_matrix({{"1/4"}}));
  CHECK(semion(element({1})) == QZ(1, 4));
  CHECK(semion(element({0})) == QZ(0, 1));

  std::string message;
  try {
    make_qform(z2, rational_matrix({{"1/3"}}));
  } catch (const Error& e) {
    CHECK(e.code() == "finite_forms.InvalidQForm");
    message = e.what();
  }
  CHECK(message.find("1/3") != std::string::npos);
  auto defect = find_qform_defect(z2, rational_matrix({{"1/3"}}));
  REQUIRE(defect.has_value());
  CHECK(defect->at_element != defect->at_shifted);

  auto g = make_group({2, 4});
  auto zero = zero_qform(g);
  for (const auto& x : g.elements()) CHECK(zero(x).is_zero());

  CHECK(error_code([&] { make_qform(z2, rational_matrix({{"1/4", "0"}, {"0", "0"}})); }) == "finite_forms.ShapeMismatch");
  CHECK(error_code([&] { make_qform(g, rational_matrix({{"1/4", "1/4"}, {"0", "0"}})); }) == "finite_forms.NotSymmetric");
}

TEST_CASE("bilinear and radical examples") {
  auto semion = make_qform(make_group({2}), rational_matrix({{"1/4"}}));
  auto b = bilinear(semion);
  CHECK(b(element({1}), element({1})) == QZ(1, 2));
  CHECK(radical(b).is_trivial());

  auto z2zero = zero_qform(make_group({2}));
  CHECK(bilinear(z2zero)(element({1}), element({1})).is_zero());
  CHECK(radical(bilinear(z2zero)).order() == 2);

  auto toric = make_qform(make_group({2, 2}), rational_matrix({{"0", "1/4"}, {"1/4", "0"}}));
  auto bt = bilinear(toric);
  CHECK(bt(element({1, 0}), element({0, 1})) == QZ(1, 2));
  CHECK(bt(element({1, 0}), element({1, 0})).is_zero());
  CHECK(radical(bt).is_trivial());
  CHECK(toric(element({1, 1})) == QZ(1, 2));
}

TEST_CASE("gauss_sum examples") {
  auto semion = make_qform(make_group({2}), rational_matrix({{"1/4"}}));
  auto g = gauss_sum(semion);
  CHECK(std::abs(g - std::polar(1.0, M_PI / 4)) < 1e-12);
  auto zero = zero_qform(make_group({2, 3}));
  CHECK(std::abs(gauss_sum(zero) - std::complex<double>(std::sqrt(6.0), 0)) < 1e-12);
  auto toric = make_qform(make_group({2, 2}), rational_matrix({{"0", "1/4"}, {"1/4", "0"}}));
  CHECK(std::abs(gauss_sum(toric) - std::complex<double>(1, 0)) < 1e-12);
}

TEST_CASE("qform validation agrees with brute force on random matrices") {
  std::mt19937_64 rng(11);
  const std::vector<std::vector<std::int64_t>> groups{{2}, {3}, {4}, {6}, {8}, {2, 2}, {2, 4}, {3, 3}, {2, 6}, {4, 4}};
  const std::vector<std::int64_t> dens{1, 2, 3, 4, 6, 8, 12, 16, 24, 32};
  std::uniform_int_distribution<std::size_t> pick_den(0, dens.size() - 1);
  int valid = 0, invalid = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto& factors = groups[static_cast<std::size_t>(trial) % groups.size()];
    const auto r = static_cast<Eigen::Index>(factors.size());
    RationalMatrix a(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = i; j < r; ++j) {
        const std::int64_t d = dens[pick_den(rng)];
        std::uniform_int_distribution<std::int64_t> num(-2 * d, 2 * d);
        a(i, j) = a(j, i) = Rational(num(rng), d);
      }
    const bool expected = oracle::qform_well_defined(factors, a);
    CHECK(!find_qform_defect(make_group(factors), a).has_value() == expected);
    (expected ? valid : invalid)++;
  }
  CHECK(valid > 50);
  CHECK(invalid > 50);
}

TEST_CASE("exhaustive forms on small groups") {
  const std::vector<std::vector<std::int64_t>> groups{{1},  {2},  {3},  {4},  {5},  {6},    {7},    {8},
                                                      {9},  {10}, {12}, {16}, {2, 2}, {2, 4}, {3, 3}, {2, 6},
                                                      {4, 4}, {2, 8}, {2, 2, 2}, {2, 2, 4}, {2, 2, 2, 2}};
  std::size_t forms = 0;
  for (const auto& factors : groups) {
    auto group = make_group(factors);
    const auto elems = group.elements();
    const auto matrices = oracle::all_qform_matrices(factors);
    const std::size_t stride = matrices.size() > 2000 ? 16 : 1;
    for (const auto& a : matrices) {
      if (forms++ % stride == 0) REQUIRE(oracle::qform_well_defined(factors, a));
      auto q = make_qform(group, a);
      auto b = bilinear(q);
      for (const auto& x : elems) {
        CHECK(q(x).value() == oracle::q_value(a, x));
        for (std::int64_t k = 0; k < 4; ++k) CHECK(q(group.scale(k, x)) == (k * k) * q(x));
      }
      const auto expected = oracle::radical(factors, a);
      const auto rad = radical(b);
      CHECK(rad.elements == expected);
      const auto n = static_cast<std::int64_t>(group.order());
      CHECK(oracle::torsion_profile(rad.invariant_factors, n) == oracle::torsion_profile(rad.elements, factors, n));
      if (rad.is_trivial()) CHECK(std::abs(std::abs(gauss_sum(q)) - 1.0) < 1e-9);
    }
  }
  CHECK(forms > 1000);
}

TEST_CASE("bilinear form is symmetric and biadditive") {
  for (const auto& f : oracle::fixtures()) {
    auto group = make_group(f.factors);
    auto q = make_qform(group, rational_matrix(f.matrix));
    auto b = bilinear(q);
    const auto a = rational_matrix(f.matrix);
    const auto elems = group.elements();
    if (elems.size() > 64) continue;
    for (const auto& x : elems)
      for (const auto& y : elems) {
        CHECK(b(x, y) == b(y, x));
        CHECK(b(x, y).value() == oracle::b_value(a, x, y));
        for (const auto& z : elems) CHECK(b(group.add(x, y), z) == b(x, z) + b(y, z));
      }
  }
}

TEST_CASE("make_subgroup invariant factors") {
  auto g = make_group({4, 6});
  std::vector<Element> h;
  for (std::int64_t a = 0; a < 4; a += 2)
    for (std::int64_t b = 0; b < 6; ++b) h.push_back(element({a, b}));
  auto s = make_subgroup(g, h);
  CHECK(s.order() == 12);
  CHECK(oracle::torsion_profile(s.invariant_factors, 12) == oracle::torsion_profile(s.elements, {4, 6}, 12));
  auto trivial = make_subgroup(g, {g.zero()});
  CHECK(trivial.invariant_factors.empty());
}

}  // TEST_SUITE

TEST_SUITE("smith") {

TEST_CASE("smith examples") {
  IntMatrix a(2, 2);
  a << 2, 0, 0, 2;
  CHECK(smith_normal_form(a).diagonal() == IntVector::Constant(2, 2));
  a << 2, 1, 1, 2;
  IntVector d(2);
  d << 1, 3;
  CHECK(smith_normal_form(a).diagonal() == d);
  a << 4, 2, 2, 4;
  d << 2, 6;
  CHECK(smith_normal_form(a).diagonal() == d);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<std::int64_t> entry(-20, 20);
  std::uniform_int_distribution<int> sparse(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = dim(rng), n = dim(rng);
    IntMatrix a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = sparse(rng) == 0 ? 0 : entry(rng);
    if (trial % 10 == 0 && m > 1) a.row(m - 1) = 2 * a.row(0);
    const auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(std::abs(static_cast<long long>(oracle::det(s.U))) == 1);
    CHECK(std::abs(static_cast<long long>(oracle::det(s.V))) == 1);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
    const auto expected = oracle::smith_diagonal_oracle(a);
    for (int i = 0; i < std::min(m, n); ++i) {
      CHECK(s.D(i, i) >= 0);
      CHECK(s.D(i, i) == expected[static_cast<std::size_t>(i)]);
      if (i + 1 < std::min(m, n) && s.D(i, i) != 0) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    }
    if (m == n) {
      __int128 prod = 1;
      for (int i = 0; i < m; ++i) prod *= s.D(i, i);
      const __int128 det = oracle::det(a);
      CHECK((prod == det || prod == -det));
    }
  }
}

}  // TEST_SUITE

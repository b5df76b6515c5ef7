// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mfd/blocks.hpp"
#include "mfd/commands.hpp"
#include "mfd/config.hpp"
#include "mfd/lattice_data.hpp"
#include "mfd/mcg_torus.hpp"
#include "mfd/pointed_gv.hpp"
#include "mfd/smith.hpp"
#include "mfd/surfaces.hpp"
#include "oracles.hpp"

using namespace mfd;
using oracle::element;
using oracle::rational_matrix;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

PointedGVCategory build(const oracle::Fixture& f) {
  return make_category(make_qform(make_group(f.factors), rational_matrix(f.matrix)), element(f.h0));
}

PointedGVCategory feigin_fuchs(const Rational& xi) {
  IntMatrix gram(1, 1);
  gram << 8;
  RationalVector x(1);
  x << xi;
  return to_pointed_gv(make_lattice(gram, x));
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void dimension_law(Verdict& v) {
  const std::vector<std::uint64_t> with_xi{8, 0, 0, 0, 32768};
  auto c = feigin_fuchs(Rational(1, 8));
  auto c0 = feigin_fuchs(Rational(0));
  for (int g = 1; g <= 5; ++g) {
    const auto d = block_dim_direct(c, make_surface(g, {})).dim;
    v.expect(d == with_xi[static_cast<std::size_t>(g - 1)], "xi=1/8 g=" + std::to_string(g) + " dim " + std::to_string(d));
    const auto d0 = block_dim_direct(c0, make_surface(g, {})).dim;
    v.expect(d0 == ipow(8, g), "xi=0 g=" + std::to_string(g) + " dim " + std::to_string(d0));
  }
  v.detail << "dims (xi=1/8) = 8,0,0,0,32768; (xi=0) = 8^g";
}

void gluing_equals_direct(Verdict& v) {
  const std::vector<oracle::Fixture> cats{{"z2", {2}, {{"1/4"}}, {0}},
                                          {"z3", {3}, {{"1/3"}}, {0}},
                                          {"z8_h1", {8}, {{"1/16"}}, {1}},
                                          {"z2z2", {2, 2}, {{"0", "1/4"}, {"1/4", "0"}}, {0, 0}}};
  const std::vector<std::pair<int, std::size_t>> shapes{{0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 1}, {1, 2},
                                                        {1, 3}, {1, 4}, {2, 0}, {2, 1}, {2, 2}, {3, 0}};
  std::mt19937_64 rng(2024);
  std::uint64_t comparisons = 0, nonzero = 0;
  for (const auto& f : cats) {
    auto c = build(f);
    const auto& group = c.group();
    std::uniform_int_distribution<std::uint64_t> pick(0, group.order() - 1);
    for (auto [g, n] : shapes) {
      const auto decomps = enumerate_decompositions(g, n);
      // Every tuple when there are at most 100 of them, else 100 samples of
      // which half satisfy the Hom condition.
      std::vector<std::vector<Element>> tuples;
      const std::uint64_t total = ipow(group.order(), static_cast<int>(n));
      if (total <= 100) {
        for (std::uint64_t t = 0; t < total; ++t) {
          std::vector<Element> labels;
          std::uint64_t r = t;
          for (std::size_t i = 0; i < n; ++i) {
            labels.push_back(group.element_at(r % group.order()));
            r /= group.order();
          }
          tuples.push_back(labels);
        }
      } else {
        for (int t = 0; t < 100; ++t) {
          std::vector<Element> labels;
          for (std::size_t i = 0; i < n; ++i) labels.push_back(group.element_at(pick(rng)));
          if (t % 2 == 0) {
            Element s = group.scale(g - 1, c.g0());
            for (std::size_t i = 0; i + 1 < n; ++i) s = group.add(s, labels[i]);
            labels.back() = group.neg(s);
          }
          tuples.push_back(labels);
        }
      }
      for (const auto& labels : tuples) {
        const auto direct = block_dim_direct(c, make_surface(g, labels)).dim;
        nonzero += direct > 0 ? 1 : 0;
        for (const auto& pd : decomps) {
          const auto glued = block_dim_glued(c, pd, labels);
          ++comparisons;
          v.expect(glued == direct, f.name + " g=" + std::to_string(g) + " n=" + std::to_string(n) + " glued " +
                                        std::to_string(glued) + " direct " + std::to_string(direct) + "\n" +
                                        to_text(pd.dual()));
        }
      }
    }
  }
  v.detail << comparisons << " glued/direct comparisons, " << nonzero << " tuples with nonzero dimension";
}

void sl2z_relations(Verdict& v) {
  auto semion = build({"semion", {2}, {{"1/4"}}, {0}});
  auto md = st_matrices(semion);
  ComplexMatrix st = md.S * md.T;
  ComplexMatrix cube = st * st * st;
  ComplexMatrix golden = std::polar(1.0, M_PI / 4) * ComplexMatrix::Identity(2, 2);
  const double r1 = (cube - golden).cwiseAbs().maxCoeff();
  const double r2 = (md.S * md.S - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
  v.expect(r1 < 1e-12, "semion (ST)^3 residual " + std::to_string(r1));
  v.expect(r2 < 1e-12, "semion S^2 residual " + std::to_string(r2));

  int count = 0;
  double worst = 0;
  for (const auto& factors : std::vector<std::vector<std::int64_t>>{
           {1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {10}, {11}, {12}, {13}, {14}, {15}, {16},
           {2, 2}, {2, 4}, {2, 6}, {2, 8}, {3, 3}, {4, 4}, {2, 2, 2}, {2, 2, 4}, {2, 2, 2, 2}}) {
    auto group = make_group(factors);
    for (const auto& a : oracle::all_qform_matrices(factors)) {
      auto q = make_qform(group, a);
      auto c = make_category(q, group.zero());
      if (!verdicts(c).nondegenerate) continue;
      ++count;
      auto rel = check_relations(st_matrices(c));
      const double d = std::abs(rel.lambda - gauss_sum(q));
      worst = std::max(worst, d);
      v.expect(d < 1e-9, "lambda != gauss sum on " + format_element(element(factors)));
      v.expect(rel.unitarity < 1e-9, "unitarity residual on " + format_element(element(factors)));
    }
  }
  v.detail << "semion residuals " << r1 << ", " << r2 << "; " << count << " non-degenerate forms, max |lambda - gamma| "
           << worst;
}

void verlinde_checks(Verdict& v) {
  auto fib = verlinde_dim(builtin_modular_data("fibonacci"), 2, {});
  auto ising = verlinde_dim(builtin_modular_data("ising"), 2, {});
  auto z3 = build({"z3", {3}, {{"1/3"}}, {0}});
  auto pointed = verlinde_dim(builtin_modular_data("pointed", &z3), 2, {});
  v.expect(fib.nearest == 5 && fib.residual < 1e-6, "fibonacci");
  v.expect(ising.nearest == 10 && ising.residual < 1e-6, "ising");
  v.expect(pointed.nearest == 9 && pointed.residual < 1e-6, "pointed Z/3");
  v.expect(static_cast<std::uint64_t>(pointed.nearest) == block_dim_direct(z3, make_surface(2, {})).dim,
           "pointed Z/3 direct");
  v.detail << "fibonacci " << fib.nearest << " (" << fib.residual << "), ising " << ising.nearest << " (" << ising.residual
           << "), Z/3 " << pointed.nearest << " (" << pointed.residual << ")";
}

void axiom_suite(Verdict& v) {
  int categories = 0;
  auto run = [&](const PointedGVCategory& c, const std::string& name) {
    if (c.group().order() > 64) return;
    ++categories;
    auto report = check_axioms(c);
    for (const auto& r : report.results) v.expect(r.passed, name + " fails " + r.name + ": " + r.witness);
  };
  for (const auto& f : oracle::fixtures()) run(build(f), f.name);
  for (const auto& factors : std::vector<std::vector<std::int64_t>>{{2}, {3}, {4}, {6}, {8}, {2, 2}, {2, 4}, {3, 3}}) {
    auto group = make_group(factors);
    for (const auto& a : oracle::all_qform_matrices(factors))
      for (const auto& h0 : group.elements()) run(make_category(make_qform(group, a), h0), "exhaustive");
  }
  run(feigin_fuchs(Rational(1, 8)), "lattice [[8]]");

  auto ff = build({"z8_h1", {8}, {{"1/16"}}, {1}});
  auto broken = check_axioms(ff, [&](const Element& x) { return ff.qform()(x); });
  const auto* ribbon = broken.find("ribbon");
  v.expect(ribbon && !ribbon->passed && !ribbon->witness.empty(), "broken twist was not caught");
  v.detail << categories << " categories pass; broken twist: " << (ribbon ? ribbon->witness : "?");
}

void verdict_chain(Verdict& v) {
  int n = 0;
  for (const auto& f : oracle::fixtures()) {
    auto w = verdicts(build(f));
    ++n;
    if (w.modular) v.expect(w.cofactorizable, f.name + ": modular but not cofactorizable");
    if (w.cofactorizable) v.expect(w.connected == TriState::True, f.name + ": cofactorizable but not connected");
  }
  auto ff = verdicts(build({"z8_h1", {8}, {{"1/16"}}, {1}}));
  v.expect(ff.connected == TriState::True && !ff.modular, "Z/8 with h0=1 must be connected and not modular");
  auto lattice = verdicts(feigin_fuchs(Rational(1, 8)));
  v.expect(lattice.connected == TriState::True && !lattice.modular, "lattice [[8]], xi=1/8");
  v.detail << n << " fixtures; Z/8 h0=1: connected=" << to_string(ff.connected) << " modular=" << ff.modular;
}

void oracle_suites(Verdict& v) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<std::int64_t> entry(-20, 20);
  int snf = 0;
  for (; snf < 250; ++snf) {
    const int m = dim(rng), n = dim(rng);
    IntMatrix a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = entry(rng);
    const auto s = smith_normal_form(a);
    v.expect(s.U * a * s.V == s.D, "SNF: U A V != D");
    const auto expected = oracle::smith_diagonal_oracle(a);
    for (int i = 0; i < std::min(m, n); ++i) {
      v.expect(s.D(i, i) == expected[static_cast<std::size_t>(i)], "SNF diagonal differs from minors");
      if (i + 1 < std::min(m, n) && s.D(i, i) != 0) v.expect(s.D(i + 1, i + 1) % s.D(i, i) == 0, "SNF divisibility");
    }
    v.expect(std::abs(static_cast<long long>(oracle::det(s.U))) == 1 && std::abs(static_cast<long long>(oracle::det(s.V))) == 1,
             "SNF transforms not unimodular");
    if (m == n) {
      __int128 prod = 1;
      for (int i = 0; i < m; ++i) prod *= s.D(i, i);
      const __int128 d = oracle::det(a);
      v.expect(prod == d || prod == -d, "SNF |det|");
    }
  }

  int counter = 0, pairs = 0, graphs = 0;
  for (; pairs < 150; ++pairs) {
    auto f = oracle::random_forest(rng, 5, 4);
    auto inner = oracle::random_morphism(f, rng, 0.4, counter);
    auto outer = oracle::random_morphism(inner.target(), rng, 0.4, counter);
    v.expect(oracle::wiring(compose(outer, inner)) == oracle::compose(oracle::wiring(outer), oracle::wiring(inner)),
             "composition differs from substitution oracle");
  }
  for (; graphs < 300; ++graphs) {
    auto f = oracle::random_forest(rng, 8, 5);
    const Graph g = oracle::random_morphism(f, rng, 0.5, counter).graph();
    std::size_t pi0 = 0, nu = 0;
    for (const auto& c : contract_edges(g)) pi0 += c.legs.size();
    for (const auto& c : cut_edges(g)) nu += c.legs.size();
    v.expect(pi0 == nu - 2 * g.edge_count(), "leg bookkeeping");
  }
  v.detail << snf << " SNF matrices, " << pairs << " composable pairs, " << graphs << " random graphs";
}

void discriminant_pipeline(Verdict& v) {
  struct Case {
    const char* config;
    std::vector<std::int64_t> factors;
    std::uint64_t order;
    std::vector<std::pair<std::vector<std::int64_t>, std::string>> q;
  };
  const std::vector<Case> cases{
      {R"({"category":{"lattice":{"gram":[[2]],"xi":["0"]}}})", {2}, 2, {{{1}, "1/4"}}},
      {R"({"category":{"lattice":{"gram":[[2,1],[1,2]],"xi":["0","0"]}}})", {3}, 3, {{{1}, "1/3"}, {{2}, "1/3"}}},
      {R"({"category":{"lattice":{"gram":[[2,0],[0,2]],"xi":["0","0"]}}})", {2, 2}, 4, {{{1, 1}, "1/2"}}},
  };
  for (const auto& c : cases) {
    std::ostringstream out, err;
    Flags flags;
    flags.json = true;
    const int rc = run("inspect", parse_config_text(c.config), flags, out, err);
    v.expect(rc == 0, std::string("inspect failed: ") + err.str());
    if (rc != 0) continue;
    auto doc = nlohmann::json::parse(out.str());
    v.expect(doc["category"]["invariant_factors"].get<std::vector<std::int64_t>>() == c.factors, "invariant factors");
    v.expect(doc["category"]["order"].get<std::uint64_t>() == c.order, "order");
    for (const auto& [x, qx] : c.q) {
      bool found = false;
      for (const auto& obj : doc["objects"])
        if (obj["element"].get<std::vector<std::int64_t>>() == x) found = obj["q"] == qx;
      v.expect(found, std::string("q value in ") + c.config);
    }
  }
  v.detail << "semion, (Z/3, q(1)=1/3), order-4 group via inspect";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"dimension law for lattice [[8]]", dimension_law},
      {"gluing equals direct", gluing_equals_direct},
      {"SL(2,Z) relations", sl2z_relations},
      {"Verlinde cross-checks", verlinde_checks},
      {"axiom suite", axiom_suite},
      {"verdict chain", verdict_chain},
      {"oracle suites", oracle_suites},
      {"discriminant pipeline", discriminant_pipeline},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (v.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " (" << secs << "s): "
              << v.detail.str() << '\n';
    failures += v.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

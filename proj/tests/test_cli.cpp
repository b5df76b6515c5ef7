#include <doctest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "mfd/commands.hpp"
#include "mfd/config.hpp"
#include "oracles.hpp"

using namespace mfd;
using oracle::error_code;

namespace {

const char* kSemion = R"({"category":{"pointed":{"invariant_factors":[2],"qform_matrix":[["1/4"]],"h0":[0]}}})";
const char* kSemionLattice = R"({"category":{"lattice":{"gram":[[2]],"xi":["0/1"]}}})";
const char* kFeiginFuchs = R"({"category":{"lattice":{"gram":[[8]],"xi":["1/8"]}}})";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_text(const std::string& sub, const std::string& config, Flags flags = {}) {
  std::ostringstream out, err;
  int code = 0;
  try {
    code = run(sub, parse_config_text(config), flags, out, err);
  } catch (const std::exception& e) {
    code = report_error(e, flags.json, out, err);
  }
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(const std::string& sub, const std::string& config, Flags flags = {}) {
  flags.json = true;
  auto o = run_text(sub, config, flags);
  REQUIRE(o.code == 0);
  return nlohmann::json::parse(o.out);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config examples") {
  auto lattice = parse_config_text(kSemionLattice);
  REQUIRE(std::holds_alternative<LatticeConfig>(lattice.category));
  auto pointed = parse_config_text(kSemion);
  REQUIRE(std::holds_alternative<PointedConfig>(pointed.category));
  CHECK(pointed.tolerance == 1e-9);

  auto a = run_json("inspect", kSemion);
  auto b = run_json("inspect", kSemionLattice);
  CHECK(a["objects"] == b["objects"]);
  CHECK(a["verdicts"] == b["verdicts"]);

  CHECK(error_code([] {
          parse_config_text(R"({"category":{"pointed":{"invariant_factors":[2],"qform_matrix":[["1/4"]],"h0":[0]},)"
                            R"("lattice":{"gram":[[2]],"xi":["0"]}}})");
        }) == "cli.ConfigError");
  CHECK(error_code([] { parse_config_text(R"({"category":{}})"); }) == "cli.ConfigError");
  CHECK(error_code([] { parse_config_text(R"({"category":{"builtin":"ising"},"extra":1})"); }) == "cli.ConfigError");
  CHECK(error_code([] { parse_config_text(R"({"category":{"lattice":{"gram":[[2]],"xi":["1/x"]}}})"); }) ==
        "cli.ConfigError");
  CHECK(error_code([] { parse_config_text(R"({"category":{"lattice":{"gram":[[2,0]],"xi":["0"]}}})"); }) ==
        "cli.ConfigError");
  CHECK(error_code([] { parse_config_text("{not json"); }) == "cli.ConfigError");
  CHECK(error_code([] { parse_config_text(R"({"category":{"builtin":"ising"},"tolerance":-1})"); }) == "cli.ConfigError");
  CHECK(error_code([] { parse_config("/nonexistent/config.json"); }) == "cli.ConfigError");

  std::string message;
  try {
    parse_config_text(R"({"category":{"pointed":{"invariant_factors":[2],"qform_matrix":[["1/4"]]}}})");
  } catch (const Error& e) {
    message = e.what();
  }
  CHECK(message.find("/category/pointed/h0") != std::string::npos);
}

TEST_CASE("parse_labels") {
  CHECK(parse_labels("").empty());
  auto l = parse_labels("1,0;0,1");
  REQUIRE(l.size() == 2);
  CHECK(l[0] == oracle::element({1, 0}));
  CHECK(l[1] == oracle::element({0, 1}));
  CHECK(error_code([] { parse_labels("1,x"); }) == "cli.BadLabels");
  CHECK(error_code([] { parse_labels("1;;2"); }) == "cli.BadLabels");
}

TEST_CASE("run examples") {
  auto ff = run_json("inspect", kFeiginFuchs);
  CHECK(ff["verdicts"]["modular"] == false);
  CHECK(ff["verdicts"]["cofactorizable"] == true);
  CHECK(ff["verdicts"]["connected"] == "true");
  CHECK(ff["anomaly"]["defined"] == false);

  Flags g2;
  g2.genus = 2;
  auto blocks = run_json("blocks", kFeiginFuchs, g2);
  CHECK(blocks["results"][0]["dim"] == 0);
  CHECK(blocks["results"][0]["method"] == "direct");

  auto torus = run_text("torus-rep", kFeiginFuchs);
  CHECK(torus.code == kExitCapacity);
  CHECK(torus.err.find("mcg_torus.Unsupported") != std::string::npos);

  Flags glued;
  glued.genus = 1;
  glued.labels = "0;0";
  glued.glued = true;
  auto gl = run_json("blocks", kSemion, glued);
  REQUIRE(gl["results"].size() > 1);
  for (const auto& r : gl["results"]) CHECK(r["dim"] == 2);

  auto lat = run_json("lattice", kFeiginFuchs);
  CHECK(lat["invariant_factors"] == nlohmann::json::array({8}));
  CHECK(run_text("lattice", kSemion).code == kExitCapacity);

  auto tr = run_json("torus-rep", kSemion);
  CHECK(tr["passed"] == true);
  CHECK(tr["c"] == 1.0);

  Flags v;
  v.max_genus = 2;
  auto fib = run_json("verlinde", R"({"category":{"builtin":"fibonacci"}})", v);
  CHECK(fib["table"][1]["nearest"] == 5);
  auto z3 = run_json("verlinde", R"({"category":{"pointed":{"invariant_factors":[3],"qform_matrix":[["1/3"]],"h0":[0]}}})", v);
  CHECK(z3["table"][1]["nearest"] == 9);
  CHECK(z3["table"][1]["direct"] == 9);

  Flags none;
  CHECK(run_text("blocks", kSemion, none).code == kExitValidation);
  CHECK(run_text("frobnicate", kSemion).code == kExitValidation);
  auto invalid = run_text("inspect", R"({"category":{"pointed":{"invariant_factors":[2],"qform_matrix":[["1/3"]],"h0":[0]}}})");
  CHECK(invalid.code == kExitValidation);
  CHECK(invalid.err.find("finite_forms.InvalidQForm") != std::string::npos);

  Flags json;
  json.json = true;
  auto e = run_text("torus-rep", kFeiginFuchs, json);
  auto doc = nlohmann::json::parse(e.out);
  CHECK(doc["error"]["code"] == "mcg_torus.Unsupported");
  CHECK(doc["error"]["kind"] == "unsupported");
}

TEST_CASE("text output renders") {
  auto o = run_text("inspect", kSemion);
  CHECK(o.code == 0);
  CHECK(o.out.find("modular: true") != std::string::npos);
  CHECK(o.out.find("name=ribbon passed=true") != std::string::npos);
}

TEST_CASE("json output is byte-stable") {
  Flags f;
  f.json = true;
  for (const char* cfg : {kSemion, kSemionLattice, kFeiginFuchs, R"({"category":{"builtin":"ising"}})"}) {
    const auto first = run_text("inspect", cfg, f);
    const auto second = run_text("inspect", cfg, f);
    CHECK(first.out == second.out);
    const auto t1 = run_text("torus-rep", cfg, f);
    CHECK(t1.out == run_text("torus-rep", cfg, f).out);
  }
  const auto tr = run_text("torus-rep", kSemion, f);
  CHECK(tr.out.find("0.707106781187") != std::string::npos);
  CHECK(tr.out.find("-0.0") == std::string::npos);
}

TEST_CASE("parser and runner never escape with a foreign exception") {
  const std::vector<std::string> seeds{
      kSemion,
      kSemionLattice,
      kFeiginFuchs,
      R"({"category":{"builtin":"ising"},"tolerance":1e-9,"enumeration_cap":10})",
      R"({"category":{"pointed":{"invariant_factors":[2,2],"qform_matrix":[["0","1/4"],["1/4","0"]],"h0":[1,1]}}})",
  };
  const std::string alphabet = "{}[]\",:/0123456789-abcdefghijklmnopqrstuvwxyz_ .e+";
  std::mt19937_64 rng(99);
  int parsed = 0, rejected = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::string s = seeds[static_cast<std::size_t>(trial) % seeds.size()];
    std::uniform_int_distribution<int> edits(1, 4);
    for (int e = edits(rng); e > 0; --e) {
      std::uniform_int_distribution<std::size_t> pos(0, s.size());
      std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
      const std::size_t p = pos(rng);
      switch (rng() % 3) {
        case 0:
          s.insert(p, 1, alphabet[ch(rng)]);
          break;
        case 1:
          if (p < s.size()) s.erase(p, 1);
          break;
        default:
          if (p < s.size()) s[p] = alphabet[ch(rng)];
      }
    }
    std::string code = error_code([&] {
      Config c = parse_config_text(s);
      std::ostringstream out, err;
      Flags f;
      f.genus = 1;
      f.json = trial % 2 == 0;
      for (const char* sub : {"inspect", "blocks", "torus-rep", "lattice", "verlinde"}) {
        const int rc = run(sub, c, f, out, err);
        if (rc != kExitOk && rc != kExitValidation && rc != kExitCapacity) throw std::runtime_error("bad exit code");
      }
    });
    CHECK(code != "other");
    (code.empty() ? parsed : rejected)++;
  }
  CHECK(parsed > 0);
  CHECK(rejected > 0);
}

}  // TEST_SUITE

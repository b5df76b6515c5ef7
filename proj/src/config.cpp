#include "mfd/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mfd/error.hpp"

namespace mfd {

namespace {

using nlohmann::json;

Error config_error(const std::string& path, const std::string& message) {
  return validation_error("cli.ConfigError", (path.empty() ? std::string("/") : path) + ": " + message);
}

void only_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw config_error(path, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw config_error(path + "/" + key, "unexpected field");
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw config_error(path + "/" + key, "missing field");
  return *it;
}

std::int64_t integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw config_error(path, "expected an integer");
  return v.get<std::int64_t>();
}

Rational rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) throw config_error(path, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    throw config_error(path, e.what());
  }
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) throw config_error(path, "expected an array");
  return v;
}

std::vector<std::int64_t> int_list(const json& v, const std::string& path) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  for (const auto& x : array(v, path)) out.push_back(integer(x, path + "/" + std::to_string(i++)));
  return out;
}

template <typename Scalar, typename Read>
Matrix<Scalar> square_matrix(const json& v, const std::string& path, Read read) {
  const auto& rows = array(v, path);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix<Scalar> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    const auto& row = array(rows[static_cast<std::size_t>(i)], rp);
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw config_error(rp, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = read(row[static_cast<std::size_t>(j)], rp + "/" + std::to_string(j));
  }
  return m;
}

PointedConfig parse_pointed(const json& v, const std::string& path) {
  only_keys(v, path, {"invariant_factors", "qform_matrix", "h0"});
  PointedConfig c;
  c.invariant_factors = int_list(field(v, path, "invariant_factors"), path + "/invariant_factors");
  c.qform_matrix = square_matrix<Rational>(field(v, path, "qform_matrix"), path + "/qform_matrix", rational);
  auto h0 = int_list(field(v, path, "h0"), path + "/h0");
  c.h0 = Element::Map(h0.data(), static_cast<Eigen::Index>(h0.size()));
  if (c.qform_matrix.rows() != static_cast<Eigen::Index>(c.invariant_factors.size()))
    throw config_error(path + "/qform_matrix", "size must equal the number of invariant factors");
  if (h0.size() != c.invariant_factors.size())
    throw config_error(path + "/h0", "length must equal the number of invariant factors");
  return c;
}

LatticeConfig parse_lattice(const json& v, const std::string& path) {
  only_keys(v, path, {"gram", "xi"});
  LatticeConfig c;
  c.gram = square_matrix<std::int64_t>(field(v, path, "gram"), path + "/gram", integer);
  const auto& xi = array(field(v, path, "xi"), path + "/xi");
  if (static_cast<Eigen::Index>(xi.size()) != c.gram.rows())
    throw config_error(path + "/xi", "length must equal the lattice rank");
  c.xi.resize(c.gram.rows());
  for (Eigen::Index i = 0; i < c.gram.rows(); ++i)
    c.xi(i) = rational(xi[static_cast<std::size_t>(i)], path + "/xi/" + std::to_string(i));
  return c;
}

}  // namespace

Config parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw config_error("", std::string("invalid JSON: ") + e.what());
  }
  only_keys(doc, "", {"category", "tolerance", "enumeration_cap"});
  Config cfg;

  const json& cat = field(doc, "", "category");
  only_keys(cat, "/category", {"pointed", "lattice", "builtin"});
  if (cat.size() != 1) throw config_error("/category", "exactly one category (pointed, lattice or builtin) is required");
  if (cat.contains("pointed")) {
    cfg.category = parse_pointed(cat["pointed"], "/category/pointed");
  } else if (cat.contains("lattice")) {
    cfg.category = parse_lattice(cat["lattice"], "/category/lattice");
  } else {
    const json& b = cat["builtin"];
    if (!b.is_string()) throw config_error("/category/builtin", "expected a name string");
    cfg.category = BuiltinConfig{b.get<std::string>()};
  }

  if (doc.contains("tolerance")) {
    const json& t = doc["tolerance"];
    if (!t.is_number() || t.get<double>() <= 0) throw config_error("/tolerance", "expected a positive number");
    cfg.tolerance = t.get<double>();
  }
  if (doc.contains("enumeration_cap")) {
    const std::int64_t cap = integer(doc["enumeration_cap"], "/enumeration_cap");
    if (cap <= 0) throw config_error("/enumeration_cap", "expected a positive integer");
    cfg.enumeration_cap = static_cast<std::size_t>(cap);
  }
  return cfg;
}

Config parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cli.ConfigError", path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace mfd

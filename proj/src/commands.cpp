#include "mfd/commands.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mfd/blocks.hpp"
#include "mfd/error.hpp"
#include "mfd/lattice_data.hpp"
#include "mfd/mcg_torus.hpp"
#include "mfd/pointed_gv.hpp"
#include "mfd/surfaces.hpp"

namespace mfd {

namespace {

using Json = nlohmann::ordered_json;

// Fixed precision keeps reports byte-stable across platforms.
double fixed(double v) {
  double r = std::round(v * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

Json complex_json(Complex z) { return Json::array({fixed(z.real()), fixed(z.imag())}); }

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json element_json(const Element& x) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(x(i));
  return a;
}

Json rational_matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

Json subgroup_json(const Subgroup& h) {
  Json elems = Json::array();
  for (const auto& x : h.elements) elems.push_back(element_json(x));
  return Json{{"order", h.order()}, {"invariant_factors", h.invariant_factors}, {"elements", elems}};
}

struct Resolved {
  std::optional<LatticeData> lattice;
  std::optional<PointedGVCategory> pointed;
  std::optional<ModularData> table;
  std::string source;
};

Resolved resolve(const Config& cfg) {
  Resolved r;
  if (const auto* p = std::get_if<PointedConfig>(&cfg.category)) {
    r.source = "pointed";
    r.pointed = make_category(make_qform(make_group(p->invariant_factors), p->qform_matrix), p->h0);
  } else if (const auto* l = std::get_if<LatticeConfig>(&cfg.category)) {
    r.source = "lattice";
    r.lattice = make_lattice(l->gram, l->xi);
    r.pointed = to_pointed_gv(*r.lattice);
  } else {
    const auto& b = std::get<BuiltinConfig>(cfg.category);
    if (b.name == "pointed")
      throw validation_error("cli.ConfigError", "/category/builtin: use a \"pointed\" category block instead");
    r.source = "builtin:" + b.name;
    r.table = builtin_modular_data(b.name);
  }
  return r;
}

const PointedGVCategory& need_pointed(const Resolved& r, const std::string& cmd) {
  if (!r.pointed) throw unsupported_error("cli.Unsupported", cmd + " needs a pointed or lattice category");
  return *r.pointed;
}

Json category_json(const PointedGVCategory& c, const std::string& source) {
  return Json{{"source", source},
              {"invariant_factors", c.group().invariant_factors()},
              {"order", c.group().order()},
              {"qform_matrix", rational_matrix_json(c.qform().matrix())},
              {"h0", element_json(c.h0())},
              {"g0", element_json(c.g0())}};
}

Json discriminant_json(const LatticeData& l) {
  const DiscriminantGroup disc = discriminant_group(l);
  const PointedGVCategory c = to_pointed_gv(l);
  Json gram = Json::array();
  for (Eigen::Index i = 0; i < l.gram().rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < l.gram().cols(); ++j) row.push_back(l.gram()(i, j));
    gram.push_back(row);
  }
  Json xi = Json::array();
  for (Eigen::Index i = 0; i < l.xi().size(); ++i) xi.push_back(l.xi()(i).str());
  Json lifts = Json::array();
  for (const auto& lift : disc.generator_lifts) {
    Json v = Json::array();
    for (Eigen::Index i = 0; i < lift.size(); ++i) v.push_back(lift(i).str());
    lifts.push_back(v);
  }
  Json snf = Json::array();
  for (Eigen::Index i = 0; i < disc.smith.D.rows(); ++i) snf.push_back(disc.smith.D(i, i));
  return Json{{"gram", gram},
              {"xi", xi},
              {"determinant_abs", disc.determinant_abs},
              {"smith_diagonal", snf},
              {"invariant_factors", disc.group.invariant_factors()},
              {"generator_lifts", lifts},
              {"qform_matrix", rational_matrix_json(c.qform().matrix())},
              {"h0", element_json(c.h0())},
              {"g0", element_json(c.g0())}};
}

Json relations_json(const RelationReport& r) {
  return Json{{"lambda", complex_json(r.lambda)},
              {"residuals", {{"st_cubed", fixed(r.st_cubed)}, {"s_squared", fixed(r.s_squared)}, {"unitarity", fixed(r.unitarity)}}},
              {"tolerance", r.tolerance},
              {"passed", r.passed()}};
}

Json inspect(const Resolved& r, const Config& cfg, double tol) {
  Json out;
  if (r.table) {
    const RelationReport rel = check_relations(*r.table, tol);
    const FusionReport fus = fusion_from_s(*r.table);
    out["category"] = Json{{"source", r.source}, {"labels", r.table->labels}};
    out["relations"] = relations_json(rel);
    out["central_charge_mod8"] = fixed(central_charge_mod8(rel.lambda));
    out["fusion"] = Json{{"max_residual", fixed(fus.max_residual)}, {"integral", fus.max_residual < tol}};
    return out;
  }
  const PointedGVCategory& c = *r.pointed;
  out["category"] = category_json(c, r.source);
  if (r.lattice) out["discriminant"] = discriminant_json(*r.lattice);
  if (c.group().order() <= 64) {
    Json objs = Json::array();
    for (const auto& x : c.group().elements())
      objs.push_back(Json{{"element", element_json(x)},
                          {"q", c.qform()(x).value().str()},
                          {"theta", c.twist(x).value().str()},
                          {"dual", element_json(c.dual(x))}});
    out["objects"] = objs;
  }
  Json axioms = Json::array();
  for (const auto& a : check_axioms(c).results) {
    Json item{{"name", a.name}, {"passed", a.passed}};
    if (!a.passed) item["witness"] = a.witness;
    axioms.push_back(item);
  }
  out["axioms"] = axioms;
  const MuegerCenter m = mueger_center(c);
  out["mueger_center"] = Json{{"transparent", subgroup_json(m.transparent)}, {"balanced", subgroup_json(m.balanced)}};
  const Verdicts v = verdicts(c);
  out["verdicts"] = Json{{"nondegenerate", v.nondegenerate},
                         {"cofactorizable", v.cofactorizable},
                         {"modular", v.modular},
                         {"connected", to_string(v.connected)},
                         {"extension_unique", to_string(v.extension_unique)}};
  const ConnectednessVerdict cv = connectedness_verdict(c);
  out["connectedness"] = Json{{"value", to_string(cv.value)}, {"justification", cv.justification}};
  if (c.h0().isZero() && v.nondegenerate && c.group().order() <= kTorusLimit) {
    const AnomalyReport a = anomaly(c);
    out["anomaly"] = Json{{"defined", true}, {"gamma", complex_json(a.gamma)}, {"c_mod8", fixed(a.central_charge_mod8)}};
  } else {
    out["anomaly"] = Json{{"defined", false},
                          {"reason", !c.h0().isZero() ? "h0 != 0" : (!v.nondegenerate ? "degenerate braiding" : "group too large")}};
  }
  (void)cfg;
  return out;
}

Json blocks(const Resolved& r, const Config& cfg, const Flags& flags) {
  if (!flags.genus) throw validation_error("cli.MissingFlag", "blocks needs --genus");
  const auto raw = parse_labels(flags.labels);
  Json out;
  Json results = Json::array();
  if (r.table) {
    std::vector<std::size_t> idx;
    for (const auto& v : raw) {
      if (v.size() != 1 || v(0) < 0) throw validation_error("cli.BadLabels", "builtin data takes label indices");
      idx.push_back(static_cast<std::size_t>(v(0)));
    }
    const SurfaceSpec s = make_surface(*flags.genus, {});
    const VerlindeReport vr = verlinde_dim(*r.table, s.genus, idx);
    out["surface"] = Json{{"genus", s.genus}, {"labels", idx}};
    results.push_back(Json{{"dim", vr.nearest}, {"method", "verlinde"}, {"residual", fixed(vr.residual)}, {"condition_met", vr.nearest > 0}});
    out["results"] = results;
    return out;
  }
  const PointedGVCategory& c = *r.pointed;
  const SurfaceSpec s = make_surface(*flags.genus, std::vector<Element>(raw.begin(), raw.end()));
  Json labels = Json::array();
  for (const auto& x : s.labels) labels.push_back(element_json(x));
  out["surface"] = Json{{"genus", s.genus}, {"labels", labels}};
  const BlockDimension direct = block_dim_direct(c, s);
  results.push_back(Json{{"dim", direct.dim}, {"method", "direct"}, {"condition_met", direct.condition_met}});
  if (flags.glued) {
    const auto decomps = enumerate_decompositions(s, cfg.enumeration_cap);
    for (std::size_t i = 0; i < decomps.size(); ++i) {
      const std::uint64_t dim = block_dim_glued(c, decomps[i], s.labels);
      results.push_back(Json{{"dim", dim},
                             {"method", "glued"},
                             {"decomposition_id", i},
                             {"decomposition", to_text(decomps[i].dual())},
                             {"condition_met", dim > 0}});
    }
  }
  out["results"] = results;
  return out;
}

Json torus_rep(const Resolved& r, double tol) {
  const ModularData md = r.table ? *r.table : st_matrices(need_pointed(r, "torus-rep"));
  const RelationReport rel = check_relations(md, tol);
  Json out{{"labels", md.labels}, {"S", matrix_json(md.S)}, {"T", matrix_json(md.T)}, {"lambda", complex_json(rel.lambda)}};
  if (r.pointed) {
    const AnomalyReport a = anomaly(*r.pointed);
    out["gauss_sum"] = complex_json(a.gamma);
    out["c"] = fixed(a.central_charge_mod8);
  } else {
    out["c"] = fixed(central_charge_mod8(rel.lambda));
  }
  out["residuals"] = Json{{"st_cubed", fixed(rel.st_cubed)}, {"s_squared", fixed(rel.s_squared)}, {"unitarity", fixed(rel.unitarity)}};
  out["passed"] = rel.passed();
  return out;
}

Json verlinde(const Resolved& r, const Flags& flags) {
  if (flags.max_genus < 1) throw validation_error("cli.BadFlag", "--max-genus must be >= 1");
  const ModularData md = r.table ? *r.table : st_matrices(need_pointed(r, "verlinde"));
  Json rows = Json::array();
  for (int g = 1; g <= flags.max_genus; ++g) {
    const VerlindeReport vr = verlinde_dim(md, g, {});
    Json row{{"genus", g}, {"value", complex_json(vr.value)}, {"nearest", vr.nearest}, {"residual", fixed(vr.residual)}};
    if (r.pointed) row["direct"] = block_dim_direct(*r.pointed, make_surface(g, {})).dim;
    rows.push_back(row);
  }
  return Json{{"labels", md.labels}, {"table", rows}};
}

bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured() && !is_scalar_array(x)) return false;
  return true;
}

bool is_flat_object(const Json& j) {
  if (!j.is_object()) return false;
  for (const auto& [key, value] : j.items()) {
    if (value.is_structured() && !is_scalar_array(value)) return false;
    if (value.is_string() && value.get<std::string>().find('\n') != std::string::npos) return false;
  }
  return true;
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_text(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) {
        std::string s = value.get<std::string>();
        if (s.find('\n') != std::string::npos) {
          os << pad << key << ":\n";
          std::istringstream lines(s);
          for (std::string line; std::getline(lines, line);) os << pad << "  " << line << '\n';
        } else {
          os << pad << key << ": " << s << '\n';
        }
      } else if (!value.is_structured() || is_scalar_array(value)) {
        os << pad << key << ": " << value.dump() << '\n';
      } else {
        os << pad << key << ":\n";
        render_text(value, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (is_flat_object(item)) {
        os << pad << "-";
        for (const auto& [key, value] : item.items()) os << ' ' << key << '=' << scalar_text(value);
        os << '\n';
      } else {
        os << pad << "-\n";
        render_text(item, os, indent + 2);
      }
    }
  } else {
    os << pad << j.dump() << '\n';
  }
}

}  // namespace

std::vector<IntVector> parse_labels(const std::string& text) {
  std::vector<IntVector> out;
  if (text.empty()) return out;
  std::istringstream elems(text);
  for (std::string elem; std::getline(elems, elem, ';');) {
    std::vector<std::int64_t> coords;
    std::istringstream cs(elem);
    for (std::string c; std::getline(cs, c, ',');) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || c.find_first_not_of(" \t", used) != std::string::npos)
        throw validation_error("cli.BadLabels", "cannot read coordinate \"" + c + "\" in --labels \"" + text + "\"");
      coords.push_back(v);
    }
    if (coords.empty()) throw validation_error("cli.BadLabels", "empty element in --labels \"" + text + "\"");
    out.push_back(Eigen::Map<IntVector>(coords.data(), static_cast<Eigen::Index>(coords.size())));
  }
  return out;
}

int report_error(const std::exception& e, bool json, std::ostream& out, std::ostream& err) {
  std::string code = "cli.Internal";
  std::string kind = "internal";
  int exit_code = 1;
  if (const auto* me = dynamic_cast<const Error*>(&e)) {
    code = me->code();
    switch (me->kind()) {
      case ErrorKind::Validation:
        kind = "validation";
        exit_code = kExitValidation;
        break;
      case ErrorKind::Capacity:
        kind = "capacity";
        exit_code = kExitCapacity;
        break;
      case ErrorKind::Unsupported:
        kind = "unsupported";
        exit_code = kExitCapacity;
        break;
    }
  }
  err << "error [" << code << "]: " << e.what() << '\n';
  if (json) out << Json{{"error", {{"code", code}, {"kind", kind}, {"message", e.what()}}}}.dump(2) << '\n';
  return exit_code;
}

int run(const std::string& subcommand, const Config& config, const Flags& flags, std::ostream& out, std::ostream& err) {
  try {
    const double tol = flags.tol.value_or(config.tolerance);
    Json report;
    if (subcommand == "lattice") {
      if (!std::holds_alternative<LatticeConfig>(config.category))
        throw unsupported_error("cli.Unsupported", "lattice needs a lattice category");
      const auto& l = std::get<LatticeConfig>(config.category);
      report = discriminant_json(make_lattice(l.gram, l.xi));
    } else {
      const Resolved r = resolve(config);
      if (subcommand == "inspect") {
        report = inspect(r, config, tol);
      } else if (subcommand == "blocks") {
        report = blocks(r, config, flags);
      } else if (subcommand == "torus-rep") {
        report = torus_rep(r, tol);
      } else if (subcommand == "verlinde") {
        report = verlinde(r, flags);
      } else {
        throw validation_error("cli.UnknownSubcommand", "unknown subcommand \"" + subcommand + "\"");
      }
    }
    if (flags.json) {
      out << report.dump(2) << '\n';
    } else {
      render_text(report, out, 0);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(e, flags.json, out, err);
  }
}

}  // namespace mfd

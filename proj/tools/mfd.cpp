#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mfd/commands.hpp"
#include "mfd/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Modular-functor data for pointed ribbon Grothendieck-Verdier categories"};
  app.require_subcommand(1);

  std::string config_path;
  mfd::Flags flags;
  int genus = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Category configuration (JSON)")->required();
    sub->add_flag("--json", flags.json, "Machine-readable output");
    sub->add_option("--tol", flags.tol, "Numerical tolerance (default from config, 1e-9)");
  };

  auto* inspect = app.add_subcommand("inspect", "Group, axioms, Mueger center, verdicts, anomaly");
  common(inspect);

  auto* blocks = app.add_subcommand("blocks", "Conformal-block dimensions");
  common(blocks);
  blocks->add_option("--genus", genus, "Surface genus")->required();
  blocks->add_option("--labels", flags.labels, "Boundary labels, e.g. \"1,0;0,1\"");
  blocks->add_flag("--glued", flags.glued, "Also evaluate the gluing sum over every pants decomposition");

  auto* torus = app.add_subcommand("torus-rep", "Projective SL(2,Z) representation on the torus");
  common(torus);

  auto* lattice = app.add_subcommand("lattice", "Discriminant group and form of a lattice");
  common(lattice);

  auto* verlinde = app.add_subcommand("verlinde", "Verlinde dimensions of closed surfaces");
  common(verlinde);
  verlinde->add_option("--max-genus", flags.max_genus, "Largest genus in the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mfd::kExitValidation;
  }
  if (blocks->parsed()) flags.genus = genus;

  const std::string subcommand = app.get_subcommands().front()->get_name();
  mfd::Config config;
  try {
    config = mfd::parse_config(config_path);
  } catch (const std::exception& e) {
    return mfd::report_error(e, flags.json, std::cout, std::cerr);
  }
  return mfd::run(subcommand, config, flags, std::cout, std::cerr);
}

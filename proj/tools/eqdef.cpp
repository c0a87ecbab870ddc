#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "eqdef/cli.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant deformations of affine complete intersections"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Print the machine-readable report");

  eqdef::cli::Invocation inv;
  std::vector<std::string> files;
  long truncate = -1;

  auto* check = app.add_subcommand("check", "Stability, regular sequence and group order");
  check->add_option("file", files, "Problem file")->required();

  auto* tangent = app.add_subcommand("tangent", "T0_G, T1 and T1_G");
  tangent->add_option("file", files, "Problem file")->required();
  tangent->add_option("--truncate", truncate, "Degree bound for slices")->check(CLI::NonNegativeNumber);

  auto* obstruction = app.add_subcommand("obstruction", "Obstruction space H1(G, N)");
  obstruction->add_option("file", files, "Problem file")->required();
  obstruction->add_option("--truncate", truncate, "Degree bound for slices")->check(CLI::NonNegativeNumber);

  auto* lift = app.add_subcommand("lift", "Lift the trivial deformation step by step");
  lift->add_option("file", files, "Problem file")->required();
  lift->add_option("--order", inv.order, "Target order")->check(CLI::PositiveNumber);
  lift->add_flag("--enumerate", inv.enumerate, "List the lifts parametrized by T1_G at each step");
  lift->add_option("--truncate", truncate, "Degree bound for slices")->check(CLI::NonNegativeNumber);

  auto* iso = app.add_subcommand("iso", "Isomorphism witness between two deformations");
  iso->add_option("files", files, "Two deformation files")->required()->expected(2);
  iso->add_option("--truncate", truncate, "Degree bound for slices")->check(CLI::NonNegativeNumber);

  auto* ramify = app.add_subcommand("ramify", "Invariant Ext1 at a ramified point");
  ramify->add_option("--d", inv.d, "Different")->required();
  ramify->add_option("--m", inv.m, "Stabilizer order")->required();
  ramify->add_option("--p", inv.p, "Field characteristic (0 for Q)");

  for (auto* sub : {check, tangent, obstruction, lift, iso, ramify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : eqdef::cli::kInputError;
  }

  inv.command = app.get_subcommands().front()->get_name();
  if (truncate >= 0) inv.truncate = truncate;
  for (const auto& f : files) {
    std::string text;
    if (!read_file(f, text)) {
      std::cerr << "error: cannot read " << f << "\n";
      return eqdef::cli::kInputError;
    }
    inv.inputs.push_back(std::move(text));
  }

  auto report = eqdef::cli::run(inv);
  if (!report.error.empty()) std::cerr << "error: " << report.error << "\n";
  if (report.error.empty() || json) std::cout << (json ? report.json() : report.text());
  return report.exit_code;
}

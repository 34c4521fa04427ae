// symctl: controllability analysis of networks with a finite symmetry group.

#include <iostream>

#include <CLI11.hpp>

#include "symctl/cli.hpp"

int main(int argc, char** argv) {
  using namespace symctl;
  cli::RunConfig cfg;
  std::string method = "subspace";
  std::string format;
  std::string irreps;
  std::string design;

  CLI::App app{"Isotypic decomposition and sparse actuator design for symmetric networks"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();
  app.add_option("--tol", cfg.tol.rank_rel,
                 "relative singular-value threshold (scaled by max(rows, cols))")
      ->check(CLI::PositiveNumber);
  app.add_option("--zero-tol", cfg.tol.entry_abs,
                 "absolute threshold for nonzero entries and residuals")
      ->check(CLI::PositiveNumber);
  app.add_option("--method", method, "rank method")
      ->check(CLI::IsMember({"kalman", "subspace", "pbh"}));
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--irreps", irreps, "irrep import file (overrides the spec)")
      ->check(CLI::ExistingFile);
  app.add_flag("--observe", cfg.observe, "sensor placement / observability (dual problem)");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("spec", cfg.input, "network spec JSON")->required()->check(CLI::ExistingFile);
  };
  auto* analyze = app.add_subcommand("analyze", "decomposition, N_Gamma and block spectrum");
  add_input(analyze);
  auto* design_cmd = app.add_subcommand("design", "projection-guided input (or output) selection");
  add_input(design_cmd);
  design_cmd->add_flag("--rank-greedy", cfg.rank_greedy,
                       "skip candidates that do not enlarge the controllable subspace");
  auto* check = app.add_subcommand("check", "rank tests for a given set of state indices");
  add_input(check);
  auto* inputs = check->add_option("--inputs", cfg.inputs, "1-based state indices")
                     ->delimiter(',');
  check->add_option("--design", design, "design report JSON to re-check")
      ->check(CLI::ExistingFile)
      ->excludes(inputs);
  auto* enumerate = app.add_subcommand("enumerate", "test every k-subset of state indices");
  add_input(enumerate);
  enumerate->add_option("-k", cfg.k, "number of inputs")->required();
  enumerate->add_option("--cap", cfg.cap, "maximum number of subsets")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  for (auto* sub : {analyze, design_cmd, check, enumerate}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }
  cfg.method = parse_rank_method(method);
  if (!format.empty()) cfg.format = cli::parse_format(format);
  if (!irreps.empty()) cfg.irreps = irreps;
  if (!design.empty()) cfg.design = design;
  return cli::run(cfg, std::cout, std::cerr);
}

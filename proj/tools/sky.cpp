// sky — circumscriptive Datalog engine.
//
//   sky run FILE [--mode backtrack|enumerate|oracle] [--branch lex|mcf]
//                [--no-dominance] [--max-models N] [--stats] [--force-large]
//   sky check FILE
//   sky compare FILE [--force-large]
//   sky corpus DIR

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sky/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sky — Datalog with guesses under circumscriptive semantics"};
  app.require_subcommand(1);

  std::string file;
  std::string mode = "backtrack";
  std::string branch = "lex";
  bool no_dominance = false;
  bool stats = false;
  bool force_large = false;
  long long max_models = -1;

  CLI::App* run = app.add_subcommand("run", "Solve a program and print its minimal models");
  run->add_option("FILE", file, "program file (.sky)")->required();
  run->add_option("--mode", mode, "backtrack | enumerate | oracle")
      ->check(CLI::IsMember({"backtrack", "enumerate", "oracle"}));
  run->add_option("--branch", branch, "branch order: lex | mcf")
      ->check(CLI::IsMember({"lex", "mcf"}));
  run->add_flag("--no-dominance", no_dominance, "disable dominance pruning");
  run->add_option("--max-models", max_models, "stop after N accepted models")
      ->check(CLI::PositiveNumber);
  run->add_flag("--stats", stats, "emit a JSON stats record after the summary");
  run->add_flag("--force-large", force_large, "override the oracle size guard");

  CLI::App* check = app.add_subcommand("check", "Parse and validate only");
  check->add_option("FILE", file, "program file (.sky)")->required();

  CLI::App* compare = app.add_subcommand("compare", "Run oracle, enumerate and backtrack; verify agreement");
  compare->add_option("FILE", file, "program file (.sky)")->required();
  compare->add_flag("--force-large", force_large, "override the oracle size guard");

  CLI::App* corpus = app.add_subcommand("corpus", "Run every .sky case in a directory");
  corpus->add_option("DIR", file, "corpus directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    sky::run_options opt;
    if (mode == "enumerate") opt.mode = sky::run_mode::enumerate;
    if (mode == "oracle") opt.mode = sky::run_mode::oracle;
    opt.branch = branch == "mcf" ? sky::branch_order::most_constrained_first
                                 : sky::branch_order::lexicographic;
    opt.dominance = !no_dominance;
    if (max_models > 0) opt.max_models = static_cast<std::size_t>(max_models);
    opt.stats = stats;
    opt.force_large = force_large;
    return sky::run_file(file, opt, std::cout, std::cerr);
  }
  if (check->parsed()) return sky::check_file(file, std::cout, std::cerr);
  if (compare->parsed()) return sky::compare_file(file, force_large, std::cout, std::cerr);
  if (corpus->parsed()) return sky::run_corpus(file, std::cout, std::cerr);
  return sky::exit_failure;
}

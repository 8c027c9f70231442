// cmn: command-line front end. See README.md for the command list.
#include <iostream>

#include <CLI11.hpp>

#include "cmn/harness.hpp"

int main(int argc, char** argv) {
  cmn::RunConfig config;
  CLI::App app{"Correlation Minor Norm entanglement and discord toolkit"};
  app.set_help_flag("--help", "print this help and exit");
  app.add_option("command", config.command,
                 "analyze | sweep-pure | sweep-virzi | reproduce-gap | verify-theorems | bounds-table | "
                 "search-max | make-state")
      ->required();
  app.add_option("--input", config.input, "state JSON file (analyze)");
  app.add_option("--output", config.output, "write the report here instead of stdout");
  app.add_option("--h", config.h_list, "minor order h (repeatable)");
  app.add_option("--p", config.p_list, "Schatten exponent p >= 1 or 'inf' (repeatable)");
  app.add_option("--grid", config.grid, "grid resolution per axis (sweeps)")->check(CLI::Range(2, 100000));
  app.add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", config.tol, "command tolerance override");
  app.add_option("--restarts", config.restarts, "discord optimizer restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--threads", config.threads, "worker threads for sweeps (0 = all cores)")->capture_default_str();
  app.add_option("--d-max", config.d_max, "largest local dimension (bounds-table)")->capture_default_str();
  app.add_option("--dim-a", config.dim_a, "d_A (search-max)")->capture_default_str();
  app.add_option("--dim-b", config.dim_b, "d_B (search-max)")->capture_default_str();
  app.add_option("--budget", config.budget, "evaluation budget (search-max)")->capture_default_str();
  app.add_option("--family", config.family, "bell | product | maximally-mixed | werner2 | werner3 | gap | virzi");
  app.add_option("--param", config.param, "family parameter (c or q)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return cmn::run(config, std::cout, std::cerr);
}

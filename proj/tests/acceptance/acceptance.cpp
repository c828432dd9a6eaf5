#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "io.hpp"
#include "kmw/error.hpp"
#include "kmw/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1..14 with pinned time limits"};
  kmw::AcceptanceOptions opt;
  std::string golden = kmw::io::default_golden_path();
  app.add_flag("--quick", opt.quick, "smaller grids for the slowest criteria");
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_option("--golden", golden, "golden table path");
  app.add_option("--only", opt.only, "criterion ids")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  try {
    opt.type_table = kmw::io::load_type_table(golden);
  } catch (const kmw::InvalidInput& e) {
    std::cerr << "cannot load golden table: " << e.what() << "\n";
  }
  opt.on_result = [](const kmw::CriterionResult& r) {
    std::printf("%s criterion %2d: %s (%.3fs, limit %gs) %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.limit, r.detail.c_str());
    std::fflush(stdout);
  };
  bool ok = true;
  for (const auto& r : kmw::run_acceptance(opt)) ok = ok && r.pass;
  std::printf("acceptance: %s\n", ok ? "pass" : "fail");
  return ok ? 0 : 1;
}

#include "dseq/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace dseq::cli {

namespace {

int emit(const RunResult& r, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << r.report.to_jsonl();
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << r.report.to_jsonl();
  }
  std::cerr << r.report.human_summary();
  return r.exit_code;
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Double sequence toolkit: difference operators, sequence spaces, duals and 4D matrix classes"};
  app.set_version_flag("--version", "dseq 0.1.0");

  std::string config;
  std::string mode_text;
  std::string out_path;
  Overrides ov;
  app.add_option("--config", config, "INI job file")->check(CLI::ExistingFile);
  app.add_option("--mode", mode_text, "exact or float (default: DSEQ_MODE, then exact)");
  app.add_option("--epsilon", ov.epsilon, "limit tolerance")->check(CLI::PositiveNumber);
  app.add_option("--window", ov.window, "anti-diagonals read for limits")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "report path (default: stdout)");
  app.add_option("--seed", ov.seed, "seed for random families without their own");
  app.add_option("--size", ov.size, "truncation size for every sequence and matrix");
  app.add_option("--threads", ov.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timestamp", ov.timestamp, "record the UTC time in the report");

  auto* verify_cmd = app.add_subcommand("verify", "run a module's invariant battery");
  verify_cmd->fallthrough();
  std::string suite = "all";
  verify_cmd->add_option("suite", suite, "diffops, summation, duals, matrix4d or all")
      ->check(CLI::IsMember(verify_suites()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (mode_text.empty()) {
      const char* env = std::getenv("DSEQ_MODE");
      if (env && *env) mode_text = env;
    }
    if (!mode_text.empty()) ov.mode = parse_mode(mode_text);

    if (*verify_cmd) {
      RunResult r = verify(suite, ov.size.value_or(8), ov.seed.value_or(1), ov.mode.value_or(Mode::exact),
                           ov.threads.value_or(1));
      return emit(r, out_path);
    }
    if (config.empty()) {
      std::cerr << "error: --config is required (or use the verify subcommand)\n";
      return 2;
    }
    return emit(run_file(config, ov), out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace dseq::cli

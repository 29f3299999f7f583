// Command-line front end: one JSON config per run, one subcommand per output.
#include "nhdyn/config.hpp"
#include "nhdyn/errors.hpp"
#include "nhdyn/run.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Evolution under time-dependent non-Hermitian Hamiltonians with su(2)/su(1,1) structure"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<double> rtol, atol;
  bool timing = false;

  for (const char* name : {"decompose", "flow", "evolve", "verify", "spectrum"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run description")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--rtol", rtol, "override tolerances.rtol");
    sub->add_option("--atol", atol, "override tolerances.atol");
    sub->add_flag("--timing", timing, "add wall-clock time to the verify report (breaks byte determinism)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? nhdyn::exit_ok : nhdyn::exit_error;
  }

  try {
    const nhdyn::Command cmd = nhdyn::parse_command(app.get_subcommands().front()->get_name());
    nhdyn::RunConfig cfg = nhdyn::load_config(config_path);
    if (rtol) cfg.tolerances.rtol = *rtol;
    if (atol) cfg.tolerances.atol = *atol;
    cfg.tolerances.validate();

    nhdyn::RunReport report = nhdyn::run(cmd, cfg, out_dir);
    if (timing && cmd == nhdyn::Command::verify) {
      std::cout << nhdyn::report_json(report, true) << '\n';
    }
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
    return nhdyn::exit_code(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return nhdyn::exit_error;
  }
}

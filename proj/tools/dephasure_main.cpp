// dephasure: cavity-mode dephasing from an acoustic-mode environment.
//
//   dephasure <evolve|validate|report|sweep> --config <path> [--out <dir>]
//             [--enforce-validity]

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dephasure/config.hpp"
#include "dephasure/quadrature.hpp"
#include "dephasure/runner.hpp"

namespace {

struct Args {
  std::string config_path;
  dephasure::io::RunOptions options;
};

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config_path, "run configuration file")
      ->required();
  cmd->add_option("--out", args.options.out_dir, "output directory");
  cmd->add_flag("--enforce-validity", args.options.enforce_validity,
                "fail (exit 4) when the device validity condition is violated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and approximate dephasing dynamics of a cavity mode "
               "coupled to a dense acoustic bath"};
  app.require_subcommand(1);

  Args args;
  const char* subcommands[] = {"evolve", "validate", "report", "sweep"};
  const char* descriptions[] = {
      "time series of the exponent terms and coherences per Fock pair",
      "cross-check closed forms, quadrature and discrete sums; emit figure data",
      "derived device constants and headline dephasing estimates",
      "one summary row per swept parameter value"};
  for (int i = 0; i < 4; ++i) {
    add_common(app.add_subcommand(subcommands[i], descriptions[i]), args);
  }

  CLI11_PARSE(app, argc, argv);

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    const auto config = dephasure::io::parse_config_file(args.config_path);
    return dephasure::io::run_subcommand(config, sub, args.options, std::cout,
                                         std::cerr);
  } catch (const dephasure::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dephasure::bath::UnsupportedModelError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dephasure::quad::AccuracyError& e) {
    std::cerr << "numerical accuracy error: " << e.what()
              << " (best estimate " << e.best_estimate << ", bound "
              << e.error_bound << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

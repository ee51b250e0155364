#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "nls/experiments.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
};

int execute(const std::string& experiment, const CommonOptions& opts) {
  nls::Config config = opts.config_path.empty()
                           ? nls::Config{}
                           : nls::Config::parse_file(opts.config_path);
  config.set("experiment", experiment);
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--set expects key=value, got '" << kv << "'\n";
      return 2;
    }
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  const std::filesystem::path out =
      opts.out_dir.empty() ? std::filesystem::path("out-" + experiment)
                           : std::filesystem::path(opts.out_dir);

  const nls::RunReport report = nls::run(config, out);
  if (!report.error.empty())
    std::cout << "[ERROR] " << report.error << "\n";
  for (const auto& c : report.criteria)
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": measured "
              << c.measured << " " << c.comparator << " " << c.tolerance
              << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
  for (const auto& f : report.files) std::cout << "wrote " << f << "\n";
  std::cout << (report.all_pass() ? "PASS" : "FAIL") << " (run " << report.run_id
            << ")\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-step Fourier simulator and conservation-law checker for "
               "the power-law Schroedinger equation"};
  app.require_subcommand(1);

  const std::vector<std::string> experiments = {
      "momentum", "pc-balance",  "e1-balance", "lens-equivalence",
      "decay",    "convergence", "exponents"};
  CommonOptions opts;
  for (const auto& name : experiments) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", opts.config_path, "configuration file");
    sub->add_option("--set", opts.overrides, "override: key=value")
        ->take_all()
        ->allow_extra_args(false);
    sub->add_option("--out", opts.out_dir, "output directory");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    return execute(experiment, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

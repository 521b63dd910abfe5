#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>
#include <utility>

#include "lfe/errors.hpp"
#include "lfe/experiment.hpp"

namespace {

// Flags shared by every subcommand; each is kept as text and applied after the config file.
const std::pair<const char*, const char*> kKeys[] = {
    {"curve", "smooth | rough | file:PATH"},
    {"K", "background cells per axis"},
    {"T", "extension period factor"},
    {"gamma", "oversampling ratio"},
    {"n", "Fourier order N"},
    {"refine", "output refinement per node interval"},
    {"eps-rel", "relative SVD truncation"},
    {"cover", "smooth covers on curved patches (on/off)"},
    {"cover-degree", "cover polynomial degree"},
    {"cover-delta0", "cover offset (0 selects 1e-3 of the box diagonal)"},
    {"func", "test function: sinxy, u1, u2, f1..f4, sepexp(wx,wy)"},
    {"out", "output directory"},
    {"threads", "worker threads (0 uses all cores)"},
    {"seed", "random seed"},
    {"repeats", "timing repeats for bench"}};

const std::pair<const char*, const char*> kCommands[] = {
    {"partition", "classify the background grid and write the patch database"},
    {"approx", "approximate a test function on the domain and report errors"},
    {"calibrate", "run the T and N calibration sweeps on the unit patch"},
    {"bench", "time the solver at K/2, K and 2K"}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patchwise local Fourier extension approximation on curved 2D domains"};
  app.require_subcommand(1);
  std::map<std::string, std::string> flags;
  std::string config_path;
  for (const auto& [cmd, about] : kCommands) {
    auto* sub = app.add_subcommand(cmd, about);
    for (const auto& [k, help] : kKeys) sub->add_option(std::string("--") + k, flags[k], help);
    sub->add_option("--config", config_path, "key=value configuration file; flags take precedence");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  lfe::RunConfig cfg;
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) lfe::apply_config_file(cfg, config_path);
    auto* sub = app.get_subcommands().front();
    for (const auto& [k, help] : kKeys)
      if (sub->count(std::string("--") + k) > 0) lfe::apply_setting(cfg, k, flags[k]);
  } catch (const lfe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lfe::exit_code(e.kind());
  }
  return lfe::run_experiment(cfg, std::cout);
}

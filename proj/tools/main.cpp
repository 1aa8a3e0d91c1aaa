#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rads/cli/commands.hpp"
#include "rads/cli/manifest.hpp"
#include "rads/device.hpp"
#include "rads/error.hpp"

namespace {

void add_common(CLI::App* sub, rads::cli::CommonOpts& opts) {
  sub->add_option("--config", opts.config_path, "config file (else $RADS_CONFIG, else built-in)")
      ->check(CLI::ExistingFile);
  sub->add_option("-o,--out", opts.out_dir, "output directory")->capture_default_str();
  sub->add_option("--seed", opts.seed, "disorder RNG seed");
  sub->add_option("--disorder", opts.disorder_pct, "coupling disorder band, percent of g");
  sub->add_option("--crosstalk", opts.crosstalk_mhz, "qubit-qubit crosstalk band in MHz");
  sub->add_option("--engine", opts.engine, "propagation engine")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, rads::EngineKind>{{"reference", rads::EngineKind::Reference},
                                                  {"integrator", rads::EngineKind::Integrator}},
          CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collective qubit-resonator dynamics"};
  app.set_version_flag("--version", std::string(rads::cli::kVersion));
  app.require_subcommand(1);

  rads::cli::CommonOpts opts;

  int sup_n = 1;
  auto* sup = app.add_subcommand("superradiance", "N-qubit bright state emission");
  sup->add_option("-n,--n", sup_n, "register size")->required()->check(CLI::PositiveNumber);
  add_common(sup, opts);

  int sub_n = 2, sub_m = 1;
  auto* sub = app.add_subcommand("subradiance", "dark spin-wave storage");
  sub->add_option("-n,--n", sub_n, "register size")->required()->check(CLI::PositiveNumber);
  sub->add_option("-m,--m", sub_m, "spin-wave index")->capture_default_str();
  add_common(sub, opts);

  std::vector<int> scaling_ns;
  auto* sca = app.add_subcommand("scaling", "emission frequency vs register size");
  sca->add_option("-n,--n", scaling_ns, "register sizes (default 1..10)");
  add_common(sca, opts);

  int swi_n = 2;
  double swi_store = 100.0;
  auto* swi = app.add_subcommand("switch", "dark-to-bright phase switching");
  swi->add_option("-n,--n", swi_n, "register size")->required()->check(CLI::PositiveNumber);
  swi->add_option("-t,--t-store", swi_store, "storage time in ns")->capture_default_str();
  add_common(swi, opts);

  int abs_n = 3;
  auto* abs = app.add_subcommand("absorb", "photon absorption by a stored dark state");
  abs->add_option("-n,--n", abs_n, "register size")->required()->check(CLI::PositiveNumber);
  add_common(abs, opts);

  int singlet_photon = 0;
  auto* sing = app.add_subcommand("singlet", "four-qubit singlet pair evolution");
  sing->add_option("-p,--photon", singlet_photon, "initial resonator photon number")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  add_common(sing, opts);

  std::string run_path;
  auto* runc = app.add_subcommand("run", "execute a schedule file");
  runc->add_option("schedule", run_path, "schedule file")->required()->check(CLI::ExistingFile);
  add_common(runc, opts);

  std::string verify_path;
  std::optional<int> verify_k;
  auto* ver = app.add_subcommand("verify", "check the excitation sum rule on a trajectory CSV");
  ver->add_option("csv", verify_path, "trajectory CSV")->required()->check(CLI::ExistingFile);
  ver->add_option("-k,--k", verify_k, "expected excitation number (default: nearest integer)");

  std::string fit_path, fit_column = "photon_p1";
  bool fit_damped = false;
  auto* fit = app.add_subcommand("fit", "fit a cosine to a trajectory column");
  fit->add_option("csv", fit_path, "trajectory CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("-c,--column", fit_column, "column to fit")->capture_default_str();
  fit->add_flag("--damped", fit_damped, "include an exponential decay envelope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sup) return rads::cli::cmd_superradiance(sup_n, opts);
    if (*sub) return rads::cli::cmd_subradiance(sub_n, sub_m, opts);
    if (*sca) return rads::cli::cmd_scaling(scaling_ns, opts);
    if (*swi) return rads::cli::cmd_switch(swi_n, swi_store, opts);
    if (*abs) return rads::cli::cmd_absorb(abs_n, opts);
    if (*sing) return rads::cli::cmd_singlet(singlet_photon, opts);
    if (*runc) return rads::cli::cmd_run(run_path, opts);
    if (*ver) return rads::cli::cmd_verify(verify_path, verify_k);
    if (*fit) return rads::cli::cmd_fit(fit_path, fit_column, fit_damped);
  } catch (const rads::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rads/device.hpp"

namespace rads::cli {

// Shared flags.  Config resolution: --config beats $RADS_CONFIG beats the
// built-in homogeneous device; the remaining fields override single keys.
struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<double> disorder_pct;
  std::optional<double> crosstalk_mhz;
  std::optional<EngineKind> engine;
};

int cmd_superradiance(int n, const CommonOpts& opts);
int cmd_subradiance(int n, int m, const CommonOpts& opts);
int cmd_scaling(std::vector<int> ns, const CommonOpts& opts);
int cmd_switch(int n, double t_store_ns, const CommonOpts& opts);
int cmd_absorb(int n, const CommonOpts& opts);
int cmd_singlet(int photon, const CommonOpts& opts);
int cmd_run(const std::string& schedule_path, const CommonOpts& opts);
int cmd_verify(const std::string& csv_path, std::optional<int> excitation);
int cmd_fit(const std::string& csv_path, const std::string& column, bool damped);

}  // namespace rads::cli

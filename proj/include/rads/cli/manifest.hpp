#pragma once

#include <cstdint>
#include <string>

namespace rads::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunManifest {
  std::string experiment;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::string engine;
  std::string version = kVersion;
  std::string timestamp;       // ISO 8601 UTC, stamped at write time if empty
  int excitation = 0;          // sector k during the probe, consumed by `verify`
  double switch_time_ns = -1;  // >= 0 only on switch runs
};

std::string to_json(const RunManifest& manifest);
void write_manifest(const std::string& path, RunManifest manifest);
std::string utc_timestamp();

}  // namespace rads::cli

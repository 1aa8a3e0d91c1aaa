#include "rads/cli/manifest.hpp"

#include <ctime>
#include <fstream>

#include <json.hpp>

#include "rads/error.hpp"

namespace rads::cli {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_json(const RunManifest& m) {
  nlohmann::json j{
      {"experiment", m.experiment}, {"n", m.n},
      {"m", m.m},                   {"seed", m.seed},
      {"config_digest", m.config_digest}, {"engine", m.engine},
      {"version", m.version},       {"timestamp", m.timestamp},
      {"excitation", m.excitation},
  };
  if (m.switch_time_ns >= 0.0) j["switch_time_ns"] = m.switch_time_ns;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, RunManifest manifest) {
  if (manifest.timestamp.empty()) manifest.timestamp = utc_timestamp();
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << to_json(manifest);
}

}  // namespace rads::cli

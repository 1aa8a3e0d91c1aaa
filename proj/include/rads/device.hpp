#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rads {

// Per-segment frequency setting of one qubit, in the frame rotating at the
// resonator frequency.
//   Resonant    detuning 0, coupled
//   Detuned(d)  detuning d MHz, coupled
//   Idle        sugar for Detuned(omega_idle_j - omega_r)
//   Off         removed from the dynamics (coupling dropped, state frozen);
//               what a schedule means by "this qubit is not in use"
enum class Mode { Resonant, Detuned, Idle, Off };

struct QubitSetting {
  Mode mode = Mode::Off;
  double detuning_mhz = 0.0;  // meaningful for Detuned only

  static QubitSetting resonant() { return {Mode::Resonant, 0.0}; }
  static QubitSetting detuned(double mhz) { return {Mode::Detuned, mhz}; }
  static QubitSetting idle() { return {Mode::Idle, 0.0}; }
  static QubitSetting off() { return {Mode::Off, 0.0}; }

  bool operator==(const QubitSetting&) const = default;
};

// Static description of the chip: one bus resonator, n frequency-tunable
// qubits coupled to it, optional direct qubit-qubit crosstalk.
struct DeviceConfig {
  double omega_r_ghz = 5.69;            // resonator, ordinary frequency
  std::vector<double> omega_idle_ghz;   // per-qubit idle frequency
  std::vector<double> g_mhz;            // per-qubit coupling to the resonator
  Eigen::MatrixXd chi_mhz;              // symmetric crosstalk, zero diagonal
  int n_max = 0;                        // photon cutoff; 0 = auto (k + 1)

  int n_qubits() const { return static_cast<int>(g_mhz.size()); }
  double idle_detuning_mhz(int qubit) const;

  // Hard errors throw; soft issues (idle frequency outside the 5-6 GHz
  // tunable band) come back as warning strings.
  std::vector<std::string> validate() const;

  static DeviceConfig homogeneous(int n_qubits, double g_mhz = 13.5,
                                  double omega_r_ghz = 5.69,
                                  double omega_idle_ghz = 5.39);
};

// Seeded imperfections: relative coupling disorder and a random symmetric
// crosstalk matrix with entries uniform in [-band, +band].
struct DisorderSpec {
  double g_percent = 0.0;
  double crosstalk_mhz = 0.0;
  std::uint64_t seed = 0;

  bool any() const { return g_percent != 0.0 || crosstalk_mhz != 0.0; }
  bool operator==(const DisorderSpec&) const = default;
};

DeviceConfig apply_disorder(DeviceConfig base, const DisorderSpec& spec);

enum class EngineKind { Reference, Integrator };

EngineKind parse_engine_kind(const std::string& name);
std::string engine_kind_name(EngineKind kind);

// Parsed contents of a device configuration file: sections
// [device], [disorder], [engine] in a line-oriented key = value format.
struct ConfigFile {
  DeviceConfig device;
  DisorderSpec disorder;
  EngineKind engine = EngineKind::Reference;
  std::vector<std::string> warnings;

  // Digest over the parsed values (canonical order), so two files with the
  // same settings in a different key order hash identically.
  std::string digest() const;
};

ConfigFile parse_config(std::istream& in, const std::string& origin = "<config>");
ConfigFile load_config_file(const std::string& path);

// Built-in homogeneous 11-qubit device used when no config file is given.
const std::string& default_config_text();
ConfigFile default_config();

}  // namespace rads

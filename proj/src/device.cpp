#include "rads/device.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <tuple>

#include "rads/error.hpp"

namespace rads {

double DeviceConfig::idle_detuning_mhz(int qubit) const {
  return (omega_idle_ghz.at(qubit) - omega_r_ghz) * 1e3;
}

std::vector<std::string> DeviceConfig::validate() const {
  const int n = n_qubits();
  if (n < 1) throw Error("device: at least one qubit required");
  if (static_cast<int>(omega_idle_ghz.size()) != n)
    throw Error("device: omega_idle_ghz has " + std::to_string(omega_idle_ghz.size()) +
                " entries for " + std::to_string(n) + " qubits");
  for (int j = 0; j < n; ++j)
    if (!(g_mhz[j] > 0.0))
      throw Error("device: coupling g of qubit " + std::to_string(j + 1) + " must be > 0");
  if (chi_mhz.size() != 0) {
    if (chi_mhz.rows() != n || chi_mhz.cols() != n)
      throw Error("device: crosstalk matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      if (chi_mhz(j, j) != 0.0)
        throw Error("device: crosstalk diagonal must be zero");
      for (int k = j + 1; k < n; ++k)
        if (chi_mhz(j, k) != chi_mhz(k, j))
          throw Error("device: crosstalk matrix must be symmetric");
    }
  }
  if (n_max < 0) throw Error("device: n_max must be >= 0");

  std::vector<std::string> warnings;
  for (int j = 0; j < n; ++j) {
    const double f = omega_idle_ghz[j];
    if (f < 5.0 || f > 6.0) {
      std::ostringstream os;
      os << "qubit " << (j + 1) << " idle frequency " << f
         << " GHz is outside the 5-6 GHz tunable band";
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

DeviceConfig DeviceConfig::homogeneous(int n_qubits, double g_mhz, double omega_r_ghz,
                                       double omega_idle_ghz) {
  DeviceConfig c;
  c.omega_r_ghz = omega_r_ghz;
  c.omega_idle_ghz.assign(n_qubits, omega_idle_ghz);
  c.g_mhz.assign(n_qubits, g_mhz);
  c.chi_mhz = Eigen::MatrixXd::Zero(n_qubits, n_qubits);
  return c;
}

namespace {

// Deterministic uniform in [-1, 1); the standard distributions are not
// pinned across library implementations, the raw engine output is.
double symmetric_uniform(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
  return 2.0 * u - 1.0;
}

}  // namespace

DeviceConfig apply_disorder(DeviceConfig base, const DisorderSpec& spec) {
  if (!spec.any()) return base;
  const int n = base.n_qubits();
  std::mt19937_64 rng(spec.seed);
  // Draw order is part of the output contract: g multipliers for qubits
  // 0..n-1 first, then chi entries row-major over pairs j < k.
  for (int j = 0; j < n; ++j) {
    const double u = symmetric_uniform(rng);
    if (spec.g_percent != 0.0) base.g_mhz[j] *= 1.0 + spec.g_percent / 100.0 * u;
  }
  if (base.chi_mhz.size() == 0) base.chi_mhz = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const double u = symmetric_uniform(rng);
      if (spec.crosstalk_mhz != 0.0) {
        base.chi_mhz(j, k) += spec.crosstalk_mhz * u;
        base.chi_mhz(k, j) = base.chi_mhz(j, k);
      }
    }
  return base;
}

EngineKind parse_engine_kind(const std::string& name) {
  if (name == "reference") return EngineKind::Reference;
  if (name == "integrator") return EngineKind::Integrator;
  throw Error("unknown engine '" + name + "' (expected reference|integrator)");
}

std::string engine_kind_name(EngineKind kind) {
  return kind == EngineKind::Reference ? "reference" : "integrator";
}

// ---------------------------------------------------------------------------
// config file parsing

namespace {

struct KeyValue {
  std::string section;
  std::string key;
  std::vector<std::string> values;
  int line;
};

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& tok, const std::string& origin, int line) {
  double v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    throw Error(origin + ":" + std::to_string(line) + ": malformed number '" + tok + "'");
  return v;
}

long long parse_int(const std::string& tok, const std::string& origin, int line) {
  long long v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    throw Error(origin + ":" + std::to_string(line) + ": malformed integer '" + tok + "'");
  return v;
}

}  // namespace

ConfigFile parse_config(std::istream& in, const std::string& origin) {
  std::vector<KeyValue> entries;
  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(origin + ":" + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "device" && section != "disorder" && section != "engine")
        throw Error(origin + ":" + std::to_string(lineno) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    if (section.empty())
      throw Error(origin + ":" + std::to_string(lineno) + ": key outside of any section");
    KeyValue kv;
    kv.section = section;
    kv.key = trim(line.substr(0, eq));
    kv.line = lineno;
    std::istringstream vs(line.substr(eq + 1));
    std::string tok;
    while (vs >> tok) kv.values.push_back(tok);
    if (kv.key.empty() || kv.values.empty())
      throw Error(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    entries.push_back(std::move(kv));
  }

  ConfigFile cfg;
  int qubits = 0;
  double omega_r = 5.69;
  std::vector<double> idle, g;
  std::vector<std::tuple<int, int, double>> chi_entries;
  int n_max = 0;
  double idle_default_ghz = 5.39;

  auto one = [&](const KeyValue& kv) -> const std::string& {
    if (kv.values.size() != 1)
      throw Error(origin + ":" + std::to_string(kv.line) + ": key '" + kv.key +
                  "' takes exactly one value");
    return kv.values[0];
  };

  for (const auto& kv : entries) {
    if (kv.section == "device") {
      if (kv.key == "qubits") {
        qubits = static_cast<int>(parse_int(one(kv), origin, kv.line));
      } else if (kv.key == "omega_r_ghz") {
        omega_r = parse_double(one(kv), origin, kv.line);
      } else if (kv.key == "omega_idle_ghz") {
        idle.clear();
        for (const auto& t : kv.values) idle.push_back(parse_double(t, origin, kv.line));
      } else if (kv.key == "g_mhz") {
        g.clear();
        for (const auto& t : kv.values) g.push_back(parse_double(t, origin, kv.line));
      } else if (kv.key == "n_max") {
        n_max = static_cast<int>(parse_int(one(kv), origin, kv.line));
      } else if (kv.key == "chi_mhz") {
        if (kv.values.size() != 3)
          throw Error(origin + ":" + std::to_string(kv.line) +
                      ": chi_mhz takes 'qubit qubit value'");
        chi_entries.emplace_back(static_cast<int>(parse_int(kv.values[0], origin, kv.line)),
                                 static_cast<int>(parse_int(kv.values[1], origin, kv.line)),
                                 parse_double(kv.values[2], origin, kv.line));
      } else {
        throw Error(origin + ":" + std::to_string(kv.line) + ": unknown device key '" + kv.key + "'");
      }
    } else if (kv.section == "disorder") {
      if (kv.key == "g_percent") {
        cfg.disorder.g_percent = parse_double(one(kv), origin, kv.line);
      } else if (kv.key == "crosstalk_mhz") {
        cfg.disorder.crosstalk_mhz = parse_double(one(kv), origin, kv.line);
      } else if (kv.key == "seed") {
        cfg.disorder.seed = static_cast<std::uint64_t>(parse_int(one(kv), origin, kv.line));
      } else {
        throw Error(origin + ":" + std::to_string(kv.line) + ": unknown disorder key '" + kv.key + "'");
      }
    } else {  // engine
      if (kv.key == "kind") {
        cfg.engine = parse_engine_kind(one(kv));
      } else {
        throw Error(origin + ":" + std::to_string(kv.line) + ": unknown engine key '" + kv.key + "'");
      }
    }
  }

  if (qubits <= 0) {
    qubits = static_cast<int>(std::max(idle.size(), g.size()));
    if (qubits <= 0) throw Error(origin + ": device qubit count not given");
  }
  auto expand = [&](std::vector<double> v, double fallback, const char* what) {
    if (v.empty()) v.assign(qubits, fallback);
    if (v.size() == 1) v.assign(qubits, v[0]);
    if (static_cast<int>(v.size()) != qubits)
      throw Error(origin + ": " + what + " needs 1 or " + std::to_string(qubits) + " values, got " +
                  std::to_string(v.size()));
    return v;
  };

  cfg.device.omega_r_ghz = omega_r;
  cfg.device.omega_idle_ghz = expand(idle, idle_default_ghz, "omega_idle_ghz");
  cfg.device.g_mhz = expand(g, 13.5, "g_mhz");
  cfg.device.n_max = n_max;
  cfg.device.chi_mhz = Eigen::MatrixXd::Zero(qubits, qubits);
  for (auto [a, b, v] : chi_entries) {
    if (a < 1 || a > qubits || b < 1 || b > qubits || a == b)
      throw Error(origin + ": chi_mhz qubit pair " + std::to_string(a) + "," + std::to_string(b) +
                  " out of range");
    cfg.device.chi_mhz(a - 1, b - 1) = v;
    cfg.device.chi_mhz(b - 1, a - 1) = v;
  }

  cfg.warnings = cfg.device.validate();
  return cfg;
}

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

// ---------------------------------------------------------------------------
// digest

namespace {

void fnv_append(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
}

std::string shortest(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace

std::string ConfigFile::digest() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64 offset basis
  std::ostringstream os;
  os << "omega_r=" << shortest(device.omega_r_ghz) << ";idle=";
  for (double v : device.omega_idle_ghz) os << shortest(v) << ",";
  os << ";g=";
  for (double v : device.g_mhz) os << shortest(v) << ",";
  os << ";chi=";
  for (int j = 0; j < device.chi_mhz.rows(); ++j)
    for (int k = j + 1; k < device.chi_mhz.cols(); ++k)
      if (device.chi_mhz(j, k) != 0.0)
        os << j << ":" << k << ":" << shortest(device.chi_mhz(j, k)) << ",";
  os << ";n_max=" << device.n_max;
  os << ";disorder=" << shortest(disorder.g_percent) << "," << shortest(disorder.crosstalk_mhz)
     << "," << disorder.seed;
  os << ";engine=" << engine_kind_name(engine);
  fnv_append(h, os.str());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::string& default_config_text() {
  static const std::string text =
      "# rads default device: 11 homogeneous qubits on one bus resonator\n"
      "[device]\n"
      "qubits = 11\n"
      "omega_r_ghz = 5.69\n"
      "omega_idle_ghz = 5.39\n"
      "g_mhz = 13.5\n"
      "n_max = 0\n"
      "\n"
      "[disorder]\n"
      "g_percent = 0\n"
      "crosstalk_mhz = 0\n"
      "seed = 1\n"
      "\n"
      "[engine]\n"
      "kind = reference\n";
  return text;
}

ConfigFile default_config() {
  std::istringstream in(default_config_text());
  return parse_config(in, "<default>");
}

}  // namespace rads

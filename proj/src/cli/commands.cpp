#include "rads/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "rads/analysis.hpp"
#include "rads/cli/csvio.hpp"
#include "rads/cli/manifest.hpp"
#include "rads/error.hpp"
#include "rads/evolve.hpp"
#include "rads/format.hpp"
#include "rads/schedule.hpp"

namespace rads::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Prepared {
  ConfigFile cfg;       // effective config, CLI overrides applied
  DeviceConfig device;  // disorder applied
};

Prepared prepare(const CommonOpts& o) {
  ConfigFile cfg;
  if (!o.config_path.empty()) {
    cfg = load_config_file(o.config_path);
  } else if (const char* env = std::getenv("RADS_CONFIG"); env && *env) {
    cfg = load_config_file(env);
  } else {
    cfg = default_config();
  }
  if (o.disorder_pct) cfg.disorder.g_percent = *o.disorder_pct;
  if (o.crosstalk_mhz) cfg.disorder.crosstalk_mhz = *o.crosstalk_mhz;
  if (o.seed) cfg.disorder.seed = *o.seed;
  if (o.engine) cfg.engine = *o.engine;
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  DeviceConfig device = apply_disorder(cfg.device, cfg.disorder);
  return {std::move(cfg), std::move(device)};
}

// Gate timing follows the design coupling, not the disordered samples, the
// way a calibrated pulse table would.
double nominal_g_mhz(const DeviceConfig& base, int qubits_used) {
  double sum = 0.0;
  for (int j = 0; j < qubits_used; ++j) sum += base.g_mhz[j];
  return sum / qubits_used;
}

void require_register(const Prepared& p, int n) {
  const int limit = p.cfg.device.n_qubits() - 1;
  if (n < 1 || n > limit)
    throw Error("n = " + std::to_string(n) + " outside 1.." + std::to_string(limit) +
                " (one device qubit is reserved as the ancilla)");
}

json fit_json(const RabiFit& f) {
  if (!f.oscillation)
    return json{{"oscillation", false},
                {"note", "no oscillation detected"},
                {"offset", f.offset},
                {"residual_rms", f.residual_rms}};
  return json{{"oscillation", true},       {"frequency_mhz", f.frequency_mhz},
              {"amplitude", f.amplitude},  {"peak_to_peak", f.peak_to_peak()},
              {"offset", f.offset},        {"phase_rad", f.phase_rad},
              {"residual_rms", f.residual_rms}, {"iterations", f.iterations}};
}

json conservation_json(const ConservationReport& r) {
  return json{{"max_norm_dev", r.max_norm_dev},
              {"max_sum_dev", r.max_sum_dev},
              {"max_energy_dev", r.max_energy_dev}};
}

struct OutputSet {
  std::string csv, manifest, summary, plot;
};

OutputSet out_paths(const std::string& out_dir, const std::string& stem) {
  fs::create_directories(out_dir);
  const std::string base = (fs::path(out_dir) / stem).string();
  return {base + ".csv", base + ".manifest.json", base + ".summary.json", base + ".plot.py"};
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

constexpr const char* kTrajectoryPlot = R"PY(#!/usr/bin/env python3
# renders the trajectory CSV that sits next to this script
import csv
from pathlib import Path
import matplotlib.pyplot as plt

here = Path(__file__)
csv_path = here.with_name(here.name.replace('.plot.py', '.csv'))
with open(csv_path) as fh:
    rows = list(csv.DictReader(fh))
t = [float(r['t_ns']) for r in rows]
fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
for name in rows[0]:
    if name.startswith('p1_'):
        ax1.plot(t, [float(r[name]) for r in rows], lw=1, label=name)
ax1.set_ylabel('qubit P1')
ax1.legend(fontsize=7, ncol=4)
ax2.plot(t, [float(r['photon_p1']) for r in rows], label='photon_p1')
ax2.plot(t, [float(r['photon_mean']) for r in rows], '--', label='photon_mean')
ax2.set_xlabel('t (ns)')
ax2.set_ylabel('resonator')
ax2.legend(fontsize=8)
fig.tight_layout()
out = csv_path.with_suffix('.png')
fig.savefig(out, dpi=160)
print(out)
)PY";

constexpr const char* kScalingPlot = R"PY(#!/usr/bin/env python3
# log-log frequency vs N with the fitted power law
import csv
import math
from pathlib import Path
import matplotlib.pyplot as plt

here = Path(__file__)
csv_path = here.with_name(here.name.replace('.plot.py', '.csv'))
with open(csv_path) as fh:
    rows = list(csv.DictReader(fh))
n = [float(r['n']) for r in rows]
f = [float(r['frequency_mhz']) for r in rows]
x = [math.log(v) for v in n]
y = [math.log(v) for v in f]
xm = sum(x) / len(x)
ym = sum(y) / len(y)
sxx = sum((v - xm) ** 2 for v in x)
slope = sum((a - xm) * (b - ym) for a, b in zip(x, y)) / sxx
pref = math.exp(ym - slope * xm)
fig, ax = plt.subplots(figsize=(5, 4))
ax.loglog(n, f, 'o', label='fits')
ax.loglog(n, [pref * v ** slope for v in n], '-',
          label=f'{pref:.2f} MHz * N^{slope:.3f}')
ax.set_xlabel('N')
ax.set_ylabel('frequency (MHz)')
ax.legend()
fig.tight_layout()
out = csv_path.with_suffix('.png')
fig.savefig(out, dpi=160)
print(out)
)PY";

void emit_trajectory(const OutputSet& out, const Trajectory& traj, RunManifest manifest,
                     const json& summary) {
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  write_text(out.csv, csv.str());
  write_manifest(out.manifest, std::move(manifest));
  write_text(out.summary, summary.dump(2) + "\n");
  write_text(out.plot, kTrajectoryPlot);
}

RunManifest base_manifest(const Prepared& p, const std::string& experiment, int n, int m,
                          int excitation) {
  RunManifest mf;
  mf.experiment = experiment;
  mf.n = n;
  mf.m = m;
  mf.seed = p.cfg.disorder.seed;
  mf.config_digest = p.cfg.digest();
  mf.engine = engine_kind_name(p.cfg.engine);
  mf.excitation = excitation;
  return mf;
}

double max_of(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end());
}
double min_of(const std::vector<double>& v) {
  return *std::min_element(v.begin(), v.end());
}

}  // namespace

int cmd_superradiance(int n, const CommonOpts& opts) {
  Prepared p = prepare(opts);
  require_register(p, n);
  ProtocolParams params;
  params.g_mhz = nominal_g_mhz(p.cfg.device, n + 1);
  const Schedule sched = superradiance_protocol(n, params);
  const Trajectory traj = run(sched, p.device, {p.cfg.engine});
  const RabiFit fit = fit_rabi(traj.times_ns, traj.photon_p1);

  json summary{{"experiment", "superradiance"},
               {"n", n},
               {"nominal_g_mhz", params.g_mhz},
               {"fit", fit_json(fit)},
               {"photon_min", min_of(traj.photon_p1)},
               {"photon_max", max_of(traj.photon_p1)},
               {"conservation", conservation_json(conservation_report(traj))}};
  const OutputSet out = out_paths(opts.out_dir, "superradiance_n" + std::to_string(n));
  emit_trajectory(out, traj, base_manifest(p, "superradiance", n, 0, 1), summary);
  if (fit.oscillation)
    std::cout << "superradiance n=" << n << ": f = " << format_sig(fit.frequency_mhz, 9)
              << " MHz, peak-to-peak " << format_sig(fit.peak_to_peak(), 6) << "\n";
  else
    std::cout << "superradiance n=" << n << ": no oscillation detected\n";
  std::cout << "  -> " << out.csv << "\n";
  return 0;
}

int cmd_subradiance(int n, int m, const CommonOpts& opts) {
  Prepared p = prepare(opts);
  require_register(p, n);
  if (n < 2) throw Error("subradiance needs n >= 2");
  if (m < 1 || m > n - 1)
    throw Error("m = " + std::to_string(m) + " outside 1.." + std::to_string(n - 1));
  ProtocolParams params;
  params.g_mhz = nominal_g_mhz(p.cfg.device, n + 1);
  const Schedule sched = subradiance_protocol(n, m, params);
  const Trajectory traj = run(sched, p.device, {p.cfg.engine});
  const RabiFit fit = fit_rabi(traj.times_ns, traj.photon_p1);

  json summary{{"experiment", "subradiance"},
               {"n", n},
               {"m", m},
               {"nominal_g_mhz", params.g_mhz},
               {"fit", fit_json(fit)},
               {"photon_max", max_of(traj.photon_p1)},
               {"conservation", conservation_json(conservation_report(traj))}};
  const OutputSet out =
      out_paths(opts.out_dir, "subradiance_n" + std::to_string(n) + "_m" + std::to_string(m));
  emit_trajectory(out, traj, base_manifest(p, "subradiance", n, m, 1), summary);
  std::cout << "subradiance n=" << n << " m=" << m << ": "
            << (fit.oscillation ? "oscillating (imperfect device?), f = " +
                                      format_sig(fit.frequency_mhz, 9) + " MHz"
                                : std::string("no oscillation detected"))
            << ", max photon " << format_sig(max_of(traj.photon_p1), 6) << "\n";
  std::cout << "  -> " << out.csv << "\n";
  return 0;
}

int cmd_scaling(std::vector<int> ns, const CommonOpts& opts) {
  if (ns.empty())
    for (int n = 1; n <= 10; ++n) ns.push_back(n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() < 3) throw Error("need >= 3 points for a scaling fit");

  Prepared p = prepare(opts);
  for (int n : ns) require_register(p, n);

  const DeviceConfig device = p.device;
  const DeviceConfig base = p.cfg.device;
  const EngineKind engine = p.cfg.engine;
  std::vector<std::future<RabiFit>> futures;
  for (int n : ns)
    futures.push_back(std::async(std::launch::async, [n, device, base, engine] {
      ProtocolParams params;
      params.g_mhz = nominal_g_mhz(base, n + 1);
      const Trajectory traj = run(superradiance_protocol(n, params), device, {engine});
      return fit_rabi(traj.times_ns, traj.photon_p1);
    }));

  std::vector<double> freqs;
  json points = json::array();
  std::ostringstream csv;
  csv << "n,frequency_mhz\n";
  for (size_t i = 0; i < ns.size(); ++i) {
    const RabiFit fit = futures[i].get();
    if (!fit.oscillation)
      throw Error("no oscillation for n = " + std::to_string(ns[i]) +
                  ", cannot fit the scaling");
    freqs.push_back(fit.frequency_mhz);
    points.push_back({{"n", ns[i]}, {"frequency_mhz", fit.frequency_mhz}});
    csv << ns[i] << ',' << format_sig(fit.frequency_mhz, 12) << '\n';
  }

  const ScalingFit sf = fit_scaling(ns, freqs);
  const double g = nominal_g_mhz(p.cfg.device, 2);  // ancilla + first register qubit
  json summary{{"experiment", "scaling"},
               {"points", points},
               {"exponent", sf.exponent},
               {"exponent_err", std::sqrt(sf.exponent_var)},
               {"prefactor_mhz", sf.prefactor_mhz},
               {"log_prefactor_err", std::sqrt(sf.log_prefactor_var)},
               {"expected_exponent", 0.5},
               {"expected_prefactor_mhz", 2.0 * g}};

  const OutputSet out = out_paths(opts.out_dir, "scaling");
  write_text(out.csv, csv.str());
  write_manifest(out.manifest, base_manifest(p, "scaling", static_cast<int>(ns.size()), 0, 1));
  write_text(out.summary, summary.dump(2) + "\n");
  write_text(out.plot, kScalingPlot);
  std::cout << "scaling: exponent " << format_sig(sf.exponent, 6) << ", prefactor "
            << format_sig(sf.prefactor_mhz, 9) << " MHz (expected 0.5, " << format_sig(2.0 * g, 6)
            << " MHz)\n  -> " << out.csv << "\n";
  return 0;
}

int cmd_switch(int n, double t_store_ns, const CommonOpts& opts) {
  Prepared p = prepare(opts);
  require_register(p, n);
  if (n < 2) throw Error("switch needs n >= 2");
  if (!(t_store_ns >= 0.0)) throw Error("storage time must be >= 0");
  ProtocolParams params;
  params.g_mhz = nominal_g_mhz(p.cfg.device, n + 1);
  const Schedule sched = switch_protocol(n, t_store_ns, params);
  const Trajectory traj = run(sched, p.device, {p.cfg.engine});
  const double switch_time =
      iswap_duration_ns(params.g_mhz) + collective_duration_ns(params.g_mhz, n) + t_store_ns;

  std::vector<double> pre_photon, post_t, post_photon;
  for (size_t i = 0; i < traj.size(); ++i) {
    if (traj.times_ns[i] < switch_time) {
      pre_photon.push_back(traj.photon_p1[i]);
    } else {
      post_t.push_back(traj.times_ns[i]);
      post_photon.push_back(traj.photon_p1[i]);
    }
  }
  const RabiFit fit = fit_rabi(post_t, post_photon);

  json summary{{"experiment", "switch"},
               {"n", n},
               {"t_store_ns", t_store_ns},
               {"switch_time_ns", switch_time},
               {"pre_photon_max", pre_photon.empty() ? 0.0 : max_of(pre_photon)},
               {"post_fit", fit_json(fit)},
               {"conservation", conservation_json(conservation_report(traj))}};
  RunManifest mf = base_manifest(p, "switch", n, 1, 1);
  mf.switch_time_ns = switch_time;
  const OutputSet out = out_paths(opts.out_dir, "switch_n" + std::to_string(n));
  emit_trajectory(out, traj, std::move(mf), summary);
  std::cout << "switch n=" << n << ": pre-switch max photon "
            << format_sig(pre_photon.empty() ? 0.0 : max_of(pre_photon), 6);
  if (fit.oscillation)
    std::cout << ", post-switch f = " << format_sig(fit.frequency_mhz, 9) << " MHz";
  std::cout << "\n  -> " << out.csv << "\n";
  return 0;
}

int cmd_absorb(int n, const CommonOpts& opts) {
  Prepared p = prepare(opts);
  require_register(p, n);
  if (n < 3) throw Error("absorb needs n >= 3");
  ProtocolParams params;
  params.g_mhz = nominal_g_mhz(p.cfg.device, n + 1);
  const Schedule sched = absorb_protocol(n, params);
  const Trajectory traj = run(sched, p.device, {p.cfg.engine});
  const RabiFit fit = fit_rabi(traj.times_ns, traj.photon_p1);
  const double expected = 2.0 * params.g_mhz * std::sqrt(static_cast<double>(n - 2));

  json summary{{"experiment", "absorb"},
               {"n", n},
               {"nominal_g_mhz", params.g_mhz},
               {"fit", fit_json(fit)},
               {"expected_frequency_mhz", expected},
               {"conservation", conservation_json(conservation_report(traj))}};
  const OutputSet out = out_paths(opts.out_dir, "absorb_n" + std::to_string(n));
  emit_trajectory(out, traj, base_manifest(p, "absorb", n, 1, 2), summary);
  if (fit.oscillation)
    std::cout << "absorb n=" << n << ": f = " << format_sig(fit.frequency_mhz, 9)
              << " MHz (expected " << format_sig(expected, 9) << ")\n";
  else
    std::cout << "absorb n=" << n << ": no oscillation detected\n";
  std::cout << "  -> " << out.csv << "\n";
  return 0;
}

int cmd_singlet(int photon, const CommonOpts& opts) {
  if (photon != 0 && photon != 1) throw Error("resonator photon must be 0 or 1");
  Prepared p = prepare(opts);
  if (p.cfg.device.n_qubits() < 4) throw Error("singlet run needs a 4-qubit device");
  ProtocolParams params;
  params.g_mhz = nominal_g_mhz(p.cfg.device, 4);
  const Schedule sched = singlet_protocol(photon, params);
  const Trajectory traj = run(sched, p.device, {p.cfg.engine});

  double qubit_sum0 = 0.0;
  for (double v : traj.p1.front()) qubit_sum0 += v;
  double exchange = 0.0;
  for (size_t i = 0; i < traj.size(); ++i) {
    double s = 0.0;
    for (double v : traj.p1[i]) s += v;
    exchange = std::max(exchange, std::abs(s - qubit_sum0));
  }

  json summary{{"experiment", "singlet"},
               {"photon", photon},
               {"max_exchange", exchange},
               {"exchange_fraction_of_two", exchange / 2.0},
               {"photon_initial", traj.mean_photon.front()},
               {"photon_max_dev",
                std::max(std::abs(max_of(traj.mean_photon) - traj.mean_photon.front()),
                         std::abs(min_of(traj.mean_photon) - traj.mean_photon.front()))},
               {"conservation", conservation_json(conservation_report(traj))}};
  const OutputSet out = out_paths(opts.out_dir, "singlet_p" + std::to_string(photon));
  emit_trajectory(out, traj, base_manifest(p, "singlet", 4, 0, 2 + photon), summary);
  std::cout << "singlet photon=" << photon << ": max exchange " << format_sig(exchange, 6)
            << " of 2 quanta (" << format_sig(100.0 * exchange / 2.0, 4) << "%)\n  -> " << out.csv
            << "\n";
  return 0;
}

int cmd_run(const std::string& schedule_path, const CommonOpts& opts) {
  std::ifstream in(schedule_path, std::ios::binary);
  if (!in) throw Error("cannot open schedule '" + schedule_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();

  Schedule sched;
  try {
    sched = parse_schedule(buf.str());
  } catch (const ParseError& e) {
    std::cerr << schedule_path << ":" << e.line << ":" << e.col << ": " << e.message << "\n";
    return 3;
  }

  Prepared p = prepare(opts);
  const Trajectory traj = run(sched, p.device, {p.cfg.engine});
  json summary{{"experiment", "run"},
               {"schedule", schedule_path},
               {"n_qubits", sched.n_qubits},
               {"duration_ns", sched.total_duration_ns()},
               {"samples", traj.size()},
               {"conservation", conservation_json(conservation_report(traj))}};
  const std::string stem = fs::path(schedule_path).stem().string();
  const OutputSet out = out_paths(opts.out_dir, stem);
  emit_trajectory(out, traj, base_manifest(p, "run", sched.n_qubits, 0,
                                           traj.excitation.empty() ? 0 : traj.excitation.front()),
                  summary);
  std::cout << "run " << schedule_path << ": " << traj.size() << " samples\n  -> " << out.csv
            << "\n";
  return 0;
}

int cmd_verify(const std::string& csv_path, std::optional<int> excitation) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error("cannot open '" + csv_path + "'");
  const CsvTable table = read_csv(in);
  const int tcol = table.column("t_ns");
  const int mcol = table.column("photon_mean");
  if (tcol < 0 || mcol < 0) throw Error("'" + csv_path + "' is not a trajectory CSV");
  std::vector<int> p1cols;
  for (size_t c = 0; c < table.header.size(); ++c)
    if (table.header[c].rfind("p1_", 0) == 0) p1cols.push_back(static_cast<int>(c));
  if (p1cols.empty()) throw Error("'" + csv_path + "' has no p1 columns");

  double max_dev = 0.0;
  for (size_t r = 0; r < table.rows(); ++r) {
    double sum = table.columns[mcol][r];
    for (int c : p1cols) sum += table.columns[c][r];
    const double target = excitation ? static_cast<double>(*excitation) : std::round(sum);
    const double dev = std::abs(sum - target);
    if (dev > 1e-9) {
      std::cerr << "row " << (r + 1) << " (t = " << format_sig(table.columns[tcol][r], 12)
                << " ns): excitation sum " << format_sig(sum, 12) << " deviates from "
                << format_sig(target, 12) << " by " << format_sig(dev, 6) << "\n";
      return 2;
    }
    max_dev = std::max(max_dev, dev);
  }
  std::cout << "ok: " << table.rows() << " rows satisfy the excitation sum rule (max deviation "
            << format_sig(max_dev, 6) << ")\n";
  return 0;
}

int cmd_fit(const std::string& csv_path, const std::string& column, bool damped) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error("cannot open '" + csv_path + "'");
  const CsvTable table = read_csv(in);
  const int tcol = table.column("t_ns");
  const int vcol = table.column(column);
  if (tcol < 0) throw Error("'" + csv_path + "' has no t_ns column");
  if (vcol < 0) {
    std::string names;
    for (const auto& h : table.header) names += (names.empty() ? "" : ", ") + h;
    throw Error("no column '" + column + "' (have: " + names + ")");
  }

  json out;
  if (damped) {
    const DampedRabiFit f = fit_rabi_damped(table.columns[tcol], table.columns[vcol]);
    out = json{{"column", column}, {"model", "damped_cosine"}, {"oscillation", f.oscillation}};
    if (f.oscillation) {
      out["frequency_mhz"] = f.frequency_mhz;
      out["amplitude"] = f.amplitude;
      out["decay_ns"] = std::isfinite(f.decay_ns) ? json(f.decay_ns) : json();
      out["offset"] = f.offset;
      out["phase_rad"] = f.phase_rad;
      out["residual_rms"] = f.residual_rms;
      out["iterations"] = f.iterations;
    } else {
      out["offset"] = f.offset;
      out["residual_rms"] = f.residual_rms;
    }
  } else {
    out = fit_json(fit_rabi(table.columns[tcol], table.columns[vcol]));
    out["column"] = column;
    out["model"] = "cosine";
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace rads::cli

#include "rads/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rads/error.hpp"
#include "rads/format.hpp"

namespace rads {

double Schedule::total_duration_ns() const {
  double t = 0.0;
  for (const auto& item : items)
    if (const Segment* seg = std::get_if<Segment>(&item)) t += seg->duration_ns;
  return t;
}

std::vector<double> Schedule::sample_times() const {
  std::vector<double> times;
  for (const auto& spec : samples) {
    if (const SampleRange* r = std::get_if<SampleRange>(&spec)) {
      const long long count =
          static_cast<long long>(std::floor((r->stop_ns - r->start_ns) / r->step_ns + 1e-9));
      for (long long k = 0; k <= count; ++k) times.push_back(r->start_ns + k * r->step_ns);
    } else {
      const SampleList& l = std::get<SampleList>(spec);
      times.insert(times.end(), l.times_ns.begin(), l.times_ns.end());
    }
  }
  std::sort(times.begin(), times.end());
  return times;
}

double iswap_duration_ns(double g_mhz) {
  if (!(g_mhz > 0.0)) throw Error("iswap duration: coupling must be > 0");
  return 250.0 / g_mhz;  // pi/(2 g_ang) with g in MHz, t in ns
}

double collective_duration_ns(double g_mhz, int n) {
  if (n < 1) throw Error("collective duration: need n >= 1");
  return iswap_duration_ns(g_mhz) / std::sqrt(static_cast<double>(n));
}

namespace {

std::vector<QubitSetting> ancilla_only(int n_total) {
  std::vector<QubitSetting> s(n_total, QubitSetting::off());
  s[0] = QubitSetting::resonant();
  return s;
}

std::vector<QubitSetting> register_only(int n_total) {
  std::vector<QubitSetting> s(n_total, QubitSetting::off());
  for (int q = 1; q < n_total; ++q) s[q] = QubitSetting::resonant();
  return s;
}

// Shared preparation prefix: pi on the ancilla, ancilla iSWAP, collective
// quarter period, one phase gate per register qubit.
Schedule prepared_register(int n, const std::vector<double>& thetas, const ProtocolParams& p) {
  Schedule s;
  s.n_qubits = n + 1;
  s.items.push_back(GateEvent{PiPulse{0}});
  s.items.push_back(Segment{iswap_duration_ns(p.g_mhz), ancilla_only(n + 1)});
  s.items.push_back(Segment{collective_duration_ns(p.g_mhz, n), register_only(n + 1)});
  for (int q = 1; q <= n; ++q) s.items.push_back(GateEvent{PhaseGate{q, thetas[q - 1]}});
  return s;
}

void add_probe(Schedule& s, const ProtocolParams& p) {
  const double start = s.total_duration_ns();
  s.items.push_back(Segment{p.probe_ns, register_only(s.n_qubits)});
  s.samples.push_back(SampleRange{start, start + p.probe_ns, p.sample_step_ns});
}

std::vector<double> spin_wave_thetas(int n, int m) {
  std::vector<double> thetas(n);
  for (int j = 1; j <= n; ++j) thetas[j - 1] = -m * j * 2.0 * std::numbers::pi / n;
  return thetas;
}

}  // namespace

Schedule superradiance_protocol(int n, const ProtocolParams& params) {
  if (n < 1) throw Error("superradiance protocol: need n >= 1");
  Schedule s = prepared_register(n, std::vector<double>(n, 0.0), params);
  add_probe(s, params);
  return s;
}

Schedule subradiance_protocol(int n, int m, const ProtocolParams& params) {
  if (n < 2) throw Error("subradiance protocol: need n >= 2");
  if (m < 1 || m > n - 1)
    throw Error("subradiance protocol: m = " + std::to_string(m) + " outside 1.." +
                std::to_string(n - 1));
  Schedule s = prepared_register(n, spin_wave_thetas(n, m), params);
  add_probe(s, params);
  return s;
}

Schedule switch_protocol(int n, double t_store_ns, const ProtocolParams& params) {
  if (n < 2) throw Error("switch protocol: need n >= 2");
  if (!(t_store_ns >= 0.0)) throw Error("switch protocol: storage time must be >= 0");
  Schedule s = prepared_register(n, spin_wave_thetas(n, 1), params);
  const double start = s.total_duration_ns();
  s.items.push_back(Segment{t_store_ns, register_only(n + 1)});
  for (int j = 1; j <= n; ++j)
    s.items.push_back(GateEvent{PhaseGate{j, j * 2.0 * std::numbers::pi / n}});
  s.items.push_back(Segment{params.probe_ns, register_only(n + 1)});
  s.samples.push_back(SampleRange{start, start + t_store_ns + params.probe_ns,
                                  params.sample_step_ns});
  return s;
}

Schedule absorb_protocol(int n, const ProtocolParams& params) {
  if (n < 3) throw Error("absorb protocol: need n >= 3");
  Schedule s = prepared_register(n, spin_wave_thetas(n, 1), params);
  s.items.push_back(GateEvent{PiPulse{0}});
  s.items.push_back(Segment{iswap_duration_ns(params.g_mhz), ancilla_only(n + 1)});
  add_probe(s, params);
  return s;
}

Schedule singlet_protocol(int resonator_photon, const ProtocolParams& params) {
  if (resonator_photon != 0 && resonator_photon != 1)
    throw Error("singlet protocol: resonator photon must be 0 or 1");
  Schedule s;
  s.n_qubits = 4;
  s.init.named = InitialState::Named::Singlet4;
  s.init.photons = resonator_photon;
  s.items.push_back(Segment{params.probe_ns, std::vector<QubitSetting>(4, QubitSetting::resonant())});
  s.samples.push_back(SampleRange{0.0, params.probe_ns, params.sample_step_ns});
  return s;
}

// ---------------------------------------------------------------------------
// canonical text form

namespace {

void render_settings(std::ostream& os, const std::vector<QubitSetting>& settings) {
  // group qubits by identical setting, Off stays implicit
  std::vector<bool> done(settings.size(), false);
  for (size_t j = 0; j < settings.size(); ++j) {
    if (done[j] || settings[j].mode == Mode::Off) continue;
    switch (settings[j].mode) {
      case Mode::Resonant: os << " resonant:"; break;
      case Mode::Idle: os << " idle:"; break;
      case Mode::Detuned: os << " detuned(" << format_shortest(settings[j].detuning_mhz) << "):"; break;
      case Mode::Off: break;
    }
    for (size_t k = j; k < settings.size(); ++k) {
      if (!done[k] && settings[k] == settings[j]) {
        os << ' ' << (k + 1);
        done[k] = true;
      }
    }
  }
}

}  // namespace

std::string render(const Schedule& schedule) {
  std::ostringstream os;
  os << "rads-schedule v1\n";
  os << "qubits " << schedule.n_qubits << '\n';
  if (schedule.init.named == InitialState::Named::Singlet4) os << "init singlet4\n";
  if (!schedule.init.excited_qubits.empty()) {
    os << "excite q";
    for (int q : schedule.init.excited_qubits) os << ' ' << (q + 1);
    os << '\n';
  }
  if (schedule.init.photons != 0) os << "excite r " << schedule.init.photons << '\n';
  for (const auto& item : schedule.items) {
    if (const Segment* seg = std::get_if<Segment>(&item)) {
      os << "segment " << format_shortest(seg->duration_ns) << "ns";
      render_settings(os, seg->settings);
      os << '\n';
    } else {
      const GateEvent& g = std::get<GateEvent>(item);
      if (const PiPulse* pi = std::get_if<PiPulse>(&g)) {
        os << "gate pi " << (pi->qubit + 1) << '\n';
      } else if (const PhaseGate* ph = std::get_if<PhaseGate>(&g)) {
        os << "phase " << (ph->qubit + 1) << ' ' << format_shortest(ph->theta) << '\n';
      } else {
        throw Error("render: custom gates have no text form");
      }
    }
  }
  for (const auto& spec : schedule.samples) {
    if (const SampleRange* r = std::get_if<SampleRange>(&spec)) {
      os << "sample " << format_shortest(r->start_ns) << ".." << format_shortest(r->stop_ns)
         << " step " << format_shortest(r->step_ns) << '\n';
    } else {
      os << "sample";
      for (double t : std::get<SampleList>(spec).times_ns) os << ' ' << format_shortest(t);
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace rads

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "rads/error.hpp"
#include "rads/schedule.hpp"

namespace rads {

namespace {

struct Token {
  std::string text;
  int col = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
           line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

[[noreturn]] void fail(int line, const Token& tok, const std::string& msg) {
  throw ParseError(line, tok.col, msg);
}

double number_at(int line, const Token& tok, const std::string& text) {
  double v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(v))
    fail(line, tok, "malformed number '" + text + "'");
  return v;
}

long long integer_at(int line, const Token& tok) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc{} || p != tok.text.data() + tok.text.size())
    fail(line, tok, "malformed integer '" + tok.text + "'");
  return v;
}

}  // namespace

Schedule parse_schedule(const std::string& text) {
  Schedule s;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool seen_content = false;
  bool have_qubits = false;
  bool have_photons = false;

  auto qubit_at = [&](int line, const Token& tok) {
    if (!have_qubits) fail(line, tok, "qubit label before the qubits directive");
    const long long label = integer_at(line, tok);
    if (label < 1 || label > s.n_qubits)
      fail(line, tok,
           "qubit " + std::to_string(label) + " out of range 1.." + std::to_string(s.n_qubits));
    return static_cast<int>(label) - 1;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::vector<Token> t = tokenize(raw);
    if (t.empty()) continue;

    if (!seen_content && t[0].text == "rads-schedule") {
      if (t.size() != 2 || t[1].text != "v1")
        fail(lineno, t.size() > 1 ? t[1] : t[0], "unsupported schedule version");
      seen_content = true;
      continue;
    }
    seen_content = true;
    const std::string& d = t[0].text;

    if (d == "qubits") {
      if (have_qubits) fail(lineno, t[0], "qubits already given");
      if (t.size() != 2) fail(lineno, t[0], "qubits takes one count");
      const long long n = integer_at(lineno, t[1]);
      if (n < 1) fail(lineno, t[1], "need at least one qubit");
      s.n_qubits = static_cast<int>(n);
      have_qubits = true;
    } else if (d == "excite") {
      if (t.size() < 2) fail(lineno, t[0], "excite takes 'r <count>' or 'q <labels>'");
      if (t[1].text == "r") {
        if (t.size() != 3) fail(lineno, t[0], "excite r takes one photon count");
        if (have_photons) fail(lineno, t[1], "resonator excitation already given");
        const long long p = integer_at(lineno, t[2]);
        if (p < 0) fail(lineno, t[2], "photon count must be >= 0");
        s.init.photons = static_cast<int>(p);
        have_photons = true;
      } else if (t[1].text == "q") {
        if (t.size() < 3) fail(lineno, t[0], "excite q needs at least one label");
        if (s.init.named != InitialState::Named::None)
          fail(lineno, t[1], "excite q conflicts with a named init");
        for (size_t i = 2; i < t.size(); ++i) {
          const int q = qubit_at(lineno, t[i]);
          for (int prev : s.init.excited_qubits)
            if (prev == q) fail(lineno, t[i], "qubit " + t[i].text + " already excited");
          s.init.excited_qubits.push_back(q);
        }
      } else {
        fail(lineno, t[1], "expected 'r' or 'q' after excite");
      }
    } else if (d == "init") {
      if (t.size() != 2) fail(lineno, t[0], "init takes one name");
      if (t[1].text != "singlet4") fail(lineno, t[1], "unknown init '" + t[1].text + "'");
      if (!have_qubits || s.n_qubits != 4) fail(lineno, t[1], "init singlet4 needs qubits = 4");
      if (!s.init.excited_qubits.empty()) fail(lineno, t[1], "init conflicts with excite q");
      if (s.init.named != InitialState::Named::None) fail(lineno, t[1], "init already given");
      s.init.named = InitialState::Named::Singlet4;
    } else if (d == "gate") {
      if (t.size() != 3) fail(lineno, t[0], "gate takes 'pi <label>'");
      if (t[1].text != "pi") fail(lineno, t[1], "unknown gate '" + t[1].text + "'");
      s.items.push_back(GateEvent{PiPulse{qubit_at(lineno, t[2])}});
    } else if (d == "phase") {
      if (t.size() != 3) fail(lineno, t[0], "phase takes '<label> <theta_rad>'");
      const int q = qubit_at(lineno, t[1]);
      s.items.push_back(GateEvent{PhaseGate{q, number_at(lineno, t[2], t[2].text)}});
    } else if (d == "segment") {
      if (!have_qubits) fail(lineno, t[0], "segment before the qubits directive");
      if (t.size() < 2) fail(lineno, t[0], "segment takes '<duration>ns' then mode groups");
      const std::string& dur = t[1].text;
      if (dur.size() < 3 || dur.substr(dur.size() - 2) != "ns")
        fail(lineno, t[1], "duration needs an ns suffix");
      const double duration = number_at(lineno, t[1], dur.substr(0, dur.size() - 2));
      if (duration < 0.0) fail(lineno, t[1], "segment duration must be >= 0");
      Segment seg{duration, std::vector<QubitSetting>(s.n_qubits, QubitSetting::off())};
      std::vector<bool> assigned(s.n_qubits, false);
      QubitSetting mode;
      bool have_mode = false;
      for (size_t i = 2; i < t.size(); ++i) {
        const std::string& w = t[i].text;
        if (w.back() == ':') {
          const std::string m = w.substr(0, w.size() - 1);
          if (m == "resonant") {
            mode = QubitSetting::resonant();
          } else if (m == "idle") {
            mode = QubitSetting::idle();
          } else if (m == "off") {
            mode = QubitSetting::off();
          } else if (m.starts_with("detuned(") && m.ends_with(")")) {
            mode = QubitSetting::detuned(
                number_at(lineno, t[i], m.substr(8, m.size() - 9)));
          } else {
            fail(lineno, t[i], "unknown mode '" + m + "'");
          }
          have_mode = true;
        } else {
          if (!have_mode) fail(lineno, t[i], "qubit label before any mode group");
          const int q = qubit_at(lineno, t[i]);
          if (assigned[q]) fail(lineno, t[i], "qubit " + w + " assigned twice");
          assigned[q] = true;
          seg.settings[q] = mode;
        }
      }
      s.items.push_back(std::move(seg));
    } else if (d == "sample") {
      if (t.size() < 2) fail(lineno, t[0], "sample takes a range or a time list");
      if (t[1].text.find("..") != std::string::npos) {
        if (t.size() != 4 || t[2].text != "step")
          fail(lineno, t[0], "sample range takes '<a>..<b> step <s>'");
        const size_t dots = t[1].text.find("..");
        SampleRange r;
        r.start_ns = number_at(lineno, t[1], t[1].text.substr(0, dots));
        r.stop_ns = number_at(lineno, t[1], t[1].text.substr(dots + 2));
        r.step_ns = number_at(lineno, t[3], t[3].text);
        if (r.start_ns < 0.0) fail(lineno, t[1], "sample times must be >= 0");
        if (r.stop_ns < r.start_ns) fail(lineno, t[1], "sample range runs backwards");
        if (!(r.step_ns > 0.0)) fail(lineno, t[3], "sample step must be > 0");
        s.samples.push_back(r);
      } else {
        SampleList l;
        for (size_t i = 1; i < t.size(); ++i) {
          const double v = number_at(lineno, t[i], t[i].text);
          if (v < 0.0) fail(lineno, t[i], "sample times must be >= 0");
          l.times_ns.push_back(v);
        }
        s.samples.push_back(std::move(l));
      }
    } else {
      fail(lineno, t[0], "unknown directive '" + d + "'");
    }
  }

  if (!seen_content) throw ParseError(1, 1, "empty schedule");
  if (!have_qubits) throw ParseError(1, 1, "schedule has no qubits directive");
  return s;
}

}  // namespace rads

#pragma once

#include <istream>
#include <string>
#include <vector>

namespace rads {

// Least-squares fit of A cos(2 pi f t + phi) + c.  `oscillation` is false
// when the discrete spectrum shows no peak above the 1e-6 floor; frequency,
// amplitude, and phase are then meaningless and left at zero.
struct RabiFit {
  bool oscillation = false;
  double frequency_mhz = 0.0;
  double amplitude = 0.0;  // A >= 0
  double offset = 0.0;
  double phase_rad = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;

  // populations swing over twice the cosine amplitude
  double peak_to_peak() const { return 2.0 * amplitude; }
};

RabiFit fit_rabi(const std::vector<double>& times_ns, const std::vector<double>& values);

// Same model with an exponential envelope, for externally measured traces:
// A exp(-t/tau) cos(2 pi f t + phi) + c.
struct DampedRabiFit {
  bool oscillation = false;
  double frequency_mhz = 0.0;
  double amplitude = 0.0;
  double decay_ns = 0.0;  // tau; infinity when no decay is resolved
  double offset = 0.0;
  double phase_rad = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;
};

DampedRabiFit fit_rabi_damped(const std::vector<double>& times_ns,
                              const std::vector<double>& values);

// log f = exponent * log N + log(prefactor); plain least squares with the
// usual normal-equation covariance diagonal.
struct ScalingFit {
  double exponent = 0.0;
  double prefactor_mhz = 0.0;
  double exponent_var = 0.0;
  double log_prefactor_var = 0.0;
};

ScalingFit fit_scaling(const std::vector<int>& ns, const std::vector<double>& freqs_mhz);

// Comma-separated numeric table with one header row, as the trajectory
// writer emits; for offline re-analysis.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  int column(const std::string& name) const;  // -1 when absent
  size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
};

CsvTable read_csv(std::istream& in);

}  // namespace rads

#include "rads/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "rads/error.hpp"

namespace rads {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSpectralFloor = 1e-6;
constexpr int kMaxIterations = 200;
constexpr double kRelTol = 1e-10;

void check_fit_input(const std::vector<double>& t, const std::vector<double>& v) {
  if (t.size() != v.size())
    throw Error("fit: " + std::to_string(t.size()) + " times for " + std::to_string(v.size()) +
                " values");
  if (t.size() < 8) throw Error("fit: need at least 8 samples");
  for (size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw Error("fit: times must increase strictly");
}

// Amplitude spectrum on the bins k/span; returns the peak bin frequency in
// cycles/ns and its amplitude estimate.
std::pair<double, double> spectral_peak(const std::vector<double>& t,
                                        const std::vector<double>& v, double mean) {
  const size_t n = t.size();
  const double span = t.back() - t.front();
  double best_f = 0.0, best_a = 0.0;
  for (size_t k = 1; k <= n / 2; ++k) {
    const double f = static_cast<double>(k) / span;
    std::complex<double> s = 0.0;
    for (size_t i = 0; i < n; ++i)
      s += (v[i] - mean) * std::exp(std::complex<double>(0.0, -kTwoPi * f * t[i]));
    const double a = 2.0 * std::abs(s) / static_cast<double>(n);
    if (a > best_a) {
      best_a = a;
      best_f = f;
    }
  }
  return {best_f, best_a};
}

struct LinearFit {
  double a = 0, b = 0, c = 0, ssr = 0;
};

double wrap_pi(double x) {
  x = std::fmod(x + std::numbers::pi, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  return x - std::numbers::pi;
}

// Least squares over the basis {env*cos(2pi f t), env*sin(2pi f t), 1}.
LinearFit solve_linear(const std::vector<double>& t, const std::vector<double>& v, double f,
                       double lambda) {
  const size_t n = t.size();
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (size_t i = 0; i < n; ++i) {
    const double env = std::exp(-lambda * t[i]);
    const Eigen::Vector3d row(env * std::cos(kTwoPi * f * t[i]),
                              env * std::sin(kTwoPi * f * t[i]), 1.0);
    m += row * row.transpose();
    rhs += row * v[i];
  }
  const Eigen::Vector3d x = m.ldlt().solve(rhs);
  LinearFit fit{x(0), x(1), x(2), 0.0};
  for (size_t i = 0; i < n; ++i) {
    const double env = std::exp(-lambda * t[i]);
    const double r = fit.a * env * std::cos(kTwoPi * f * t[i]) +
                     fit.b * env * std::sin(kTwoPi * f * t[i]) + fit.c - v[i];
    fit.ssr += r * r;
  }
  return fit;
}

// Variable-projection loop on a time axis already rebased to start at zero:
// re-solve the linear coefficients, then one Gauss-Newton step in f.
// Returns false when the spectrum shows no peak above the floor.
bool vp_cosine(const std::vector<double>& t, const std::vector<double>& v, double& f,
               LinearFit& lin, int& iterations) {
  const size_t n = t.size();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);

  double peak;
  std::tie(f, peak) = spectral_peak(t, v, mean);
  if (peak < kSpectralFloor) {
    lin = LinearFit{0.0, 0.0, mean, 0.0};
    for (double x : v) lin.ssr += (x - mean) * (x - mean);
    return false;
  }

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    iterations = iter + 1;
    lin = solve_linear(t, v, f, 0.0);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double th = kTwoPi * f * t[i];
      const double r = lin.a * std::cos(th) + lin.b * std::sin(th) + lin.c - v[i];
      const double d = kTwoPi * t[i] * (-lin.a * std::sin(th) + lin.b * std::cos(th));
      num += r * d;
      den += d * d;
    }
    if (den == 0.0) break;
    const double step = -num / den;
    f += step;
    if (!(f > 0.0)) f = std::abs(f) > 0.0 ? std::abs(f) : 1.0 / t.back();
    if (std::abs(step) < kRelTol * f) break;
  }
  lin = solve_linear(t, v, f, 0.0);
  return true;
}

std::vector<double> rebased(const std::vector<double>& times_ns) {
  std::vector<double> t(times_ns);
  const double t0 = t.front();
  for (double& x : t) x -= t0;
  return t;
}

}  // namespace

RabiFit fit_rabi(const std::vector<double>& times_ns, const std::vector<double>& values) {
  check_fit_input(times_ns, values);
  const size_t n = times_ns.size();
  const std::vector<double> t = rebased(times_ns);

  RabiFit out;
  double f = 0.0;
  LinearFit lin;
  if (!vp_cosine(t, values, f, lin, out.iterations)) {
    out.oscillation = false;
    out.offset = lin.c;
    out.residual_rms = std::sqrt(lin.ssr / static_cast<double>(n));
    return out;
  }

  out.oscillation = true;
  out.frequency_mhz = f * 1e3;  // cycles/ns -> MHz
  out.amplitude = std::hypot(lin.a, lin.b);
  out.offset = lin.c;
  // phase referred back to the absolute time axis
  out.phase_rad = wrap_pi(std::atan2(-lin.b, lin.a) - kTwoPi * f * times_ns.front());
  out.residual_rms = std::sqrt(lin.ssr / static_cast<double>(n));
  return out;
}

DampedRabiFit fit_rabi_damped(const std::vector<double>& times_ns,
                              const std::vector<double>& values) {
  check_fit_input(times_ns, values);
  const size_t n = times_ns.size();
  const std::vector<double> t = rebased(times_ns);

  DampedRabiFit out;
  double f = 0.0;
  LinearFit lin;
  // the converged undamped frequency is a far better start than a raw bin
  if (!vp_cosine(t, values, f, lin, out.iterations)) {
    out.oscillation = false;
    out.offset = lin.c;
    out.residual_rms = std::sqrt(lin.ssr / static_cast<double>(n));
    return out;
  }

  double lambda = 0.0;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    ++out.iterations;
    // Gauss-Newton over (f, lambda) with the linear part eliminated.
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    for (size_t i = 0; i < n; ++i) {
      const double th = kTwoPi * f * t[i];
      const double env = std::exp(-lambda * t[i]);
      const double osc = lin.a * std::cos(th) + lin.b * std::sin(th);
      const double r = env * osc + lin.c - values[i];
      const Eigen::Vector2d d(env * kTwoPi * t[i] * (-lin.a * std::sin(th) + lin.b * std::cos(th)),
                              -t[i] * env * osc);
      jtj += d * d.transpose();
      jtr += d * r;
    }
    Eigen::Vector2d step = jtj.ldlt().solve(-jtr);
    if (!step.allFinite()) break;
    // keep the envelope non-exploding
    double scale = 1.0;
    while (scale > 1e-6) {
      const double f_try = f + scale * step(0);
      const double l_try = lambda + scale * step(1);
      if (f_try > 0.0 && l_try >= 0.0 &&
          solve_linear(t, values, f_try, l_try).ssr <= lin.ssr) break;
      scale *= 0.5;
    }
    f += scale * step(0);
    lambda = std::max(0.0, lambda + scale * step(1));
    lin = solve_linear(t, values, f, lambda);
    const double rel =
        std::abs(scale * step(0)) / f + std::abs(scale * step(1)) / std::max(lambda, 1e-12);
    if (rel < kRelTol) break;
  }

  out.oscillation = true;
  out.frequency_mhz = f * 1e3;
  // envelope and phase referred back to the absolute time axis
  out.amplitude = std::hypot(lin.a, lin.b) * std::exp(lambda * times_ns.front());
  out.decay_ns = lambda > 1e-15 ? 1.0 / lambda : std::numeric_limits<double>::infinity();
  out.offset = lin.c;
  out.phase_rad = wrap_pi(std::atan2(-lin.b, lin.a) - kTwoPi * f * times_ns.front());
  out.residual_rms = std::sqrt(lin.ssr / static_cast<double>(n));
  return out;
}

ScalingFit fit_scaling(const std::vector<int>& ns, const std::vector<double>& freqs_mhz) {
  if (ns.size() != freqs_mhz.size())
    throw Error("scaling fit: " + std::to_string(ns.size()) + " sizes for " +
                std::to_string(freqs_mhz.size()) + " frequencies");
  std::vector<int> distinct = ns;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw Error("scaling fit: need >= 3 distinct N");
  const size_t n = ns.size();
  std::vector<double> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    if (ns[i] < 1) throw Error("scaling fit: N must be >= 1");
    if (!(freqs_mhz[i] > 0.0))
      throw Error("scaling fit: frequency for N = " + std::to_string(ns[i]) + " is not > 0");
    x[i] = std::log(static_cast<double>(ns[i]));
    y[i] = std::log(freqs_mhz[i]);
  }
  double xm = 0, ym = 0;
  for (size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  const double slope = sxy / sxx;
  const double intercept = ym - slope * xm;
  double ssr = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (slope * x[i] + intercept);
    ssr += r * r;
  }
  const double sigma2 = n > 2 ? ssr / static_cast<double>(n - 2) : 0.0;

  ScalingFit fit;
  fit.exponent = slope;
  fit.prefactor_mhz = std::exp(intercept);
  fit.exponent_var = sigma2 / sxx;
  fit.log_prefactor_var = sigma2 * (1.0 / static_cast<double>(n) + xm * xm / sxx);
  return fit;
}

int CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    table.header.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  table.columns.assign(table.header.size(), {});
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t pos = 0;
    for (size_t col = 0; col < table.header.size(); ++col) {
      const size_t comma = line.find(',', pos);
      const std::string cell = line.substr(pos, comma - pos);
      double v = 0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || p != cell.data() + cell.size())
        throw Error("csv line " + std::to_string(lineno) + ": malformed number '" + cell + "'");
      table.columns[col].push_back(v);
      if (comma == std::string::npos) {
        if (col + 1 != table.header.size())
          throw Error("csv line " + std::to_string(lineno) + ": expected " +
                      std::to_string(table.header.size()) + " columns");
        pos = line.size();
        break;
      }
      pos = comma + 1;
    }
    if (pos < line.size())
      throw Error("csv line " + std::to_string(lineno) + ": trailing cells");
  }
  return table;
}

}  // namespace rads

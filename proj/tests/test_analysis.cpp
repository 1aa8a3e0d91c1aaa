#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "rads/analysis.hpp"
#include "rads/cli/csvio.hpp"
#include "rads/error.hpp"
#include "rads/evolve.hpp"

using namespace rads;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Signal {
  std::vector<double> t, v;
};

Signal cosine(double f_mhz, double amp, double offset, double phase, double span_ns,
              double step_ns, double t0 = 0.0) {
  Signal s;
  const double f = f_mhz * 1e-3;  // cycles per ns
  for (double t = 0.0; t <= span_ns + 1e-12; t += step_ns) {
    s.t.push_back(t0 + t);
    s.v.push_back(amp * std::cos(two_pi * f * (t0 + t) + phase) + offset);
  }
  return s;
}

}  // namespace

TEST_CASE("recovers a plain cosine") {
  const Signal s = cosine(27.0, 0.5, 0.5, std::numbers::pi, 100.0, 0.5);
  const RabiFit fit = fit_rabi(s.t, s.v);
  REQUIRE(fit.oscillation);
  CHECK(fit.frequency_mhz == doctest::Approx(27.0).epsilon(1e-6));
  CHECK(fit.amplitude == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fit.offset == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(std::abs(fit.phase_rad) - std::numbers::pi) < 1e-5);
  CHECK(fit.peak_to_peak() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.residual_rms < 1e-8);
}

TEST_CASE("recovers phase and offset") {
  const Signal s = cosine(40.0, 0.31, 0.07, 0.9, 80.0, 0.25);
  const RabiFit fit = fit_rabi(s.t, s.v);
  REQUIRE(fit.oscillation);
  CHECK(fit.frequency_mhz == doctest::Approx(40.0).epsilon(1e-7));
  CHECK(fit.amplitude == doctest::Approx(0.31).epsilon(1e-7));
  CHECK(fit.offset == doctest::Approx(0.07).epsilon(1e-6));
  CHECK(fit.phase_rad == doctest::Approx(0.9).epsilon(1e-5));
}

TEST_CASE("flat traces report no oscillation") {
  SUBCASE("constant") {
    const Signal s = cosine(0.0, 0.0, 1.0 / 6.0, 0.0, 100.0, 0.5);
    const RabiFit fit = fit_rabi(s.t, s.v);
    CHECK_FALSE(fit.oscillation);
    CHECK(fit.offset == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(fit.frequency_mhz == 0.0);
    CHECK(fit.peak_to_peak() == 0.0);
  }
  SUBCASE("oscillation below the floor") {
    const Signal s = cosine(27.0, 1e-8, 0.25, 0.0, 100.0, 0.5);
    CHECK_FALSE(fit_rabi(s.t, s.v).oscillation);
  }
}

TEST_CASE("fit is invariant under time-origin shift") {
  const Signal a = cosine(33.0, 0.4, 0.5, 0.3, 90.0, 0.5);
  const Signal b = cosine(33.0, 0.4, 0.5, 0.3, 90.0, 0.5, 137.25);
  const RabiFit fa = fit_rabi(a.t, a.v);
  const RabiFit fb = fit_rabi(b.t, b.v);
  CHECK(fa.frequency_mhz == doctest::Approx(fb.frequency_mhz).epsilon(1e-9));
  CHECK(fa.amplitude == doctest::Approx(fb.amplitude).epsilon(1e-9));
  CHECK(fa.offset == doctest::Approx(fb.offset).epsilon(1e-9));
}

TEST_CASE("fit scales linearly with the data") {
  const Signal a = cosine(33.0, 0.4, 0.5, 0.3, 90.0, 0.5);
  std::vector<double> scaled = a.v;
  for (double& v : scaled) v *= 3.0;
  const RabiFit fa = fit_rabi(a.t, a.v);
  const RabiFit fs = fit_rabi(a.t, scaled);
  CHECK(fs.frequency_mhz == doctest::Approx(fa.frequency_mhz).epsilon(1e-9));
  CHECK(fs.amplitude == doctest::Approx(3.0 * fa.amplitude).epsilon(1e-9));
}

TEST_CASE("fit input validation") {
  std::vector<double> t = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<double> v = {0, 1, 0, 1, 0, 1, 0, 1};
  CHECK_NOTHROW(fit_rabi(t, v));
  CHECK_THROWS_AS(fit_rabi({0, 1, 2}, {0, 1, 0}), Error);  // too few
  CHECK_THROWS_AS(fit_rabi(t, {0, 1}), Error);             // size mismatch
  std::vector<double> bad_t = t;
  bad_t[3] = bad_t[2];
  CHECK_THROWS_AS(fit_rabi(bad_t, v), Error);  // not strictly increasing
}

TEST_CASE("damped fit recovers envelope and frequency") {
  Signal s;
  for (double t = 0.0; t <= 150.0; t += 0.25) {
    s.t.push_back(t);
    s.v.push_back(0.3 * std::exp(-t / 50.0) * std::cos(two_pi * 0.02 * t + 0.4) + 0.1);
  }
  const DampedRabiFit fit = fit_rabi_damped(s.t, s.v);
  REQUIRE(fit.oscillation);
  CHECK(fit.frequency_mhz == doctest::Approx(20.0).epsilon(1e-4));
  CHECK(fit.decay_ns == doctest::Approx(50.0).epsilon(1e-2));
  CHECK(fit.amplitude == doctest::Approx(0.3).epsilon(1e-2));
  CHECK(fit.offset == doctest::Approx(0.1).epsilon(1e-2));
  CHECK(fit.phase_rad == doctest::Approx(0.4).epsilon(1e-2));
}

TEST_CASE("undamped input leaves the decay unresolved") {
  const Signal s = cosine(27.0, 0.5, 0.5, 0.0, 100.0, 0.5);
  const DampedRabiFit fit = fit_rabi_damped(s.t, s.v);
  REQUIRE(fit.oscillation);
  CHECK(fit.frequency_mhz == doctest::Approx(27.0).epsilon(1e-6));
  CHECK(fit.decay_ns > 1e6);
}

TEST_CASE("scaling fit on an exact power law") {
  std::vector<int> ns;
  std::vector<double> freqs;
  for (int n = 1; n <= 10; ++n) {
    ns.push_back(n);
    freqs.push_back(27.0 * std::sqrt(static_cast<double>(n)));
  }
  const ScalingFit fit = fit_scaling(ns, freqs);
  CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.prefactor_mhz == doctest::Approx(27.0).epsilon(1e-12));
  CHECK(fit.exponent_var < 1e-20);
  CHECK(fit.log_prefactor_var < 1e-20);
}

TEST_CASE("scaling fit on three points") {
  const ScalingFit fit = fit_scaling({1, 4, 9}, {27.0, 54.0, 81.0});
  CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.prefactor_mhz == doctest::Approx(27.0).epsilon(1e-12));
}

TEST_CASE("scaling prefactor is linear in the frequencies") {
  const std::vector<int> ns = {2, 5, 7, 9};
  std::vector<double> freqs, tripled;
  for (int n : ns) {
    freqs.push_back(13.5 * std::pow(n, 0.5));
    tripled.push_back(3.0 * freqs.back());
  }
  const ScalingFit a = fit_scaling(ns, freqs);
  const ScalingFit b = fit_scaling(ns, tripled);
  CHECK(b.exponent == doctest::Approx(a.exponent).epsilon(1e-12));
  CHECK(b.prefactor_mhz == doctest::Approx(3.0 * a.prefactor_mhz).epsilon(1e-12));
}

TEST_CASE("scaling fit input validation") {
  CHECK_THROWS_AS(fit_scaling({1, 2}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(fit_scaling({3, 3, 3, 3}, {1.0, 1.0, 1.0, 1.0}), Error);  // one distinct N
  CHECK_THROWS_AS(fit_scaling({1, 2, 3}, {1.0, 0.0, 2.0}), Error);          // nonpositive f
  CHECK_THROWS_AS(fit_scaling({1, 2, 3}, {1.0, 2.0}), Error);               // size mismatch
  try {
    fit_scaling({4, 4, 4}, {1, 1, 1});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("need >= 3 distinct N") != std::string::npos);
  }
}

TEST_CASE("trajectory csv round-trips through the reader") {
  Trajectory traj;
  traj.n_qubits = 2;
  traj.times_ns = {0.0, 0.5, 1.0};
  traj.p1 = {{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}};
  traj.photon_p1 = {0.7, 0.25, 0.125};
  traj.mean_photon = {0.7, 0.25, 0.125};

  std::ostringstream out;
  cli::write_trajectory_csv(out, traj);
  std::istringstream in(out.str());
  const CsvTable table = read_csv(in);

  REQUIRE(table.header ==
          std::vector<std::string>{"t_ns", "p1_q1", "p1_q2", "photon_p1", "photon_mean"});
  REQUIRE(table.rows() == 3);
  CHECK(table.column("photon_p1") == 3);
  CHECK(table.column("nope") == -1);
  for (size_t r = 0; r < 3; ++r) {
    CHECK(table.columns[0][r] == doctest::Approx(traj.times_ns[r]).epsilon(1e-12));
    CHECK(table.columns[1][r] == doctest::Approx(traj.p1[r][0]).epsilon(1e-12));
    CHECK(table.columns[2][r] == doctest::Approx(traj.p1[r][1]).epsilon(1e-12));
    CHECK(table.columns[3][r] == doctest::Approx(traj.photon_p1[r]).epsilon(1e-12));
  }
}

TEST_CASE("csv reader rejects ragged and non-numeric rows") {
  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(ragged), Error);
  try {
    std::istringstream again("a,b\n1,2\n3\n");
    read_csv(again);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("csv line 3") != std::string::npos);
  }
  std::istringstream word("a,b\n1,x\n");
  CHECK_THROWS_AS(read_csv(word), Error);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), Error);
}

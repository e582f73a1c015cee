#pragma once

#include <array>
#include <optional>
#include <string>

#include "pkepler/closed_form.hpp"
#include "pkepler/kepler.hpp"
#include "pkepler/oscillator.hpp"

namespace pkepler {

enum class RunMode { simulate, closed_form, compare, conserve_report };
enum class Chart { complex_chart, canonical, kepler };

struct RunConfig {
  RunMode mode = RunMode::simulate;
  Chart chart = Chart::complex_chart;

  // params.* (simulate / conserve-report)
  int k = 1, l = 1;
  std::string h0_family = "sum";
  std::array<double, 5> h0_coeffs{};  // c0..c4 for affine, c0 for constant
  std::string g0_family = "zero";
  std::array<double, 5> g0_coeffs{};

  // initial.* (chart-dependent)
  std::optional<std::array<double, 8>> initial_complex;    // eta, xi re/im
  std::optional<std::array<double, 8>> initial_canonical;  // actions, angles
  std::optional<std::array<double, 3>> initial_x, initial_y;

  // example.* (closed-form / compare)
  std::optional<ExampleParams> example;

  double t_end = 0;
  int samples = 1000;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long seed = 0;
  std::string output_path;

  OscillatorParams oscillator_params() const;
};

// Parses a flat `key = value` document (one pair per line, `#` comments).
// Unknown keys are rejected by name; violations name the key and line.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

}  // namespace pkepler

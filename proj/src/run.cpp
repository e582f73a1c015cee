#include "pkepler/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "pkepler/csv.hpp"
#include "pkepler/errors.hpp"

namespace pkepler {

namespace {

std::string base_name(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return path.substr(0, path.size() - 4);
  return path;
}

std::vector<double> sample_grid(const RunConfig& cfg) {
  return linspace(0.0, cfg.t_end, cfg.samples);
}

Trajectory simulate_trajectory(const RunConfig& cfg) {
  const OscillatorParams p = cfg.oscillator_params();
  const std::vector<double> grid = sample_grid(cfg);
  switch (cfg.chart) {
    case Chart::complex_chart:
      return integrate_complex(complex_state_from(*cfg.initial_complex), p,
                               0.0, cfg.t_end, cfg.rel_tol, cfg.abs_tol, grid);
    case Chart::canonical:
      return integrate_reduced(canonical_state_from(*cfg.initial_canonical), p,
                               0.0, cfg.t_end, cfg.rel_tol, cfg.abs_tol, grid);
    case Chart::kepler: {
      PhasePoint pt{*cfg.initial_y, *cfg.initial_x};
      return integrate_pk(pt, p, 0.0, cfg.t_end, cfg.rel_tol, cfg.abs_tol,
                          grid);
    }
  }
  throw config_error("run: invalid chart");
}

Trajectory closed_form_trajectory(const RunConfig& cfg) {
  const ExampleParams& ex = *cfg.example;
  const EllipticConstants ec = example_constants(ex);
  const OscillatorParams p = example_oscillator(ex);
  const std::vector<double> grid = sample_grid(cfg);

  Trajectory traj;
  traj.times = grid;
  for (double t : grid) {
    const ClosedState cs = state_closed(t, ex, ec);
    switch (cfg.chart) {
      case Chart::complex_chart: {
        const auto a = complex_state_to(cs.state);
        traj.states.emplace_back(a.begin(), a.end());
        traj.meta["H"].push_back(hamiltonian_full(cs.state, p));
        traj.meta["I0"].push_back(cs.I[0]);
        traj.meta["J0"].push_back(cs.J[0]);
        break;
      }
      case Chart::kepler: {
        std::vector<double> s(6);
        for (int i = 0; i < 3; ++i) {
          s[static_cast<std::size_t>(i)] = cs.point.y[static_cast<std::size_t>(i)];
          s[static_cast<std::size_t>(3 + i)] = cs.point.x[static_cast<std::size_t>(i)];
        }
        traj.states.push_back(std::move(s));
        const ConservedVectors cv = conserved_vectors(cs.point);
        traj.meta["H"].push_back(hamiltonian_pk(cs.point, p));
        traj.meta["M1"].push_back(cv.M[0]);
        traj.meta["M2"].push_back(cv.M[1]);
        traj.meta["M3"].push_back(cv.M[2]);
        traj.meta["R0"].push_back(cv.R0);
        break;
      }
      case Chart::canonical: {
        const ClosedAngles a = angles_closed(t, ex, ec);
        CanonicalState c{ex.I0, ex.I0, i3_closed(t, ex, ec), 0.0,
                         a.phi0, a.psi0, a.phi3p, a.psi3p};
        const auto arr = canonical_state_to(c);
        traj.states.emplace_back(arr.begin(), arr.end());
        traj.meta["H"].push_back(reduced_hamiltonian(c, p));
        break;
      }
    }
  }
  return traj;
}

RunResult run_compare(const RunConfig& cfg) {
  const ExampleParams& ex = *cfg.example;
  const EllipticConstants ec = example_constants(ex);
  const OscillatorParams p = example_oscillator(ex);
  const std::vector<double> grid = sample_grid(cfg);

  // Closed-form samples.
  std::vector<ClosedState> closed;
  std::vector<ClosedAngles> closed_angles;
  closed.reserve(grid.size());
  for (double t : grid) {
    closed.push_back(state_closed(t, ex, ec));
    closed_angles.push_back(angles_closed(t, ex, ec));
  }

  // Numeric flow from the shared initial state.
  const Trajectory num = integrate_complex(closed.front().state, p, 0.0,
                                           cfg.t_end, cfg.rel_tol, cfg.abs_tol,
                                           grid);

  // Canonical angles of the numeric flow, unwrapped along the trajectory.
  CanonicalState prev{ex.I0, ex.I0, 0.0, 0.0,
                      ex.phi0_0, ex.phi0_0 + ex.Delta2,
                      example_phi3p_initial(ex), ex.Delta1};
  std::vector<std::string> cols = {"t",      "d_i3p", "d_phi0", "d_phi3p",
                                   "d_x",    "d_y",   "max_abs"};
  std::vector<std::vector<double>> rows;
  double max_dev = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ComplexState s = complex_state_from(num.states[i]);
    const CanonicalState c = to_canonical(s, p, prev);
    prev = c;
    const PhasePoint pt = ks_project(s);
    const double d_i3p = std::abs(c.I3p - i3_closed(grid[i], ex, ec));
    const double d_phi0 = std::abs(c.phi0 - closed_angles[i].phi0);
    const double d_phi3p = std::abs(c.phi3p - closed_angles[i].phi3p);
    double d_x = 0, d_y = 0;
    for (int j = 0; j < 3; ++j) {
      d_x = std::max(d_x, std::abs(pt.x[static_cast<std::size_t>(j)] -
                                   closed[i].point.x[static_cast<std::size_t>(j)]));
      d_y = std::max(d_y, std::abs(pt.y[static_cast<std::size_t>(j)] -
                                   closed[i].point.y[static_cast<std::size_t>(j)]));
    }
    const double m = std::max({d_i3p, d_phi0, d_phi3p, d_x, d_y});
    max_dev = std::max(max_dev, m);
    rows.push_back({grid[i], d_i3p, d_phi0, d_phi3p, d_x, d_y, m});
  }

  RunResult res;
  const std::string base = base_name(cfg.output_path);
  RunConfig closed_cfg = cfg;
  closed_cfg.chart = Chart::complex_chart;
  write_csv(closed_form_trajectory(closed_cfg), Chart::complex_chart,
            base + ".closed.csv");
  write_csv(num, Chart::complex_chart, base + ".numeric.csv");
  write_table(cols, rows, cfg.output_path);
  res.files_written = {base + ".closed.csv", base + ".numeric.csv",
                       cfg.output_path};
  res.max_deviation = max_dev;
  return res;
}

RunResult run_conserve_report(const RunConfig& cfg) {
  const Trajectory traj = simulate_trajectory(cfg);

  std::vector<std::pair<std::string, const std::vector<double>*>> quantities;
  for (const auto& [name, column] : traj.meta) quantities.emplace_back(name, &column);

  // The kepler chart also reports the Runge-Lenz vector drift.
  std::vector<std::vector<double>> rvec(3);
  if (cfg.chart == Chart::kepler) {
    for (const auto& s : traj.states) {
      const ConservedVectors cv = conserved_vectors(phase_point_from(s));
      for (int j = 0; j < 3; ++j)
        rvec[static_cast<std::size_t>(j)].push_back(cv.R[static_cast<std::size_t>(j)]);
    }
    quantities.emplace_back("R1", &rvec[0]);
    quantities.emplace_back("R2", &rvec[1]);
    quantities.emplace_back("R3", &rvec[2]);
  }

  std::ofstream out(cfg.output_path);
  if (!out) throw io_error("cannot open output file: " + cfg.output_path);
  out << "quantity,initial,max_drift\n";
  double max_drift = 0;
  for (const auto& [name, column] : quantities) {
    double drift = 0;
    for (double v : *column) drift = std::max(drift, std::abs(v - column->front()));
    max_drift = std::max(max_drift, drift);
    out << name << ',' << format_g17(column->front()) << ','
        << format_g17(drift) << "\n";
  }
  if (!out) throw io_error("write failure: " + cfg.output_path);

  RunResult res;
  res.files_written = {cfg.output_path};
  res.max_drift = max_drift;
  return res;
}

}  // namespace

RunResult run(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (cfg.output_path.empty()) cfg.output_path = "out.csv";
  switch (cfg.mode) {
    case RunMode::simulate: {
      write_csv(simulate_trajectory(cfg), cfg.chart, cfg.output_path);
      RunResult res;
      res.files_written = {cfg.output_path};
      return res;
    }
    case RunMode::closed_form: {
      write_csv(closed_form_trajectory(cfg), cfg.chart, cfg.output_path);
      RunResult res;
      res.files_written = {cfg.output_path};
      return res;
    }
    case RunMode::compare:
      return run_compare(cfg);
    case RunMode::conserve_report:
      return run_conserve_report(cfg);
  }
  throw config_error("run: invalid mode");
}

}  // namespace pkepler

#include "pkepler/csv.hpp"

#include <cstdio>
#include <fstream>

#include "pkepler/errors.hpp"

namespace pkepler {

namespace {

const char* header_for(Chart chart) {
  switch (chart) {
    case Chart::kepler:
      return "t,x1,x2,x3,y1,y2,y3,H,M1,M2,M3,R0";
    case Chart::complex_chart:
      return "t,re_eta1,im_eta1,re_eta2,im_eta2,re_xi1,im_xi1,re_xi2,im_xi2,"
             "H,I0,J0";
    case Chart::canonical:
      return "t,I0,J0,I3p,J3p,phi0,psi0,phi3p,psi3p,H";
  }
  return "";
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Trajectory& traj, Chart chart, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open output file: " + path);
  out << header_for(chart) << "\n";
  const std::size_t n = traj.times.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << format_g17(traj.times[i]);
    const auto& s = traj.states[i];
    switch (chart) {
      case Chart::kepler:
        // states hold (y, x); columns print x first.
        for (int j = 3; j < 6; ++j) out << ',' << format_g17(s[static_cast<std::size_t>(j)]);
        for (int j = 0; j < 3; ++j) out << ',' << format_g17(s[static_cast<std::size_t>(j)]);
        out << ',' << format_g17(traj.meta.at("H")[i]);
        out << ',' << format_g17(traj.meta.at("M1")[i]);
        out << ',' << format_g17(traj.meta.at("M2")[i]);
        out << ',' << format_g17(traj.meta.at("M3")[i]);
        out << ',' << format_g17(traj.meta.at("R0")[i]);
        break;
      case Chart::complex_chart:
        for (double v : s) out << ',' << format_g17(v);
        out << ',' << format_g17(traj.meta.at("H")[i]);
        out << ',' << format_g17(traj.meta.at("I0")[i]);
        out << ',' << format_g17(traj.meta.at("J0")[i]);
        break;
      case Chart::canonical:
        for (double v : s) out << ',' << format_g17(v);
        out << ',' << format_g17(traj.meta.at("H")[i]);
        break;
    }
    out << "\n";
  }
  if (!out) throw io_error("write failure: " + path);
}

void write_table(const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open output file: " + path);
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_g17(row[c]);
    out << "\n";
  }
  if (!out) throw io_error("write failure: " + path);
}

}  // namespace pkepler

#pragma once

#include <string>
#include <vector>

#include "pkepler/config.hpp"
#include "pkepler/ode.hpp"

namespace pkepler {

// Trajectory CSV: header row then one row per sample, decimal text with 17
// significant digits (binary doubles round-trip exactly).  Column layouts:
//   kepler:  t,x1,x2,x3,y1,y2,y3,H,M1,M2,M3,R0
//   complex: t,re_eta1,im_eta1,re_eta2,im_eta2,re_xi1,im_xi1,re_xi2,im_xi2,H,I0,J0
//   canonical: t,I0,J0,I3p,J3p,phi0,psi0,phi3p,psi3p,H
void write_csv(const Trajectory& traj, Chart chart, const std::string& path);

// Generic table writer used for deviation and drift reports.
void write_table(const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows,
                 const std::string& path);

std::string format_g17(double v);

}  // namespace pkepler

#pragma once

#include <ostream>
#include <string>

#include "oneleg/integrator.hpp"
#include "oneleg/problem.hpp"
#include "oneleg/study.hpp"

namespace oneleg {

// Shortest round-trip decimal form; locale-independent, so identical runs
// serialize byte-identically.
std::string csv_number(double x);

// step,time,H,E_rel,production,min_w,mass_residual with a `# key=value`
// provenance header.  E_rel is taken against h_star.  Pass the decay fit
// to record slope/R^2 in the header (entropy subcommand).
void write_trace_csv(std::ostream& os, const ProblemSpec& spec, const Trajectory& traj,
                     double h_star, const DecayReport* fit = nullptr);

void write_convergence_csv(std::ostream& os, const ProblemSpec& base, const ConvergenceReport& rep);

void write_schemes_csv(std::ostream& os, const std::vector<SchemeReportRow>& rows);

// Density matrix u = v^{2/alpha}: row = node, column = species.
void write_snapshot_csv(std::ostream& os, const GridState& v, double alpha);

}  // namespace oneleg

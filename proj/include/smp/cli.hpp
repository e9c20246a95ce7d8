#pragma once

// Subcommand front end. JSON documents go to `out`, diagnostics to `err`.
// Exit status: 0 success, 1 hypothesis or domain failure (or a false
// verdict), 2 numerically inconclusive.

#include "smp/constructions.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace smp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitHypothesis = 1;
inline constexpr int kExitInconclusive = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct PlotRow {
  double p = 0;
  double lhs = 0;
  double rhs = 0;
  double difference = 0;
};

/// Evaluates both sides at `samples` evenly spaced interior points of
/// cert.p_interval; even integers are skipped.
std::vector<PlotRow> emit_plot_data(const Certificate& cert, std::size_t samples, const EvalConfig& cfg);

/// "p,lhs,rhs,difference" rows.
void write_plot_csv(const std::vector<PlotRow>& rows, std::ostream& os);

}  // namespace smp

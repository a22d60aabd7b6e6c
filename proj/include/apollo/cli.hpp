#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "apollo/gasket.hpp"

namespace apollo::cli {

struct JobConfig {
  double outer_radius = 1.0;
  SeedStyle seed;
  double r_min = 0.0;
  std::optional<double> delta;  // r_min / 4 when unset
  bool nested = false;
  double ratio = 0.5;
  int steps = 6;
  double grid_step = 0.0;    // zero: outer / 50
  double sample_step = 0.0;  // zero: delta
  std::string in_path;
  std::string out_path;  // empty: standard output
  std::string svg_path;
  std::string plot_path;
  std::string convergence_path;

  double effective_delta() const { return delta ? *delta : 0.25 * r_min; }
};

// Throws Error (InvalidArgument / DeltaTooLarge) on a bad combination.
void validate(const JobConfig& cfg);

// Exit codes: 0 success, 1 validation, 2 computation failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitComputation = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apollo::cli

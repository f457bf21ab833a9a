#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifn/model_io.hpp"

namespace ifn {

enum ExitCode : int { kExitOk = 0, kExitHypothesis = 1, kExitNumerical = 2, kExitSchema = 3 };

struct CommandFlags {
  std::optional<double> offset;  // also disables automatic offset placement
  std::optional<double> half_height;
  std::optional<double> tol;  // contour and quadrature tolerance
  std::optional<int> nodes;
  std::optional<double> exponent_override;
  Complex z = 1.0;
  /// Evaluation points for verify; eval adds the weighted value when set.
  std::vector<double> x;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Default tolerance: IFN_TOL from the environment when set and valid.
std::optional<double> env_tolerance();

/// Runs eval | apply | verify | reduce | report. Never throws; errors map to
/// exit codes 1 (hypothesis), 2 (numerical), 3 (schema or invariant).
CommandResult run(const std::string& command, const ModelDocument& doc, const CommandFlags& flags);

/// Numbers in command output: scientific notation, 17 significant digits.
std::string format_number(double v);

}  // namespace ifn

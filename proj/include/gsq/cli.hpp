#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gsq/interference.hpp"

namespace gsq::cli {

enum ExitCode : int { kSuccess = 0, kUnexpected = 1, kInputError = 2, kNumericError = 3 };

struct FigureOptions {
  double k_abs = 1.0;
  double n_bar = 32.0;
  double q = 0.3;  // fig4 only; fig3 sweeps its own q values
  int points = 256;
  std::optional<double> phi_min;
  std::optional<double> phi_max;
};

/// Writes the data files for fig3..fig6 into `dir` and returns their paths.
std::vector<std::filesystem::path> write_figure(const std::string& name, const FigureOptions& options,
                                                const std::filesystem::path& dir);

/// Reads an inline JSON object or a path to a file holding one.
std::string read_state_argument(const std::string& arg);

/// Parses "n" or "n1,n2".
std::pair<int, int> parse_cutoff(const std::string& text);

/// Accepts "0", "pi" or a number equal to 0 or pi.
double parse_theta(const std::string& text);

/// Entry point; args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsq::cli

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace polexp::cli {

/// One float cell, 16 significant digits in scientific notation.
std::string format_sci(double value);

struct PolesParams {
  double tmin = 1.0;
  double tmax = 1.0;
  int n = 20;
};

struct ScanParams {
  double tmin = 0.1;
  double tmax = 1.0;
  int n = 20;
  double gmin = 1e-3;
  double gmax = 1.0;
  int gcount = 25;
  std::string svg_path;
};

struct Table2Params {
  int n = 20;
};

struct ConvergenceParams {
  int nmax = 40;
  std::optional<double> tmin;
  std::optional<double> tmax;
  std::string svg_path;
};

struct IvpParams {
  std::vector<int> degrees{8, 14, 20, 26};
  int grid = 69;
  double tmin = 1e-3;
  double tmax = 1.0;
  int times = 41;
  std::string out_path;
  std::string svg_path;
};

struct ExpvParams {
  std::string matrix_path;
  std::string b_path;
  int n = 20;
  double tmin = 1e-3;
  double tmax = 1.0;
  int times = 41;
  std::string method = "cheb";
  std::string out_path;
};

void cmd_rate(double q, std::ostream& out);
void cmd_poles(const PolesParams& params, std::ostream& out);
void cmd_table1(std::ostream& out);
void cmd_scan(const ScanParams& params, std::ostream& out);
void cmd_table2(const Table2Params& params, std::ostream& out);
void cmd_convergence(const ConvergenceParams& params, std::ostream& out);
void cmd_ivp(const IvpParams& params, std::ostream& out);
void cmd_expv(const ExpvParams& params, std::ostream& out);

/// Parses flags and dispatches. Exit codes: 0 success, 2 flag error,
/// 3 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace polexp::cli

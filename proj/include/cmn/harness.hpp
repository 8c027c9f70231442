// Command implementations behind the `cmn` executable. Each command writes
// its report to the given stream and throws on bad input; run() maps
// exceptions to exit codes.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmn/states.hpp"

namespace cmn {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::vector<int> h_list;
  std::vector<std::string> p_list;
  int grid = 0;  // 0 selects the command default
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;
  int restarts = 32;
  int d_max = 3;
  // search-max only
  int dim_a = 3;
  int dim_b = 2;
  int budget = 20000;
  unsigned threads = 1;
  // make-state only
  std::string family;
  double param = 0.0;
};

/// 0 = ran, 1 = input error, 2 = internal invariant violation.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

void cmd_analyze(const RunConfig& config, std::ostream& out);
void cmd_sweep_pure(const RunConfig& config, std::ostream& out);
void cmd_sweep_virzi(const RunConfig& config, std::ostream& out);
/// Returns true when every check passed.
bool cmd_reproduce_gap(const RunConfig& config, std::ostream& out);
bool cmd_verify_theorems(const RunConfig& config, std::ostream& out);
void cmd_bounds_table(const RunConfig& config, std::ostream& out);
void cmd_search_max(const RunConfig& config, std::ostream& out);
void cmd_make_state(const RunConfig& config, std::ostream& out);

/// n points spanning [lo, hi]; the endpoints are exact.
std::vector<double> uniform_grid(double lo, double hi, int n);

/// Schmidt vector (sin t cos f, sin t sin f, cos t), sorted descending. The
/// trigonometric values are exact at the grid ends 0 and pi/2, so boundary
/// cells carry exact zeros.
PureSchmidt spherical_schmidt(int theta_index, int phi_index, int n);

/// Named state families for make-state: bell, product, maximally-mixed,
/// werner2, werner3, gap, virzi (param = q, r = 1).
DensityMatrix named_state(const std::string& family, double param);

}  // namespace cmn

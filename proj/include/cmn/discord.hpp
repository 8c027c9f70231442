// CMN-based discord with respect to subsystem A:
//   D^A_{h,p}(rho) = M_{h,p}(rho)^p - max_Pi M_{h,p}(Pi[rho])^p,
// where Pi ranges over rank-one projective measurements on A.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cmn/detect.hpp"
#include "cmn/hermitian_basis.hpp"
#include "cmn/states.hpp"

namespace cmn {

/// Rank-one projective measurement {|l><l|} from an orthonormal basis.
class ProjectiveMeasurement {
 public:
  /// Columns of the unitary are the measurement vectors.
  explicit ProjectiveMeasurement(CMatrix unitary);
  static ProjectiveMeasurement computational(int dim);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const CMatrix& basis() const { return basis_; }
  std::vector<CMatrix> projectors() const;

 private:
  CMatrix basis_;
};

/// sum_l (Pi_l (x) 1) rho (Pi_l (x) 1).
DensityMatrix measure_channel(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// A = X X^T with X_il = <l|A_i|l>; C(measured rho) = A C(rho).
RMatrix measurement_projector(const ProjectiveMeasurement& m, const HermitianBasis& basis_a);

struct OptimizerConfig {
  int restarts = 32;
  /// Spread of the simplex around each restart point.
  double initial_step = 0.4;
  double tolerance = 1e-12;
  int max_evaluations = 4000;
  std::uint64_t seed = 20240601;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct DiscordResult {
  double value = 0.0;
  /// pre_value - post_value before clamping.
  double raw_value = 0.0;
  ProjectiveMeasurement best_measurement = ProjectiveMeasurement::computational(1);
  double pre_value = 0.0;
  double post_value = 0.0;
  int restarts_used = 0;
  bool converged = false;
};

/// Rejects p = infinity. Raw values in [-1e-8, 0) clamp to 0; anything
/// lower raises InvariantViolation.
DiscordResult cmn_discord(const DensityMatrix& rho, const CmnParams& params, const OptimizerConfig& opt = {});

/// Closed form for two qubits with Pauli-normalized Bloch data:
/// (|x|^2 + |T|_F^2 - lambda_max(x x^T + T T^T)) / 4.
double geometric_discord_2q_oracle(const DensityMatrix& rho);

struct DiscordRow {
  double q = 0.0;
  double r = 0.0;
  CmnParams params;
  double discord = 0.0;
};

/// One row per (q, r, params) in grid order (q outer, r, then params).
std::vector<DiscordRow> discord_sweep_virzi(const std::vector<double>& q_grid, const std::vector<double>& r_grid,
                                            const std::vector<CmnParams>& params_list,
                                            const OptimizerConfig& opt = {});

/// Minimizes f by Nelder-Mead from x0. Returns the best point; converged is
/// set when the simplex value spread fell below tolerance.
struct NelderMeadResult {
  RVector x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};
NelderMeadResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& x0, double step,
                             double tolerance, int max_evaluations);

}  // namespace cmn

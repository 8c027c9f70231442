// Correlation Minor Norms and the separable-state bounds built on them.
//
// M_{h,p} is the Schatten p-norm of the h-th compound matrix of the
// correlation matrix C. Because the singular values of the compound matrix
// are the h-fold products of the singular values of C, it reduces to
//   M_{h,p} = S_h(sigma_1^p, ..., sigma_n^p)^(1/p)
// with S_h the elementary symmetric polynomial, and for p = infinity to the
// product of the h largest singular values.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmn/correlation.hpp"
#include "cmn/states.hpp"

namespace cmn {

/// Schatten exponent in [1, inf) or the distinguished value infinity.
class SchattenP {
 public:
  static SchattenP finite(double p);
  static SchattenP infinity() { return SchattenP(0.0, true); }
  /// Accepts "inf", "infinity" or a number >= 1.
  static SchattenP parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  /// Only meaningful for finite exponents.
  double value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const SchattenP&, const SchattenP&) = default;

 private:
  SchattenP(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

struct CmnParams {
  int h = 1;
  SchattenP p = SchattenP::finite(1.0);

  std::string label() const;
};

/// S_h(values) by recursive convolution over values sorted by decreasing
/// magnitude. Throws when h > values.size().
double elementary_symmetric(int h, const std::vector<double>& values);

/// Throws on negative sigma or h outside [1, sigma.size()].
double cmn_from_singulars(const std::vector<double>& sigma, const CmnParams& params);
double cmn_from_singulars(const RVector& sigma, const CmnParams& params);

/// Matrix of all h x h minors, row/column combinations in lexicographic order.
RMatrix compound_matrix(const RMatrix& m, int h);

/// Schatten p-norm of a matrix from its singular values.
double schatten_norm(const RMatrix& m, const SchattenP& p);

/// M_{h,p} of rho with generalized Gell-Mann bases; h must lie in [1, d^2].
double cmn(const DensityMatrix& rho, const CmnParams& params);

/// p = 1 separable bound S_h(alpha, beta, ..., beta); needs h > 1 and D <= d^3.
double bound_p1(int dim_a, int dim_b, int h);

/// p = infinity separable bound (1/sqrt(Dd)) [(D-1)(d-1) / (D d (h-1)^2)]^((h-1)/2),
/// valid for h >= sqrt(Dd).
double bound_pinf(int dim_a, int dim_b, int h);

/// Returns the bound when its hypotheses hold, nullopt otherwise.
std::optional<double> try_bound(int dim_a, int dim_b, const CmnParams& params);

/// Singular-value scale alpha = 1/sqrt(Dd).
double design_alpha(int dim_a, int dim_b);
/// Trailing singular value of d^2-element design states.
double design_beta(int dim_a, int dim_b);
/// Trailing singular value of h-element design states.
double design_beta_h(int dim_a, int dim_b, int h);

struct CriterionResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool violated = false;
  bool applicable = true;
  /// False when the bound is only conjectured for this state (non-FNF).
  bool theorem_backed = true;
};

CriterionResult ccnr(const DensityMatrix& rho);

/// M_{1,1} <= (1 + sqrt((D-1)(d-1))) / sqrt(Dd); applicable to FNF states.
CriterionResult cm_criterion(const DensityMatrix& rho);

/// Trace norm of the traceless block <= sqrt((D-1)(d-1)/(Dd)); FNF only.
CriterionResult dv_criterion(const DensityMatrix& rho);

struct Verdict {
  bool entangled = false;
  std::vector<std::string> triggered_by;
  std::vector<CriterionResult> criteria;
};

/// Runs CCNR, the FNF criteria and every (h, p) pair that has a bound. The
/// PPT result is attached for reference and never triggers the verdict.
Verdict detect(const DensityMatrix& rho, const std::vector<int>& h_list, const std::vector<SchattenP>& p_list);

/// detect() with h = 2..d^2 and p in {1, infinity}.
Verdict detect(const DensityMatrix& rho);

/// Largest t with (M_{t^2, inf})^(1/t^2) > tol for a pure state.
int schmidt_rank_pure(const DensityMatrix& rho, double tol = 1e-8);

/// Separable ensemble sum_k w_k |a_k><a_k| (x) |b_k><b_k|.
struct SeparableEnsemble {
  int dim_a = 0;
  int dim_b = 0;
  std::vector<double> weights;
  std::vector<CVector> vectors_a;
  std::vector<CVector> vectors_b;

  DensityMatrix to_density() const;
};

struct SearchResult {
  double best_value = 0.0;
  SeparableEnsemble best_state;
  int evaluations = 0;
};

/// Random sampling plus hill climbing inside the separable set (weights and
/// local pure vectors are perturbed). budget counts evaluations after the
/// initial seed sample; deterministic in seed.
SearchResult separable_max_search(int dim_a, int dim_b, const CmnParams& params, int budget, std::uint64_t seed);

}  // namespace cmn

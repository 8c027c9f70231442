#include "cmn/detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

namespace cmn {

namespace {

// Bound comparisons carry a small margin so that states sitting exactly on
// a bound (design states, critical Werner states) are not flagged by rounding.
constexpr double kViolationMargin = 1e-10;

std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> state_singulars(const DensityMatrix& rho) {
  return to_std(correlation_singulars(correlation_matrix(rho)));
}

void validate_params(const CmnParams& params, std::size_t n, const char* who) {
  if (params.h < 1 || static_cast<std::size_t>(params.h) > n) {
    throw std::invalid_argument(std::string(who) + ": h = " + std::to_string(params.h) + " outside [1, " +
                                std::to_string(n) + "]");
  }
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

SchattenP SchattenP::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("SchattenP: p = " + std::to_string(p) + " must lie in [1, inf)");
  }
  return SchattenP(p, false);
}

SchattenP SchattenP::parse(const std::string& text) {
  std::string lower;
  for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "inf" || lower == "infinity") return infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("SchattenP: cannot parse '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("SchattenP: cannot parse '" + text + "'");
  return finite(v);
}

std::string SchattenP::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

std::string CmnParams::label() const { return "CMN(h=" + std::to_string(h) + ",p=" + p.to_string() + ")"; }

double elementary_symmetric(int h, const std::vector<double>& values) {
  if (h < 0 || static_cast<std::size_t>(h) > values.size()) {
    throw std::invalid_argument("elementary_symmetric: h = " + std::to_string(h) + " outside [0, " +
                                std::to_string(values.size()) + "]");
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  std::vector<double> e(static_cast<std::size_t>(h) + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const std::size_t top = std::min<std::size_t>(i + 1, static_cast<std::size_t>(h));
    for (std::size_t j = top; j >= 1; --j) e[j] += sorted[i] * e[j - 1];
  }
  return e[static_cast<std::size_t>(h)];
}

double cmn_from_singulars(const std::vector<double>& sigma, const CmnParams& params) {
  validate_params(params, sigma.size(), "cmn_from_singulars");
  for (double s : sigma) {
    if (!(s >= 0.0)) throw std::invalid_argument("cmn_from_singulars: negative singular value");
  }
  if (params.p.is_infinite()) {
    std::vector<double> sorted = sigma;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double prod = 1.0;
    for (int k = 0; k < params.h; ++k) prod *= sorted[static_cast<std::size_t>(k)];
    return prod;
  }
  const double p = params.p.value();
  if (p == 1.0) return elementary_symmetric(params.h, sigma);
  std::vector<double> powered(sigma.size());
  std::transform(sigma.begin(), sigma.end(), powered.begin(), [p](double s) { return std::pow(s, p); });
  return std::pow(elementary_symmetric(params.h, powered), 1.0 / p);
}

double cmn_from_singulars(const RVector& sigma, const CmnParams& params) {
  return cmn_from_singulars(to_std(sigma), params);
}

RMatrix compound_matrix(const RMatrix& m, int h) {
  if (h < 1 || h > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("compound_matrix: h = " + std::to_string(h) + " invalid for " +
                                dims_string(m.rows(), m.cols()));
  }
  const auto rows = combinations(static_cast<int>(m.rows()), h);
  const auto cols = combinations(static_cast<int>(m.cols()), h);
  RMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  RMatrix block(h, h);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < h; ++c)
          block(r, c) = m(rows[i][static_cast<std::size_t>(r)], cols[j][static_cast<std::size_t>(c)]);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Eigen::PartialPivLU<RMatrix>(block).determinant();
    }
  }
  return out;
}

double schatten_norm(const RMatrix& m, const SchattenP& p) {
  const RVector s = singular_values(m);
  if (s.size() == 0) return 0.0;
  if (p.is_infinite()) return s(0);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i), p.value());
  return std::pow(acc, 1.0 / p.value());
}

double cmn(const DensityMatrix& rho, const CmnParams& params) {
  const auto d = static_cast<std::size_t>(rho.min_dim());
  validate_params(params, d * d, "cmn");
  return cmn_from_singulars(state_singulars(rho), params);
}

double design_alpha(int dim_a, int dim_b) { return 1.0 / std::sqrt(static_cast<double>(dim_a) * dim_b); }

double design_beta(int dim_a, int dim_b) {
  const double big = std::max(dim_a, dim_b);
  const double small = std::min(dim_a, dim_b);
  const double m = small * small - 1.0;
  return std::sqrt((big - 1.0) * (small - 1.0) / (big * small * m * m));
}

double design_beta_h(int dim_a, int dim_b, int h) {
  const double big = std::max(dim_a, dim_b);
  const double small = std::min(dim_a, dim_b);
  const double m = h - 1.0;
  return std::sqrt((big - 1.0) * (small - 1.0) / (big * small * m * m));
}

double bound_p1(int dim_a, int dim_b, int h) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("bound_p1: invalid dimensions");
  const int big = std::max(dim_a, dim_b);
  const int small = std::min(dim_a, dim_b);
  if (h <= 1) throw std::invalid_argument("bound_p1: hypothesis h > 1 violated (h = " + std::to_string(h) + ")");
  if (h > small * small) {
    throw std::invalid_argument("bound_p1: h = " + std::to_string(h) + " exceeds d^2 = " + std::to_string(small * small));
  }
  if (big > small * small * small) {
    throw std::invalid_argument("bound_p1: hypothesis D <= d^3 violated (D = " + std::to_string(big) +
                                ", d = " + std::to_string(small) + ")");
  }
  std::vector<double> args(static_cast<std::size_t>(small * small), design_beta(dim_a, dim_b));
  args[0] = design_alpha(dim_a, dim_b);
  return elementary_symmetric(h, args);
}

double bound_pinf(int dim_a, int dim_b, int h) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("bound_pinf: invalid dimensions");
  const int big = std::max(dim_a, dim_b);
  const int small = std::min(dim_a, dim_b);
  if (h < 2) throw std::invalid_argument("bound_pinf: h must be at least 2 (h = " + std::to_string(h) + ")");
  if (h > small * small) {
    throw std::invalid_argument("bound_pinf: h = " + std::to_string(h) + " exceeds d^2 = " + std::to_string(small * small));
  }
  if (h * h < big * small) {
    throw std::invalid_argument("bound_pinf: hypothesis h >= sqrt(Dd) violated (h = " + std::to_string(h) +
                                ", Dd = " + std::to_string(big * small) + ")");
  }
  const double big_d = big;
  const double small_d = small;
  const double m = h - 1.0;
  const double base = (big_d - 1.0) * (small_d - 1.0) / (big_d * small_d * m * m);
  return design_alpha(dim_a, dim_b) * std::pow(base, m / 2.0);
}

std::optional<double> try_bound(int dim_a, int dim_b, const CmnParams& params) {
  try {
    if (params.p.is_infinite()) return bound_pinf(dim_a, dim_b, params.h);
    if (params.p.value() == 1.0) return bound_p1(dim_a, dim_b, params.h);
  } catch (const std::invalid_argument&) {
  }
  return std::nullopt;
}

CriterionResult ccnr(const DensityMatrix& rho) {
  CriterionResult r{"CCNR", 0.0, 1.0, false, true, true};
  r.value = cmn(rho, {1, SchattenP::finite(1.0)});
  r.violated = r.value > r.bound + kViolationMargin;
  return r;
}

CriterionResult cm_criterion(const DensityMatrix& rho) {
  const double big = rho.max_dim();
  const double small = rho.min_dim();
  CriterionResult r{"CM", 0.0, (1.0 + std::sqrt((big - 1.0) * (small - 1.0))) / std::sqrt(big * small), false,
                    true, true};
  r.value = cmn(rho, {1, SchattenP::finite(1.0)});
  r.applicable = is_fnf(rho);
  r.violated = r.applicable && r.value > r.bound + kViolationMargin;
  return r;
}

CriterionResult dv_criterion(const DensityMatrix& rho) {
  const double big = rho.max_dim();
  const double small = rho.min_dim();
  CriterionResult r{"dV", 0.0, std::sqrt((big - 1.0) / big * (small - 1.0) / small), false, true, true};
  const FnfBlocks blocks = fnf_blocks(correlation_matrix(rho));
  r.value = singular_values(blocks.t).sum();
  r.applicable = is_fnf(rho);
  r.violated = r.applicable && r.value > r.bound + kViolationMargin;
  return r;
}

Verdict detect(const DensityMatrix& rho, const std::vector<int>& h_list, const std::vector<SchattenP>& p_list) {
  Verdict v;
  const bool fnf = is_fnf(rho);
  const std::vector<double> sigma = state_singulars(rho);
  const auto record = [&v](CriterionResult r) {
    if (r.applicable && r.violated) v.triggered_by.push_back(r.name);
    v.criteria.push_back(std::move(r));
  };
  record(ccnr(rho));
  record(cm_criterion(rho));
  record(dv_criterion(rho));
  for (int h : h_list) {
    for (const SchattenP& p : p_list) {
      const CmnParams params{h, p};
      if (h < 1 || static_cast<std::size_t>(h) > sigma.size()) continue;
      const auto bound = try_bound(rho.dim_a(), rho.dim_b(), params);
      if (!bound) continue;
      CriterionResult r{params.label(), cmn_from_singulars(sigma, params), *bound, false, true, fnf};
      r.violated = r.value > r.bound + kViolationMargin;
      record(std::move(r));
    }
  }
  const double ppt = ppt_min_eigenvalue(rho);
  v.criteria.push_back({"PPT", ppt, 0.0, ppt < -1e-9, true, true});
  v.entangled = !v.triggered_by.empty();
  return v;
}

Verdict detect(const DensityMatrix& rho) {
  const int d = rho.min_dim();
  std::vector<int> hs;
  for (int h = 2; h <= d * d; ++h) hs.push_back(h);
  return detect(rho, hs, {SchattenP::finite(1.0), SchattenP::infinity()});
}

int schmidt_rank_pure(const DensityMatrix& rho, double tol) {
  const double purity = rho.purity();
  if (purity < 1.0 - tol::kPurity) {
    throw std::invalid_argument("schmidt_rank_pure: state is mixed (purity " + std::to_string(purity) + ")");
  }
  const std::vector<double> sigma = state_singulars(rho);
  for (int t = rho.min_dim(); t > 1; --t) {
    const int h = t * t;
    const double m = cmn_from_singulars(sigma, {h, SchattenP::infinity()});
    if (std::pow(m, 1.0 / h) > tol) return t;
  }
  return 1;
}

DensityMatrix SeparableEnsemble::to_density() const {
  const int n = dim_a * dim_b;
  CMatrix rho = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const CVector ab = kron(vectors_a[k], vectors_b[k]);
    rho += weights[k] * (ab * ab.adjoint());
  }
  return DensityMatrix(dim_a, dim_b, 0.5 * (rho + rho.adjoint()));
}

namespace {

CVector random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

SeparableEnsemble random_ensemble(int dim_a, int dim_b, int terms, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  SeparableEnsemble e{dim_a, dim_b, {}, {}, {}};
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double w = expo(rng);
    e.weights.push_back(w);
    total += w;
    e.vectors_a.push_back(random_unit(dim_a, rng));
    e.vectors_b.push_back(random_unit(dim_b, rng));
  }
  for (double& w : e.weights) w /= total;
  return e;
}

SeparableEnsemble perturb(const SeparableEnsemble& base, double step, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SeparableEnsemble e = base;
  double total = 0.0;
  for (double& w : e.weights) {
    w *= std::exp(step * normal(rng));
    total += w;
  }
  for (double& w : e.weights) w /= total;
  const auto jitter = [&](CVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(i) += step * Complex(re, im);
    }
    v /= v.norm();
  };
  for (CVector& v : e.vectors_a) jitter(v);
  for (CVector& v : e.vectors_b) jitter(v);
  return e;
}

}  // namespace

SearchResult separable_max_search(int dim_a, int dim_b, const CmnParams& params, int budget, std::uint64_t seed) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("separable_max_search: invalid dimensions");
  const int d = std::min(dim_a, dim_b);
  validate_params(params, static_cast<std::size_t>(d * d), "separable_max_search");
  const int terms = 2 * dim_a * dim_b;
  std::mt19937_64 rng(seed);

  const auto evaluate = [&](const SeparableEnsemble& e) { return cmn(e.to_density(), params); };

  SeparableEnsemble current = random_ensemble(dim_a, dim_b, terms, rng);
  double current_value = evaluate(current);
  SearchResult result{current_value, current, 0};

  constexpr int kStall = 150;
  double step = 0.3;
  int stalled = 0;
  for (int it = 0; it < budget; ++it) {
    SeparableEnsemble candidate;
    const bool restart = stalled >= kStall;
    if (restart) {
      candidate = random_ensemble(dim_a, dim_b, terms, rng);
    } else {
      candidate = perturb(current, step, rng);
    }
    const double value = evaluate(candidate);
    ++result.evaluations;
    if (restart) {
      current = std::move(candidate);
      current_value = value;
      step = 0.3;
      stalled = 0;
    } else if (value > current_value) {
      current = std::move(candidate);
      current_value = value;
      step = std::min(1.0, step * 1.5);
      stalled = 0;
    } else {
      step = std::max(1e-4, step * 0.95);
      ++stalled;
    }
    if (current_value > result.best_value) {
      result.best_value = current_value;
      result.best_state = current;
    }
  }
  return result;
}

}  // namespace cmn

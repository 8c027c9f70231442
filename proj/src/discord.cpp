#include "cmn/discord.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <limits>
#include <mutex>
#include <thread>

#include <Eigen/Eigenvalues>

namespace cmn {

ProjectiveMeasurement::ProjectiveMeasurement(CMatrix unitary) : basis_(std::move(unitary)) {
  if (basis_.rows() < 1 || basis_.rows() != basis_.cols()) {
    throw std::invalid_argument("ProjectiveMeasurement: basis must be a non-empty square matrix");
  }
  if (unitarity_error(basis_) > tol::kOrthonormal) {
    throw std::invalid_argument("ProjectiveMeasurement: basis vectors are not orthonormal");
  }
}

ProjectiveMeasurement ProjectiveMeasurement::computational(int dim) {
  return ProjectiveMeasurement(CMatrix::Identity(dim, dim));
}

std::vector<CMatrix> ProjectiveMeasurement::projectors() const {
  std::vector<CMatrix> out;
  for (Eigen::Index l = 0; l < basis_.cols(); ++l) out.push_back(basis_.col(l) * basis_.col(l).adjoint());
  return out;
}

DensityMatrix measure_channel(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  if (m.dim() != rho.dim_a()) {
    throw std::invalid_argument("measure_channel: measurement dimension " + std::to_string(m.dim()) +
                                " != dA = " + std::to_string(rho.dim_a()));
  }
  const int n = rho.dim_a() * rho.dim_b();
  const CMatrix id_b = CMatrix::Identity(rho.dim_b(), rho.dim_b());
  CMatrix out = CMatrix::Zero(n, n);
  for (const CMatrix& p : m.projectors()) {
    const CMatrix k = kron(p, id_b);
    out += k * rho.matrix() * k;
  }
  return DensityMatrix(rho.dim_a(), rho.dim_b(), 0.5 * (out + out.adjoint()));
}

namespace {

RMatrix diagonal_components(const CMatrix& basis_vectors, const HermitianBasis& basis_a) {
  const auto n = static_cast<Eigen::Index>(basis_a.size());
  const Eigen::Index d = basis_vectors.cols();
  RMatrix x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const CMatrix& e = basis_a[static_cast<std::size_t>(i)];
    for (Eigen::Index l = 0; l < d; ++l) {
      const CVector u = basis_vectors.col(l);
      x(i, l) = (u.adjoint() * e * u)(0, 0).real();
    }
  }
  return x;
}

// M_{h,p}^p from singular values, padded with zeros to length n.
double cmn_power(std::vector<double> sigma, std::size_t n, const CmnParams& params) {
  sigma.resize(std::max(n, sigma.size()), 0.0);
  const double p = params.p.value();
  if (p != 1.0) {
    for (double& s : sigma) s = std::pow(s, p);
  }
  return elementary_symmetric(params.h, sigma);
}

CMatrix offdiag_hermitian(const RVector& x, int d) {
  CMatrix h = CMatrix::Zero(d, d);
  Eigen::Index idx = 0;
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      const Complex v(x(idx), x(idx + 1));
      idx += 2;
      h(k, l) = v;
      h(l, k) = std::conj(v);
    }
  }
  return h;
}

unsigned resolve_threads(unsigned requested, std::size_t jobs) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, jobs)));
}

// Runs body(i) for i in [0, n) on up to `threads` workers; each index is
// handled exactly once and results are written by index.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

RMatrix measurement_projector(const ProjectiveMeasurement& m, const HermitianBasis& basis_a) {
  if (m.dim() != basis_a.dim()) {
    throw std::invalid_argument("measurement_projector: measurement dimension does not match basis");
  }
  const RMatrix x = diagonal_components(m.basis(), basis_a);
  return x * x.transpose();
}

NelderMeadResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& x0, double step,
                             double tolerance, int max_evaluations) {
  const Eigen::Index n = x0.size();
  NelderMeadResult out{x0, 0.0, 0, false};
  if (n == 0) {
    out.value = f(x0);
    out.evaluations = 1;
    out.converged = true;
    return out;
  }
  std::vector<RVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += step;
  int evals = 0;
  const auto eval = [&](const RVector& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(pts.size());
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (vals[worst] - vals[best] <= tolerance) {
      out.converged = true;
      break;
    }
    if (evals >= max_evaluations) break;

    RVector centroid = RVector::Zero(n);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += pts[order[i]];
    centroid /= static_cast<double>(n);

    const RVector reflected = centroid + (centroid - pts[worst]);
    const double fr = eval(reflected);
    if (fr < vals[best]) {
      const RVector expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RVector contracted =
        outside ? RVector(centroid + 0.5 * (reflected - centroid)) : RVector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto best_it = std::min_element(vals.begin(), vals.end());
  out.x = pts[static_cast<std::size_t>(best_it - vals.begin())];
  out.value = *best_it;
  out.evaluations = evals;
  return out;
}

DiscordResult cmn_discord(const DensityMatrix& rho, const CmnParams& params, const OptimizerConfig& opt) {
  if (params.p.is_infinite()) {
    throw std::invalid_argument("cmn_discord: p = infinity has no discord definition (M^p is undefined)");
  }
  const int da = rho.dim_a();
  const std::size_t n = static_cast<std::size_t>(rho.min_dim()) * static_cast<std::size_t>(rho.min_dim());
  if (params.h < 1 || static_cast<std::size_t>(params.h) > n) {
    throw std::invalid_argument("cmn_discord: h = " + std::to_string(params.h) + " outside [1, " +
                                std::to_string(n) + "]");
  }
  if (opt.restarts < 1) throw std::invalid_argument("cmn_discord: need at least one restart");

  const HermitianBasis basis_a = generalized_gell_mann(da);
  const CorrelationMatrix corr = correlation_matrix(rho, basis_a, generalized_gell_mann(rho.dim_b()));
  const RMatrix& c = corr.entries;
  const bool frobenius = params.h == 1 && params.p.value() == 2.0;

  const auto post_value = [&](const CMatrix& u) {
    const RMatrix x = diagonal_components(u, basis_a);
    // A C = X (X^T C) and X has orthonormal columns, so sigma(AC) = sigma(X^T C).
    const RMatrix reduced = x.transpose() * c;
    if (frobenius) return reduced.squaredNorm();
    const RVector s = singular_values(reduced);
    return cmn_power({s.data(), s.data() + s.size()}, n, params);
  };

  const RVector pre_sigma = correlation_singulars(corr);
  const double pre = frobenius ? c.squaredNorm()
                               : cmn_power({pre_sigma.data(), pre_sigma.data() + pre_sigma.size()}, n, params);

  // Restart 0 starts from the eigenbasis of rho_A; the rest from Haar-random
  // bases drawn from per-restart seeds, so results do not depend on threads.
  Eigen::SelfAdjointEigenSolver<CMatrix> reduced_eigen(reduced_state(rho, Subsystem::A));
  const CMatrix eigenbasis = reduced_eigen.eigenvectors();
  const int n_params = da * (da - 1);

  struct Attempt {
    double value = -std::numeric_limits<double>::infinity();
    CMatrix u;
    bool converged = false;
  };
  std::vector<Attempt> attempts(static_cast<std::size_t>(opt.restarts));
  parallel_for(attempts.size(), resolve_threads(opt.threads, attempts.size()), [&](std::size_t r) {
    const CMatrix start = r == 0 ? eigenbasis : random_unitary(da, opt.seed + 0x9E3779B97F4A7C15ULL * (r + 1));
    CMatrix origin = start;
    const auto frame = [&](const RVector& x) -> CMatrix {
      return n_params == 0 ? origin : CMatrix(origin * unitary_exp(offdiag_hermitian(x, da)));
    };
    Attempt best;
    double step = opt.initial_step;
    // Re-seed the simplex around the incumbent until two passes agree.
    for (int pass = 0; pass < 3; ++pass) {
      const NelderMeadResult nm = nelder_mead([&](const RVector& x) { return -post_value(frame(x)); },
                                              RVector::Zero(n_params), step, opt.tolerance, opt.max_evaluations);
      const double value = -nm.value;
      const CMatrix u = frame(nm.x);
      const bool improved = value > best.value + opt.tolerance;
      if (value > best.value) best = {value, u, nm.converged};
      origin = u;
      step *= 0.25;
      if (!improved && pass > 0) break;
    }
    attempts[r] = std::move(best);
  });

  std::size_t winner = 0;
  for (std::size_t r = 1; r < attempts.size(); ++r) {
    if (attempts[r].value > attempts[winner].value) winner = r;
  }
  DiscordResult out;
  out.pre_value = pre;
  out.post_value = attempts[winner].value;
  out.raw_value = pre - out.post_value;
  out.best_measurement = ProjectiveMeasurement(attempts[winner].u);
  out.restarts_used = opt.restarts;
  out.converged = attempts[winner].converged;
  if (out.raw_value < -1e-8) {
    throw InvariantViolation("cmn_discord: negative discord " + std::to_string(out.raw_value));
  }
  out.value = std::max(0.0, out.raw_value);
  return out;
}

double geometric_discord_2q_oracle(const DensityMatrix& rho) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2) {
    throw std::invalid_argument("geometric_discord_2q_oracle: requires a two-qubit state");
  }
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix sx = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
  const CMatrix sy = (CMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  const CMatrix sz = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
  const CMatrix paulis[3] = {sx, sy, sz};
  const auto expect = [&](const CMatrix& op) { return (rho.matrix() * op).trace().real(); };
  Eigen::Vector3d x;
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    x(i) = expect(kron(paulis[i], id));
    for (int j = 0; j < 3; ++j) t(i, j) = expect(kron(paulis[i], paulis[j]));
  }
  const Eigen::Matrix3d k = x * x.transpose() + t * t.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(k, Eigen::EigenvaluesOnly);
  return 0.25 * (x.squaredNorm() + t.squaredNorm() - es.eigenvalues().maxCoeff());
}

std::vector<DiscordRow> discord_sweep_virzi(const std::vector<double>& q_grid, const std::vector<double>& r_grid,
                                            const std::vector<CmnParams>& params_list, const OptimizerConfig& opt) {
  for (const CmnParams& p : params_list) {
    if (p.p.is_infinite()) throw std::invalid_argument("discord_sweep_virzi: p = infinity is not supported");
  }
  std::vector<DiscordRow> rows;
  for (double q : q_grid)
    for (double r : r_grid)
      for (const CmnParams& p : params_list) rows.push_back({q, r, p, 0.0});

  OptimizerConfig inner = opt;
  inner.threads = 1;
  parallel_for(rows.size(), resolve_threads(opt.threads, rows.size()), [&](std::size_t i) {
    DiscordRow& row = rows[i];
    row.discord = cmn_discord(virzi_family(row.q, row.r), row.params, inner).value;
  });
  return rows;
}

}  // namespace cmn

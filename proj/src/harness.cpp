#include "cmn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cmn/correlation.hpp"
#include "cmn/detect.hpp"
#include "cmn/discord.hpp"
#include "cmn/io.hpp"

namespace cmn {

namespace {

std::vector<SchattenP> parse_p_list(const std::vector<std::string>& texts) {
  std::vector<SchattenP> out;
  for (const std::string& t : texts) out.push_back(SchattenP::parse(t));
  return out;
}

std::vector<CmnParams> params_product(const std::vector<int>& hs, const std::vector<SchattenP>& ps) {
  std::vector<CmnParams> out;
  for (int h : hs)
    for (const SchattenP& p : ps) out.push_back({h, p});
  return out;
}

int grid_or(const RunConfig& config, int fallback) {
  const int n = config.grid == 0 ? fallback : config.grid;
  if (n < 2) throw std::invalid_argument("grid resolution must be at least 2, got " + std::to_string(n));
  return n;
}

// Exact cos/sin at the ends of [0, pi/2].
std::pair<double, double> grid_cos_sin(int i, int n) {
  if (i == 0) return {1.0, 0.0};
  if (i == n - 1) return {0.0, 1.0};
  const double t = (std::numbers::pi / 2) * i / (n - 1);
  return {std::cos(t), std::sin(t)};
}

double entropy_from_schmidt(const PureSchmidt& s) {
  double e = 0.0;
  for (double x : s.coefficients()) {
    const double w = x * x;
    if (w > 0.0) e -= w * std::log2(w);
  }
  return std::max(0.0, e);
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

bool report_checks(const std::vector<Check>& checks, std::ostream& out) {
  bool all = true;
  for (const Check& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.pass;
  }
  return all;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

PureSchmidt spherical_schmidt(int theta_index, int phi_index, int n) {
  const auto [ct, st] = grid_cos_sin(theta_index, n);
  const auto [cf, sf] = grid_cos_sin(phi_index, n);
  return PureSchmidt::from_unsorted({st * cf, st * sf, ct});
}

DensityMatrix named_state(const std::string& family, double param) {
  if (family == "bell") return werner(2, 1.0);
  if (family == "product") {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    return product_state(a, a);
  }
  if (family == "maximally-mixed") return maximally_mixed(2, 2);
  if (family == "werner2") return werner(2, param);
  if (family == "werner3") return werner(3, param);
  if (family == "gap") return ccnr_gap_state(param);
  if (family == "virzi") return virzi_family(param, 1.0);
  throw std::invalid_argument("unknown state family: " + family);
}

void cmd_analyze(const RunConfig& config, std::ostream& out) {
  if (config.input.empty()) throw std::invalid_argument("analyze: --input is required");
  const DensityMatrix rho = read_state_file(config.input);
  const Verdict v = (config.h_list.empty() && config.p_list.empty())
                        ? detect(rho)
                        : detect(rho, config.h_list.empty() ? std::vector<int>{2} : config.h_list,
                                 config.p_list.empty() ? std::vector<SchattenP>{SchattenP::finite(1.0)}
                                                       : parse_p_list(config.p_list));
  nlohmann::json doc = verdict_to_json(v);
  const RVector sigma = correlation_singulars(correlation_matrix(rho));
  doc["dim_a"] = rho.dim_a();
  doc["dim_b"] = rho.dim_b();
  doc["singular_values"] = std::vector<double>(sigma.data(), sigma.data() + sigma.size());
  doc["fnf"] = is_fnf(rho);
  out << doc.dump(2) << '\n';
}

void cmd_sweep_pure(const RunConfig& config, std::ostream& out) {
  const int n = grid_or(config, 25);
  const std::vector<double> angles = uniform_grid(0.0, std::numbers::pi / 2, n);
  const SchattenP ps[3] = {SchattenP::finite(1.0), SchattenP::finite(2.0), SchattenP::infinity()};
  out << "theta,phi,entropy,M4_p1,M4_p2,M4_pinf,M9_p1,M9_p2,M9_pinf\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const PureSchmidt s = spherical_schmidt(i, j, n);
      const std::vector<double> sigma = pure_operator_schmidt(s, 3);
      out << format_number(angles[static_cast<std::size_t>(i)]) << ','
          << format_number(angles[static_cast<std::size_t>(j)]) << ',' << format_number(entropy_from_schmidt(s));
      for (int h : {4, 9})
        for (const SchattenP& p : ps) out << ',' << format_number(cmn_from_singulars(sigma, {h, p}));
      out << '\n';
    }
  }
}

void cmd_sweep_virzi(const RunConfig& config, std::ostream& out) {
  const int n = grid_or(config, 21);
  const std::vector<double> grid = uniform_grid(0.0, 1.0, n);
  const std::vector<int> hs = config.h_list.empty() ? std::vector<int>{1} : config.h_list;
  const std::vector<SchattenP> ps =
      config.p_list.empty() ? std::vector<SchattenP>{SchattenP::finite(2.0)} : parse_p_list(config.p_list);
  OptimizerConfig opt;
  opt.restarts = config.restarts;
  opt.seed = config.seed;
  opt.threads = config.threads;
  if (config.tol) opt.tolerance = *config.tol;
  const std::vector<DiscordRow> rows = discord_sweep_virzi(grid, grid, params_product(hs, ps), opt);
  out << "q,r,h,p,discord\n";
  for (const DiscordRow& row : rows) {
    out << format_number(row.q) << ',' << format_number(row.r) << ',' << row.params.h << ','
        << row.params.p.to_string() << ',' << format_number(row.discord) << '\n';
  }
}

bool cmd_reproduce_gap(const RunConfig& config, std::ostream& out) {
  const double tol = config.tol.value_or(5e-4);
  const double q = 0.295;
  const DensityMatrix rho = ccnr_gap_state(q);
  const RVector sigma = correlation_singulars(correlation_matrix(rho));
  const double m11 = cmn_from_singulars(sigma, {1, SchattenP::finite(1.0)});
  const double m21 = cmn_from_singulars(sigma, {2, SchattenP::finite(1.0)});
  const double bound = bound_p1(3, 2, 2);
  const double exact = (2.0 + 3.0 * std::sqrt(2.0)) / 18.0;
  const double ppt = ppt_min_eigenvalue(rho);
  const Verdict v = detect(rho, {2}, {SchattenP::finite(1.0)});
  const auto triggered = [&](const std::string& name) {
    return std::find(v.triggered_by.begin(), v.triggered_by.end(), name) != v.triggered_by.end();
  };

  out << "q = " << q << '\n'
      << "M_{1,1} = " << format_number(m11) << '\n'
      << "M_{2,1} = " << format_number(m21) << '\n'
      << "bound   = " << format_number(bound) << "  ((2 + 3 sqrt 2) / 18 = " << format_number(exact) << ")\n"
      << "PPT min eigenvalue = " << format_number(ppt) << '\n'
      << "triggered_by =";
  for (const std::string& t : v.triggered_by) out << ' ' << t;
  out << '\n';

  const CmnParams p21{2, SchattenP::finite(1.0)};
  return report_checks(
      {{"M_{1,1}", std::abs(m11 - 0.9981) <= tol, "expected 0.9981 +/- " + format_number(tol)},
       {"M_{2,1}", std::abs(m21 - 0.3509) <= tol, "expected 0.3509 +/- " + format_number(tol)},
       {"bound", std::abs(bound - exact) <= 1e-15, "expected (2 + 3 sqrt 2) / 18"},
       {"PPT", ppt_entangled(rho), "partial transpose has a negative eigenvalue"},
       {"detect", triggered(p21.label()) && !triggered("CCNR"), "CMN(2,1) fires, CCNR does not"}},
      out);
}

bool cmd_verify_theorems(const RunConfig& config, std::ostream& out) {
  const double tol = config.tol.value_or(1e-8);
  struct Case {
    std::string name;
    QuantumDesign a;
    QuantumDesign b;
    bool trailing_h;  // spectrum {alpha, beta' x (h-1)} with h = v
  };
  const std::vector<Case> cases = {
      {"sic2-sic2", sic_povm(2), sic_povm(2), false},
      {"simplex3-sic2", simplex_design(3), sic_povm(2), false},
      {"sic3-sic3", sic_povm(3), sic_povm(3), false},
      {"onb2-onb2", orthonormal_basis_design(2), orthonormal_basis_design(2), true},
      {"onb3-onb3", orthonormal_basis_design(3), orthonormal_basis_design(3), true},
      {"onb3-simplex2", orthonormal_basis_design(3), simplex_design(2), true},
  };
  out << "case,d_a,d_b,h,p,spectrum_residual,cmn_residual,status\n";
  bool all = true;
  for (const Case& c : cases) {
    const DensityMatrix rho = design_state(c.a, c.b);
    const int da = rho.dim_a();
    const int db = rho.dim_b();
    const RVector sigma = correlation_singulars(correlation_matrix(rho));
    const int v = c.a.count();
    std::vector<double> expected(static_cast<std::size_t>(sigma.size()), 0.0);
    expected[0] = design_alpha(da, db);
    const int trailing = c.trailing_h ? v - 1 : static_cast<int>(sigma.size()) - 1;
    const double beta = c.trailing_h ? design_beta_h(da, db, v) : design_beta(da, db);
    for (int k = 1; k <= trailing; ++k) expected[static_cast<std::size_t>(k)] = beta;
    double spectrum = 0.0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
      spectrum = std::max(spectrum, std::abs(sigma(k) - expected[static_cast<std::size_t>(k)]));
    }
    std::vector<CmnParams> checks;
    if (c.trailing_h) {
      checks.push_back({v, SchattenP::infinity()});
    } else {
      for (int h = 2; h <= sigma.size(); ++h) checks.push_back({h, SchattenP::finite(1.0)});
    }
    for (const CmnParams& p : checks) {
      const double m = cmn_from_singulars(sigma, p);
      const double b = p.p.is_infinite() ? bound_pinf(da, db, p.h) : bound_p1(da, db, p.h);
      const double residual = std::abs(m - b);
      const bool pass = spectrum < tol && residual < tol;
      all = all && pass;
      out << c.name << ',' << da << ',' << db << ',' << p.h << ',' << p.p.to_string() << ','
          << format_number(spectrum) << ',' << format_number(residual) << ',' << (pass ? "PASS" : "FAIL") << '\n';
    }
  }
  return all;
}

void cmd_bounds_table(const RunConfig& config, std::ostream& out) {
  if (config.d_max < 2) throw std::invalid_argument("bounds-table: d_max must be at least 2");
  out << "d_a,d_b,h,p,bound\n";
  for (int da = 2; da <= config.d_max; ++da) {
    for (int db = 2; db <= config.d_max; ++db) {
      const int d = std::min(da, db);
      for (int h = 1; h <= d * d; ++h) {
        for (const SchattenP& p : {SchattenP::finite(1.0), SchattenP::infinity()}) {
          const std::optional<double> b = try_bound(da, db, {h, p});
          out << da << ',' << db << ',' << h << ',' << p.to_string() << ',' << (b ? format_number(*b) : "n/a")
              << '\n';
        }
      }
    }
  }
}

void cmd_search_max(const RunConfig& config, std::ostream& out) {
  const CmnParams params{config.h_list.empty() ? 2 : config.h_list.front(),
                         config.p_list.empty() ? SchattenP::finite(1.0) : SchattenP::parse(config.p_list.front())};
  const SearchResult r = separable_max_search(config.dim_a, config.dim_b, params, config.budget, config.seed);
  const std::optional<double> b = try_bound(config.dim_a, config.dim_b, params);
  out << "d_a,d_b,h,p,best_value,bound,evaluations\n"
      << config.dim_a << ',' << config.dim_b << ',' << params.h << ',' << params.p.to_string() << ','
      << format_number(r.best_value) << ',' << (b ? format_number(*b) : "n/a") << ',' << r.evaluations << '\n';
}

void cmd_make_state(const RunConfig& config, std::ostream& out) {
  if (config.family.empty()) throw std::invalid_argument("make-state: --family is required");
  out << state_to_json(named_state(config.family, config.param)).dump(2) << '\n';
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buffer;
    bool ok = true;
    const std::string& c = config.command;
    if (c == "analyze") {
      cmd_analyze(config, buffer);
    } else if (c == "sweep-pure") {
      cmd_sweep_pure(config, buffer);
    } else if (c == "sweep-virzi") {
      cmd_sweep_virzi(config, buffer);
    } else if (c == "reproduce-gap") {
      ok = cmd_reproduce_gap(config, buffer);
    } else if (c == "verify-theorems") {
      ok = cmd_verify_theorems(config, buffer);
    } else if (c == "bounds-table") {
      cmd_bounds_table(config, buffer);
    } else if (c == "search-max") {
      cmd_search_max(config, buffer);
    } else if (c == "make-state") {
      cmd_make_state(config, buffer);
    } else {
      throw std::invalid_argument("unknown command: " + c);
    }
    if (config.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.output);
      if (!file) throw std::invalid_argument("cannot write output file: " + config.output);
      file << buffer.str();
    }
    return ok ? 0 : 2;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cmn

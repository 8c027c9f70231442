#include <doctest.h>

#include <algorithm>
#include <random>

#include "cmn/detect.hpp"
#include "support.hpp"

using namespace cmn;

namespace {

const SchattenP kP1 = SchattenP::finite(1.0);
const SchattenP kP2 = SchattenP::finite(2.0);
const SchattenP kInf = SchattenP::infinity();

bool triggered(const Verdict& v, const std::string& name) {
  return std::find(v.triggered_by.begin(), v.triggered_by.end(), name) != v.triggered_by.end();
}

const CriterionResult& find(const Verdict& v, const std::string& name) {
  for (const CriterionResult& c : v.criteria)
    if (c.name == name) return c;
  throw std::runtime_error("missing criterion " + name);
}

}  // namespace

TEST_SUITE("cmn_detect") {

TEST_CASE("SchattenP") {
  CHECK(SchattenP::parse("inf").is_infinite());
  CHECK(SchattenP::parse("Infinity").is_infinite());
  CHECK(SchattenP::parse("2.5").value() == 2.5);
  CHECK(SchattenP::parse("1").to_string() == "1");
  CHECK(kInf.to_string() == "inf");
  CHECK_THROWS_AS(SchattenP::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(SchattenP::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(SchattenP::finite(0.0), std::invalid_argument);
  CHECK(CmnParams{2, kP1}.label() == "CMN(h=2,p=1)");
  CHECK(CmnParams{4, kInf}.label() == "CMN(h=4,p=inf)");
}

TEST_CASE("elementary symmetric polynomials") {
  CHECK(elementary_symmetric(0, {3.0, 4.0}) == 1.0);
  CHECK(elementary_symmetric(2, {1.0, 2.0, 3.0}) == doctest::Approx(11.0));
  CHECK(elementary_symmetric(4, {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}) == doctest::Approx(1.0 / 432));
  CHECK_THROWS_AS(elementary_symmetric(4, {1.0, 2.0}), std::invalid_argument);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 10;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = u(rng);
    for (int h = 0; h <= n; ++h) {
      const double naive = testing::naive_elementary_symmetric(h, v);
      CHECK(std::abs(elementary_symmetric(h, v) - naive) <= 1e-13 * std::max(1.0, naive));
    }
  }
}

TEST_CASE("CMN from singular values") {
  CHECK(cmn_from_singulars(std::vector<double>{0.5, 0.5, 0.5, 0.5}, {1, kP1}) == doctest::Approx(2.0));
  for (const SchattenP& p : {kP1, kP2, kInf, SchattenP::finite(3.7)}) {
    CHECK(cmn_from_singulars(std::vector<double>{0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}, {4, p}) ==
          doctest::Approx(1.0 / 432));
  }
  CHECK(cmn_from_singulars(std::vector<double>{0.9, 0.5, 0.2}, {2, kInf}) == doctest::Approx(0.45));
  CHECK(cmn_from_singulars(std::vector<double>{0.9, 0.5, 0.2}, {2, kP2}) ==
        doctest::Approx(std::sqrt(0.81 * 0.25 + 0.81 * 0.04 + 0.25 * 0.04)));
  CHECK_THROWS_AS(cmn_from_singulars(std::vector<double>{0.5, -0.1}, {1, kP1}), std::invalid_argument);
  CHECK_THROWS_AS(cmn_from_singulars(std::vector<double>{0.5, 0.1}, {3, kP1}), std::invalid_argument);
  CHECK_THROWS_AS(cmn_from_singulars(std::vector<double>{0.5, 0.1}, {0, kP1}), std::invalid_argument);
}

TEST_CASE("CMN is monotone in each singular value") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> s(6);
    for (double& x : s) x = u(rng);
    std::vector<double> t = s;
    t[static_cast<std::size_t>(trial % 6)] += u(rng);
    for (const SchattenP& p : {kP1, kP2, kInf}) {
      for (int h = 1; h <= 6; ++h) CHECK(cmn_from_singulars(t, {h, p}) >= cmn_from_singulars(s, {h, p}) - 1e-15);
    }
  }
}

TEST_CASE("compound matrices") {
  RMatrix m(3, 4);
  m << 1, 2, 0, -1, 3, 1, 4, 2, -2, 0, 1, 5;
  CHECK((compound_matrix(m, 1) - m).cwiseAbs().maxCoeff() == 0.0);
  const RMatrix sq = m.leftCols(3);
  CHECK(compound_matrix(sq, 3)(0, 0) == doctest::Approx(sq.determinant()));
  RMatrix d = RMatrix::Zero(3, 3);
  d.diagonal() << 2, 3, 5;
  const RMatrix c2 = compound_matrix(d, 2);
  RMatrix expect = RMatrix::Zero(3, 3);
  expect.diagonal() << 6, 10, 15;
  CHECK((c2 - expect).cwiseAbs().maxCoeff() < 1e-14);
  // Lexicographic order: rows {0,1},{0,2},{1,2}; cols {0,1},...,{2,3}.
  const RMatrix c = compound_matrix(m, 2);
  CHECK(c.rows() == 3);
  CHECK(c.cols() == 6);
  CHECK(c(1, 5) == doctest::Approx(testing::laplace_det((RMatrix(2, 2) << 0, -1, 1, 5).finished())));
  CHECK(c(2, 0) == doctest::Approx(testing::laplace_det((RMatrix(2, 2) << 3, 1, -2, 0).finished())));
  CHECK_THROWS_AS(compound_matrix(m, 4), std::invalid_argument);
}

TEST_CASE("CMN matches the compound-matrix Schatten norm") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int da = 2 + static_cast<int>(seed % 2), db = 2 + static_cast<int>((seed / 2) % 2);
    const DensityMatrix r = random_density(da, db, seed);
    const RMatrix c = correlation_matrix(r).entries;
    const int n = std::min(da, db) * std::min(da, db);
    for (int h = 1; h <= std::min(n, 4); ++h) {
      const RMatrix comp = compound_matrix(c, h);
      for (const SchattenP& p : {kP1, kP2, kInf}) {
        CHECK(std::abs(cmn::cmn(r, {h, p}) - schatten_norm(comp, p)) < 1e-8);
      }
    }
  }
}

TEST_CASE("CMN of named states") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(cmn::cmn(random_pure(3, 3, seed), {1, kP2}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const double s1 = std::sqrt(0.5);
  const DensityMatrix bell = pure_from_schmidt(PureSchmidt({s1, s1}), 2, 2);
  CHECK(cmn::cmn(bell, {4, kP1}) == doctest::Approx(1.0 / 16));
  const DensityMatrix w = werner(2, 1.0 / 3);
  CHECK(cmn::cmn(w, {1, kP1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cmn::cmn(w, {5, kP1}), std::invalid_argument);
  // h = d^2 does not depend on p
  const DensityMatrix r = random_density(3, 3, 4);
  CHECK(std::abs(cmn::cmn(r, {9, kP1}) - cmn::cmn(r, {9, kInf})) < 1e-10);
  CHECK(std::abs(cmn::cmn(r, {9, kP2}) - cmn::cmn(r, {9, kInf})) < 1e-10);
  // h = 1 is the Schatten norm of C itself
  for (const SchattenP& p : {kP1, kP2, kInf}) {
    CHECK(cmn::cmn(r, {1, p}) == doctest::Approx(schatten_norm(correlation_matrix(r).entries, p)));
  }
}

TEST_CASE("bounds") {
  CHECK(bound_p1(3, 2, 2) == doctest::Approx((2 + 3 * std::sqrt(2.0)) / 18).epsilon(1e-14));
  CHECK(bound_p1(2, 3, 2) == bound_p1(3, 2, 2));
  CHECK(bound_p1(2, 2, 4) == doctest::Approx(1.0 / 432));
  CHECK(bound_p1(2, 2, 2) == doctest::Approx(1.0 / 3));
  CHECK(bound_pinf(2, 2, 2) == doctest::Approx(0.25));
  CHECK(bound_pinf(2, 2, 4) == doctest::Approx(1.0 / 432));
  CHECK(bound_pinf(3, 3, 3) == doctest::Approx(1.0 / 27));
  CHECK_THROWS_AS(bound_p1(2, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(bound_p1(9, 2, 2), std::invalid_argument);  // D > d^3
  CHECK_THROWS_AS(bound_pinf(3, 3, 2), std::invalid_argument);  // h < sqrt(Dd)
  CHECK_THROWS_AS(bound_pinf(2, 2, 5), std::invalid_argument);
  CHECK_FALSE(try_bound(2, 2, {2, kP2}).has_value());
  CHECK(try_bound(2, 2, {2, kP1}).has_value());
  CHECK(design_beta(2, 2) == doctest::Approx(1.0 / 6));
}

TEST_CASE("criteria on named states") {
  SUBCASE("CCNR") {
    const CriterionResult bell = ccnr(werner(2, 1.0));
    CHECK(bell.value == doctest::Approx(2.0));
    CHECK(bell.violated);
    const CriterionResult gap = ccnr(ccnr_gap_state(0.295));
    CHECK(gap.value == doctest::Approx(0.9981).epsilon(5e-4));
    CHECK_FALSE(gap.violated);
    CHECK_FALSE(ccnr(random_separable(3, 3, 4, 1)).violated);
  }
  SUBCASE("CM") {
    const CriterionResult w = cm_criterion(werner(2, 1.0));
    CHECK(w.applicable);
    CHECK(w.bound == doctest::Approx(1.0));
    CHECK(w.violated);
    const CriterionResult mm = cm_criterion(maximally_mixed(2, 2));
    CHECK(mm.value == doctest::Approx(0.5));
    CHECK_FALSE(mm.violated);
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    CHECK_FALSE(cm_criterion(product_state(z, z)).applicable);
  }
  SUBCASE("dV") {
    for (double c : {0.2, 0.5, 0.9}) {
      const CriterionResult r = dv_criterion(werner(2, c));
      CHECK(r.value == doctest::Approx(1.5 * c));
      CHECK(r.bound == doctest::Approx(0.5));
      CHECK(r.violated == (c > 1.0 / 3));
    }
    const CriterionResult sic = dv_criterion(design_state(sic_povm(2), sic_povm(2)));
    CHECK(sic.value == doctest::Approx(0.5));
    CHECK_FALSE(sic.violated);
    CHECK_FALSE(dv_criterion(random_separable(2, 2, 1, 3)).applicable);
  }
}

TEST_CASE("detect") {
  SUBCASE("gap state is caught by CMN(2,1) only") {
    const Verdict v = detect(ccnr_gap_state(0.295), {2}, {kP1});
    CHECK(v.entangled);
    CHECK(triggered(v, "CMN(h=2,p=1)"));
    CHECK_FALSE(triggered(v, "CCNR"));
    CHECK_FALSE(find(v, "CMN(h=2,p=1)").theorem_backed);
    CHECK(find(v, "PPT").violated);
    CHECK_FALSE(triggered(v, "PPT"));
  }
  SUBCASE("Bell via CCNR") {
    const Verdict v = detect(werner(2, 1.0));
    CHECK(v.entangled);
    CHECK(triggered(v, "CCNR"));
  }
  SUBCASE("maximally mixed is inconclusive") {
    const Verdict v = detect(maximally_mixed(3, 3));
    CHECK_FALSE(v.entangled);
    CHECK(v.triggered_by.empty());
  }
  SUBCASE("separable samples are inconclusive") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      CHECK_FALSE(detect(random_separable(3, 2, 1 + static_cast<int>(seed % 6), seed)).entangled);
      CHECK_FALSE(detect(random_fnf_separable(3, 3, seed)).entangled);
    }
  }
  SUBCASE("saturating states do not trigger") {
    CHECK_FALSE(detect(design_state(sic_povm(2), sic_povm(2))).entangled);
    CHECK_FALSE(detect(design_state(simplex_design(3), sic_povm(2))).entangled);
    CHECK_FALSE(detect(werner(2, 1.0 / 3)).entangled);
  }
  SUBCASE("pairs without a bound are skipped") {
    const Verdict v = detect(werner(2, 0.2), {2}, {kP2});
    for (const CriterionResult& c : v.criteria) CHECK(c.name.find("p=2") == std::string::npos);
  }
}

TEST_CASE("Schmidt rank of pure states") {
  CHECK(schmidt_rank_pure(pure_from_schmidt(PureSchmidt({1.0}), 3, 3)) == 1);
  CHECK(schmidt_rank_pure(werner(2, 1.0)) == 2);
  for (double t : {0.2, 0.7, 1.3}) {
    const DensityMatrix r =
        pure_from_schmidt(PureSchmidt::from_unsorted({std::sin(t), 0.0, std::cos(t)}), 3, 3);
    CHECK(schmidt_rank_pure(r) == 2);
  }
  CHECK(schmidt_rank_pure(random_pure(3, 3, 2)) == 3);
  CHECK_THROWS_AS(schmidt_rank_pure(maximally_mixed(2, 2)), std::invalid_argument);
}

TEST_CASE("separable search stays below the bounds") {
  const SearchResult zero = separable_max_search(2, 2, {2, kP1}, 0, 3);
  CHECK(zero.evaluations == 0);
  CHECK(cmn::cmn(zero.best_state.to_density(), {2, kP1}) == doctest::Approx(zero.best_value));
  const SearchResult r22 = separable_max_search(2, 2, {2, kP1}, 3000, 1);
  CHECK(r22.best_value <= 1.0 / 3 + 1e-6);
  CHECK(r22.best_value >= zero.best_value - 1e-12);
  const SearchResult r32 = separable_max_search(3, 2, {2, kP1}, 3000, 1);
  CHECK(r32.best_value <= bound_p1(3, 2, 2) + 1e-6);
  const SearchResult again = separable_max_search(3, 2, {2, kP1}, 3000, 1);
  CHECK(again.best_value == r32.best_value);
}

}

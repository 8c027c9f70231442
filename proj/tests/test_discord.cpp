#include <doctest.h>

#include <random>

#include "cmn/discord.hpp"
#include "support.hpp"

using namespace cmn;

namespace {

const CmnParams kD12{1, SchattenP::finite(2.0)};

OptimizerConfig quick(int restarts = 8) {
  OptimizerConfig o;
  o.restarts = restarts;
  return o;
}

DensityMatrix classical_quantum(int db, std::uint64_t seed) {
  // sum_l p_l |u_l><u_l| (x) sigma_l with {u_l} a random basis of a qubit
  const CMatrix u = random_unitary(2, seed);
  const DensityMatrix s0 = random_density(db, 1, seed + 1);
  const DensityMatrix s1 = random_density(db, 1, seed + 2);
  const CMatrix p0 = u.col(0) * u.col(0).adjoint();
  const CMatrix p1 = u.col(1) * u.col(1).adjoint();
  return DensityMatrix(2, db, 0.3 * kron(p0, s0.matrix()) + 0.7 * kron(p1, s1.matrix()));
}

}  // namespace

TEST_SUITE("discord") {

TEST_CASE("projective measurements") {
  CHECK_THROWS_AS(ProjectiveMeasurement(CMatrix::Ones(2, 2)), std::invalid_argument);
  const ProjectiveMeasurement m = ProjectiveMeasurement::computational(3);
  CHECK(m.projectors().size() == 3);
  CHECK(max_abs_diff(m.projectors()[2], orthonormal_basis_design(3).projectors[2]) == 0.0);
}

TEST_CASE("measurement channel") {
  SUBCASE("Bell state in the computational basis") {
    const DensityMatrix out = measure_channel(werner(2, 1.0), ProjectiveMeasurement::computational(2));
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;
    CHECK(max_abs_diff(out.matrix(), expect) < 1e-15);
  }
  SUBCASE("classical-quantum states are fixed points") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const DensityMatrix cq = classical_quantum(3, seed);
      const DensityMatrix out = measure_channel(cq, ProjectiveMeasurement(random_unitary(2, seed)));
      CHECK(max_abs_diff(out.matrix(), cq.matrix()) < 1e-12);
    }
  }
  SUBCASE("idempotent") {
    const ProjectiveMeasurement m(random_unitary(3, 8));
    const DensityMatrix once = measure_channel(random_density(3, 2, 1), m);
    CHECK(max_abs_diff(measure_channel(once, m).matrix(), once.matrix()) < 1e-14);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(measure_channel(werner(2, 0.5), ProjectiveMeasurement::computational(3)), std::invalid_argument);
  }
}

TEST_CASE("measurement projector") {
  const RMatrix a = measurement_projector(ProjectiveMeasurement::computational(2), generalized_gell_mann(2));
  RMatrix expect = RMatrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 1.0;
  CHECK((a - expect).cwiseAbs().maxCoeff() < 1e-15);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int d = 2 + static_cast<int>(seed % 2);
    const HermitianBasis b = generalized_gell_mann(d);
    const ProjectiveMeasurement m(random_unitary(d, seed));
    const RMatrix p = measurement_projector(m, b);
    CHECK(p.trace() == doctest::Approx(d));
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    // C of the measured state is A C
    const DensityMatrix r = random_density(d, 2, seed);
    const RMatrix c = correlation_matrix(r).entries;
    CHECK((correlation_matrix(measure_channel(r, m)).entries - p * c).cwiseAbs().maxCoeff() < 1e-12);
    // measuring in the rotated basis conjugates A
    const CMatrix v = random_unitary(d, seed + 50);
    const RMatrix rv = measurement_projector(ProjectiveMeasurement(v * m.basis()), b);
    const RVector e1 = hermitian_eigenvalues(p.cast<Complex>());
    const RVector e2 = hermitian_eigenvalues(rv.cast<Complex>());
    CHECK((e1 - e2).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("singular values shrink under measurement") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int da = 2 + static_cast<int>(seed % 2), db = 2 + static_cast<int>((seed / 2) % 2);
    const DensityMatrix r = random_density(da, db, seed);
    const RMatrix c = correlation_matrix(r).entries;
    const RMatrix a = measurement_projector(ProjectiveMeasurement(random_unitary(da, seed + 7)),
                                            generalized_gell_mann(da));
    const RVector before = singular_values(c);
    const RVector after = singular_values(a * c);
    for (Eigen::Index k = 0; k < before.size(); ++k) CHECK(after(k) <= before(k) + 1e-10);
  }
}

TEST_CASE("Nelder-Mead") {
  const auto rosen = [](const RVector& x) {
    return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
  };
  const NelderMeadResult r = nelder_mead(rosen, RVector::Zero(2), 0.5, 1e-14, 5000);
  CHECK(r.converged);
  CHECK(std::abs(r.x(0) - 1.0) < 1e-4);
  CHECK(std::abs(r.x(1) - 1.0) < 1e-4);
  const NelderMeadResult capped = nelder_mead(rosen, RVector::Zero(2), 0.5, 1e-14, 20);
  CHECK_FALSE(capped.converged);
}

TEST_CASE("zero-discord states") {
  for (const CmnParams& p : {kD12, CmnParams{2, SchattenP::finite(1.0)}, CmnParams{2, SchattenP::finite(2.0)},
                             CmnParams{1, SchattenP::finite(1.0)}}) {
    CHECK(cmn_discord(random_separable(2, 3, 1, 4), p, quick()).value <= 1e-6);
    CMatrix cc = CMatrix::Zero(4, 4);
    cc(0, 0) = cc(3, 3) = 0.5;
    CHECK(cmn_discord(DensityMatrix(2, 2, cc), p, quick()).value <= 1e-6);
    CHECK(cmn_discord(classical_quantum(2, 3), p, quick()).value <= 1e-6);
  }
  const DensityMatrix prod = product_state(random_density(3, 1, 1).matrix(), random_density(2, 1, 2).matrix());
  CHECK(cmn_discord(prod, kD12, quick()).value <= 1e-6);
}

TEST_CASE("two-qubit closed form") {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  CHECK(geometric_discord_2q_oracle(product_state(z, z)) == doctest::Approx(0.0));
  CHECK(geometric_discord_2q_oracle(werner(2, 1.0)) == doctest::Approx(0.5));
  CHECK(geometric_discord_2q_oracle(werner(2, 0.4)) == doctest::Approx(0.08));
  CHECK_THROWS_AS(geometric_discord_2q_oracle(maximally_mixed(3, 2)), std::invalid_argument);
}

TEST_CASE("D_{1,2} equals the closed form with constant 1") {
  for (double c : {0.1, 0.5, 1.0}) CHECK(std::abs(cmn_discord(werner(2, c), kD12, quick()).value - c * c / 2) < 1e-5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix r = random_density(2, 2, seed);
    const double oracle = geometric_discord_2q_oracle(r);
    const double d = cmn_discord(r, kD12, quick()).value;
    CHECK(std::abs(d - oracle) < 1e-5);
  }
}

TEST_CASE("positive discord on Werner states") {
  for (const CmnParams& p : {kD12, CmnParams{2, SchattenP::finite(1.0)}, CmnParams{2, SchattenP::finite(2.0)}}) {
    CHECK(cmn_discord(werner(2, 0.3), p, quick()).value >= 1e-4);
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(cmn_discord(werner(2, 0.5), {2, SchattenP::infinity()}), std::invalid_argument);
  CHECK_THROWS_AS(cmn_discord(werner(2, 0.5), {5, SchattenP::finite(1.0)}), std::invalid_argument);
  OptimizerConfig none;
  none.restarts = 0;
  CHECK_THROWS_AS(cmn_discord(werner(2, 0.5), kD12, none), std::invalid_argument);
}

TEST_CASE("result diagnostics and determinism") {
  const DensityMatrix r = random_density(3, 2, 12);
  OptimizerConfig one = quick(6);
  OptimizerConfig many = one;
  many.threads = 3;
  const DiscordResult a = cmn_discord(r, kD12, one);
  const DiscordResult b = cmn_discord(r, kD12, many);
  CHECK(a.value == b.value);
  CHECK(a.restarts_used == 6);
  CHECK(a.raw_value == doctest::Approx(a.pre_value - a.post_value));
  CHECK(a.best_measurement.dim() == 3);
  CHECK(unitarity_error(a.best_measurement.basis()) < 1e-10);
  // the reported measurement attains the reported post value
  const RMatrix c = correlation_matrix(measure_channel(r, a.best_measurement)).entries;
  CHECK(c.squaredNorm() == doctest::Approx(a.post_value).epsilon(1e-10));
}

TEST_CASE("sweep over the two-qubit family") {
  const std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<DiscordRow> rows = discord_sweep_virzi(grid, grid, {kD12}, quick(4));
  REQUIRE(rows.size() == 25);
  CHECK(rows[1].q == 0.0);
  CHECK(rows[1].r == 0.25);
  for (std::size_t k = 0; k < 5; ++k) CHECK(rows[k].discord <= 1e-9);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(rows[5 * i + j].discord - rows[5 * (4 - i) + j].discord) < 1e-6);
  const double oracle = geometric_discord_2q_oracle(virzi_family(0.5, 1.0));
  CHECK(std::abs(rows[5 * 2 + 4].discord - oracle) < 1e-5);
  CHECK_THROWS_AS(discord_sweep_virzi(grid, grid, {{1, SchattenP::infinity()}}), std::invalid_argument);
}

}

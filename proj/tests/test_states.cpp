#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fuzzy/states.hpp"
#include "oracles.hpp"

using namespace fuzzy;

namespace {

// Density of the state annihilated by u a + v a^dagger: with a = (xi + d/dxi)/sqrt 2,
// psi solves (u + v) xi psi + (u - v) psi' = 0, so psi ~ exp(-kappa xi^2 / 2),
// kappa = (u + v)/(u - v) = (I0 + I1)/I0.
double vacuum_density_oracle(const FuzzyCoefficients& c, double xi) {
  const double re_kappa = std::real((c.u + c.v) / (c.u - c.v));
  return std::sqrt(re_kappa / std::numbers::pi) * std::exp(-re_kappa * xi * xi);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("grid parsing") {
  const auto g = Grid::parse("-5:5:1001");
  CHECK(g.size() == 1001);
  CHECK(g.points()[500] == 0.0);
  CHECK_THROWS_AS(Grid::parse("-5:5"), Error);
  CHECK_THROWS_AS(Grid::parse("5:-5:10"), Error);
  CHECK_THROWS_AS(Grid::parse("a:5:10"), Error);
  CHECK_THROWS_AS(Grid({0.0, 0.0}), Error);
}

TEST_CASE("oscillator eigenfunctions") {
  const auto g = Grid::linspace(-6.0, 6.0, 241);
  const auto table = hermite_table(12, g);
  for (int n = 0; n <= 12; ++n)
    for (std::size_t j = 0; j < g.size(); ++j)
      CHECK(table(n, j) == doctest::Approx(oracle::oscillator_eigenfunction(n, g.points()[j])).epsilon(1e-11).scale(1e-12));
  const auto origin = Grid({0.0});
  CHECK(hermite_wavefunction(0, origin)(0) == doctest::Approx(0.751126).epsilon(1e-6));
  CHECK(hermite_wavefunction(1, origin)(0) == 0.0);
  const auto fine = Grid::linspace(-8.0, 8.0, 4001);
  const RealVector prod = hermite_wavefunction(0, fine).cwiseProduct(hermite_wavefunction(2, fine));
  CHECK(std::abs(grid_integral(prod, fine)) < 1e-8);
  CHECK_THROWS_AS(hermite_table(kMaxHermiteDegree + 1, origin), Error);
  // high degrees stay finite and normalized
  const RealVector h = hermite_wavefunction(kMaxHermiteDegree, Grid::linspace(-40.0, 40.0, 16001));
  CHECK(grid_integral(h.cwiseAbs2(), Grid::linspace(-40.0, 40.0, 16001)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("vacuum densities against the closed-form gaussian") {
  const auto grid = Grid::linspace(-5.0, 5.0, 1001);
  for (auto spec : {DistributionSpec::delta(), DistributionSpec::lorentzian(0.3), DistributionSpec::uniform(0.3),
                    DistributionSpec::uniform(0.8), DistributionSpec::gaussian(0.3)}) {
    const auto c = fuzzy_coefficients(spec);
    const auto d = position_density(fuzzy_vacuum(c, 64), grid);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
      worst = std::max(worst, std::abs(d(j) - vacuum_density_oracle(c, grid.points()[j])));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("the lorentzian vacuum density is the sharp gaussian") {
  // kappa = 1 + i zeta: a chirp, so the density is unchanged while the amplitude is not
  const auto grid = Grid::linspace(-5.0, 5.0, 1001);
  const auto c = fuzzy_coefficients(DistributionSpec::lorentzian(0.3));
  const auto vac = fuzzy_vacuum(c, 64);
  const auto sharp = basis_state(64, 0);
  CHECK((position_density(vac, grid) - position_density(sharp, grid)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((position_amplitude(vac, grid) - position_amplitude(sharp, grid)).cwiseAbs().maxCoeff() > 1e-2);
  const auto cu = fuzzy_coefficients(DistributionSpec::uniform(0.3));
  CHECK((position_density(fuzzy_vacuum(cu, 64), grid) - position_density(sharp, grid)).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("fuzzy Fock densities keep parity and normalization") {
  const auto grid = Grid::linspace(-5.0, 5.0, 1001);
  const auto c = fuzzy_coefficients(DistributionSpec::lorentzian(0.3));
  const auto ls = fuzzy_ladder(64, c);
  const auto vac = fuzzy_vacuum(c, 64);
  for (int n = 0; n < 3; ++n) {
    const auto d = position_density(fuzzy_fock_state(n, vac, ls), grid);
    CHECK(grid_integral(d, grid) == doctest::Approx(1.0).epsilon(1e-6));
    for (Eigen::Index j = 0; j < d.size(); ++j) CHECK(std::abs(d(j) - d(d.size() - 1 - j)) < 1e-12);
    if (n % 2) CHECK(d(500) < 1e-20);
  }
  CHECK(fidelity(basis_state(64, 0), vac) == doctest::Approx(0.988936).epsilon(1e-6));
}

TEST_CASE("rescaled displacement argument") {
  const auto delta = fuzzy_coefficients(DistributionSpec::delta());
  CHECK(rescale_displacement(Complex(0.3, -1.2), delta).z_rescaled == Complex(0.3, -1.2));

  const auto m = moments(DistributionSpec::uniform(0.5));
  const auto cu = commutation_function(m);
  CHECK(std::abs(rescale_displacement(Complex(0.7, 0.0), cu).z_rescaled - m.I0 * 0.7) < 1e-15);

  // the generator identity fixes the rescaling; for complex u only conj(u) z - v conj(z) satisfies it
  const auto ml = moments(DistributionSpec::lorentzian(0.3));
  const auto cl = commutation_function(ml);
  const auto ls = fuzzy_ladder(16, cl);
  for (Complex z : {Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(-0.4, 0.9)}) {
    const Matrix fuzzy_gen = z * ls.a_fuzzy_dag - std::conj(z) * ls.a_fuzzy;
    auto sharp_gen = [&](Complex zr) { return Matrix(zr * ls.a_sharp_dag - std::conj(zr) * ls.a_sharp); };
    CHECK(max_abs(fuzzy_gen - sharp_gen(rescale_displacement(z, cl).z_rescaled)) < 1e-15);
    CHECK(max_abs(fuzzy_gen - sharp_gen(unconjugated_rescaling(z, cl))) > 1e-3);
  }
  CHECK(std::abs(unconjugated_rescaling(1.0, cl) - ml.I0) < 1e-15);
}

TEST_CASE("displacement operators") {
  CHECK(max_abs(displacement_matrix(16, 0.0) - Matrix::Identity(16, 16)) == 0.0);
  const int dim = 64;
  const Complex zr(0.8, -0.6);
  const Matrix D = displacement_matrix(dim, zr);
  CHECK(max_abs((D.adjoint() * D - Matrix::Identity(dim, dim)).topLeftCorner(32, 32)) < 1e-12);
  // D|0> is the textbook coherent state
  double fact = 1.0;
  for (int n = 0; n < 20; ++n) {
    if (n) fact *= n;
    const Complex ref = std::exp(-0.5 * std::norm(zr)) * std::pow(zr, n) / std::sqrt(fact);
    CHECK(std::abs(D(n, 0) - ref) < 1e-12);
  }
  CHECK_THROWS_AS(displacement_matrix(16, Complex(2.0, 0.0)), Error);
}

TEST_CASE("displacement covariance and composition for the fuzzy operator") {
  const int dim = 64;
  const int b = dim / 4;
  const auto c = fuzzy_coefficients(DistributionSpec::lorentzian(0.3));
  const auto ls = fuzzy_ladder(dim, c);
  const Complex z1(1.0, 0.0), z2(0.0, 1.0);
  const Matrix D1 = fuzzy_displacement(ls, z1);
  const Matrix D2 = fuzzy_displacement(ls, z2);
  const Matrix cov = interior_block(D1.adjoint() * ls.a_fuzzy * D1 - ls.a_fuzzy, b);
  CHECK(max_abs(cov - c.C * z1 * Matrix::Identity(cov.rows(), cov.cols())) < 1e-10);
  // D(z1) D(z2) = D(z1 + z2) exp(C (z1 conj(z2) - conj(z1) z2) / 2)
  const Complex phase = std::exp(0.5 * c.C * (z1 * std::conj(z2) - std::conj(z1) * z2));
  const Matrix lhs = D1 * D2;
  const Matrix rhs = phase * fuzzy_displacement(ls, z1 + z2);
  CHECK(max_abs(interior_block(lhs - rhs, b)) < 1e-10);
}

TEST_CASE("fuzzy coherent states") {
  const int dim = 64;
  const auto delta = fuzzy_coefficients(DistributionSpec::delta());
  const auto c3 = fuzzy_coefficients(DistributionSpec::lorentzian(0.3));
  CHECK(fidelity(coherent_displaced(0.0, c3, dim), fuzzy_vacuum(c3, dim)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(coherent_sum(0.0, c3, dim), fuzzy_vacuum(c3, dim)) == doctest::Approx(1.0).epsilon(1e-14));

  const auto sharp = coherent_displaced(1.0, delta, dim);
  double fact = 1.0;
  for (int n = 0; n < 20; ++n) {
    if (n) fact *= n;
    CHECK(std::abs(sharp.coeffs(n) - std::exp(-0.5) / std::sqrt(fact)) < 1e-8);
  }
  CHECK((coherent_sum(1.0, delta, dim).coeffs - sharp.coeffs).norm() < 1e-10);

  const auto c5 = fuzzy_coefficients(DistributionSpec::lorentzian(0.5));
  const double f = fidelity(coherent_displaced(1.0, c5, dim), coherent_sum(1.0, c5, dim));
  CHECK(f < 1.0 - 1e-6);
  CHECK(f > 0.5);

  // regression datum: mean position of the displaced fuzzy vacuum, lorentzian 0.3, z = 1
  const auto st = coherent_displaced(1.0, c3, dim);
  const Matrix q = fuzzy_ladder(dim, c3).position();
  const double mean_q = std::real(st.coeffs.dot(q * st.coeffs));
  const Complex zr = rescale_displacement(1.0, c3).z_rescaled;
  CHECK(mean_q == doctest::Approx(std::sqrt(2.0) * zr.real()).epsilon(1e-10));
  CHECK(std::abs(mean_q) > 0.1);
}

TEST_CASE("phase-space reconstruction of the displaced vacuum") {
  const int dim = 48;
  for (auto spec : {DistributionSpec::delta(), DistributionSpec::lorentzian(0.3), DistributionSpec::uniform(0.5)}) {
    const auto c = fuzzy_coefficients(spec);
    const Complex z(0.6, 0.4);
    const auto direct = coherent_displaced(z, c, dim);
    const auto rebuilt = coherent_phase_space(z, c, dim);
    CHECK(fidelity(direct, rebuilt) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("matrix exponential of a rotation generator") {
  Matrix g = Matrix::Zero(2, 2);
  g(0, 1) = -0.7;
  g(1, 0) = 0.7;
  const Matrix e = matrix_exponential<double>(g);
  CHECK(std::abs(e(0, 0) - std::cos(0.7)) < 1e-15);
  CHECK(std::abs(e(1, 0) - std::sin(0.7)) < 1e-15);
  CHECK(std::abs(e(0, 1) + std::sin(0.7)) < 1e-15);
}

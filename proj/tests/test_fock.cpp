#include <doctest.h>

#include <cmath>

#include "fuzzy/fock.hpp"

using namespace fuzzy;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// |0bar> coefficients from the product formula for alpha_{2k}, normalized independently.
Vector vacuum_product_formula(Complex I0, Complex I1, int dim) {
  const Complex q = I1 / (2.0 * I0 + I1);
  Vector a = Vector::Zero(dim);
  for (int k = 0; 2 * k < dim; ++k) {
    double prod = 1.0;
    for (int l = 1; l <= k; ++l) prod *= (2.0 * l - 1.0) / (2.0 * l);
    a(2 * k) = std::pow(-q, k) * std::sqrt(prod);
  }
  return a / a.norm();
}

}  // namespace

TEST_CASE("sharp operators") {
  const Matrix a = annihilator(3);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a.row(0).cwiseAbs().sum() == 1.0);
  const auto ls = sharp_ladder(16);
  const Matrix c = interior_block(commutator(ls.a_sharp, ls.a_sharp_dag), 1);
  CHECK(max_abs(c - Matrix::Identity(14, 14)) < 1e-14);
  const Matrix qp = interior_block(commutator(ls.position(), ls.momentum()), 1);
  CHECK(max_abs(qp - Complex(0.0, 1.0) * Matrix::Identity(14, 14)) < 1e-14);
}

TEST_CASE("annihilators at other frequencies") {
  CHECK(max_abs(annihilator_at_frequency(8, 1.0) - annihilator(8)) == 0.0);
  const Matrix a = annihilator(16);
  const Matrix c4 = interior_block(commutator(a, annihilator_at_frequency(16, 4.0)), 1);
  // [a, a_{4w}] picks up 1/2 (sqrt 4 - 1/sqrt 4) = 0.75 from the a^dagger part
  CHECK(max_abs(c4 - 0.75 * Matrix::Identity(14, 14)) < 1e-13);
  CHECK(cross_commutator_value(1.0) == 0.0);
  CHECK(cross_commutator_value(4.0) == 0.75);
  CHECK(cross_commutator_value(0.25) == -0.75);
  // omega -> -omega turns annihilation into creation: a_{-w} = i a^dagger
  const Matrix am = annihilator_at_frequency(16, -1.0);
  CHECK(max_abs(am - Complex(0.0, 1.0) * a.adjoint()) < 1e-15);
  const Matrix c = interior_block(commutator(a, Complex(0.0, -1.0) * am), 1);
  CHECK(max_abs(c - Matrix::Identity(14, 14)) < 1e-14);
  for (double eps : {1e-2, 1e-3, 1e-4})
    CHECK(max_abs(annihilator_at_frequency(8, 1.0 + eps) - a.topLeftCorner(8, 8)) < 10.0 * eps);
  CHECK_THROWS_AS(annihilator_at_frequency(8, 0.0), Error);
  CHECK_THROWS_AS(cross_commutator_value(-1.0), Error);
}

TEST_CASE("deformed commutator is C times the identity on the interior") {
  CHECK(max_abs(fuzzy_ladder(16, fuzzy_coefficients(DistributionSpec::delta())).a_fuzzy - annihilator(16)) == 0.0);
  for (auto spec : {DistributionSpec::lorentzian(0.3), DistributionSpec::uniform(0.5), DistributionSpec::gaussian(0.5)}) {
    const auto c = fuzzy_coefficients(spec);
    const auto ls = fuzzy_ladder(32, c);
    const Matrix blk = interior_block(commutator(ls.a_fuzzy, ls.a_fuzzy_dag), 1);
    CHECK(max_abs(blk - c.C * Matrix::Identity(30, 30)) < 1e-8);
  }
  const auto c3 = fuzzy_coefficients(DistributionSpec::lorentzian(0.3));
  CHECK(c3.C == doctest::Approx(0.957826).epsilon(1e-6));
}

TEST_CASE("number operator") {
  const auto sharp = sharp_ladder(8);
  const Matrix n = number_operator(sharp);
  for (int i = 0; i < 8; ++i) CHECK(n(i, i).real() == doctest::Approx(double(i)));
  const auto ls = fuzzy_ladder(48, fuzzy_coefficients(DistributionSpec::lorentzian(0.3)));
  const auto vals = eigensystem(number_operator(ls)).values;
  CHECK(std::abs(vals[0]) < 1e-6);
  // [a_fuzzy, N] = a_fuzzy on the interior
  const Matrix lhs = interior_block(commutator(ls.a_fuzzy, number_operator(ls)) - ls.a_fuzzy, 2);
  CHECK(max_abs(lhs) < 1e-10);
}

TEST_CASE("fuzzy vacuum") {
  const auto delta_vac = fuzzy_vacuum(fuzzy_coefficients(DistributionSpec::delta()), 16);
  CHECK(delta_vac.coeffs(0) == Complex(1.0, 0.0));
  CHECK(delta_vac.coeffs.tail(15).norm() == 0.0);

  const double z = 0.3;
  const auto m = moments(DistributionSpec::lorentzian(z));
  const auto c = commutation_function(m);
  const auto vac = fuzzy_vacuum(c, 64);
  CHECK(std::norm(vac.coeffs(0)) == doctest::Approx(2.0 / std::sqrt(4.0 + z * z)).epsilon(1e-12));
  CHECK(std::norm(vac.coeffs(0)) == doctest::Approx(0.988936).epsilon(1e-6));
  CHECK(std::abs(vac.coeffs(2) / vac.coeffs(0)) == doctest::Approx(0.104899).epsilon(1e-5));
  CHECK(vac.coeffs(0).imag() == 0.0);
  CHECK(vac.coeffs(0).real() > 0.0);
  for (int n = 1; n < 64; n += 2) CHECK(vac.coeffs(n) == Complex(0.0, 0.0));
  CHECK((vac.coeffs - vacuum_product_formula(m.I0, m.I1, 64)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((fuzzy_ladder(64, c).a_fuzzy * vac.coeffs).norm() < 1e-8);
}

TEST_CASE("vacuum residual shrinks with dim") {
  const auto c = fuzzy_coefficients(DistributionSpec::lorentzian(1.5));
  double prev = 1.0;
  for (int dim : {16, 32, 64, 128}) {
    const auto vac = fuzzy_vacuum(c, dim, 1.0);
    const double r = (fuzzy_ladder(dim, c).a_fuzzy * vac.coeffs).norm();
    CHECK(r <= prev * 1.0001 + 1e-15);
    prev = r;
  }
  CHECK_THROWS_AS(fuzzy_vacuum(c, 8), Error);
  CHECK(auto_dim(c) > 8);
  CHECK_NOTHROW(fuzzy_vacuum(c, auto_dim(c)));
}

TEST_CASE("fuzzy Fock states") {
  const auto c = fuzzy_coefficients(DistributionSpec::lorentzian(0.3));
  const auto ls = fuzzy_ladder(64, c);
  const auto vac = fuzzy_vacuum(c, 64);
  CHECK((fuzzy_fock_state(0, vac, ls).coeffs - vac.coeffs).norm() < 1e-15);
  CHECK((ls.a_fuzzy_dag * vac.coeffs).squaredNorm() == doctest::Approx(c.C).epsilon(1e-8));
  const auto one = fuzzy_fock_state(1, vac, ls);
  const auto two = fuzzy_fock_state(2, vac, ls);
  CHECK(std::abs(one.coeffs.dot(vac.coeffs)) < 1e-12);
  CHECK(std::abs(two.coeffs.dot(vac.coeffs)) < 1e-12);
  // a_fuzzy^dagger |nbar> = sqrt((n+1) C) |n+1 bar>
  CHECK((ls.a_fuzzy_dag * one.coeffs).norm() == doctest::Approx(std::sqrt(2.0 * c.C)).epsilon(1e-10));
  CHECK_THROWS_AS(fuzzy_fock_state(40, vac, ls), Error);
}

TEST_CASE("spectra") {
  const auto sharp = sharp_ladder(32);
  const auto s = spectrum(hamiltonian(sharp, {1.0, 0.0, false}), 10);
  for (int n = 0; n < 10; ++n) CHECK(std::abs(s[n] - (n + 0.5)) < 1e-9);

  const auto c = fuzzy_coefficients(DistributionSpec::lorentzian(0.3));
  const auto f = spectrum(hamiltonian(fuzzy_ladder(96, c), {}), 10);
  for (int n = 0; n < 10; ++n) CHECK(std::abs(f[n] - c.C * (n + 0.5)) < 1e-6);
  CHECK(f[0] == doctest::Approx(0.478913).epsilon(1e-6));

  const auto cu = fuzzy_coefficients(DistributionSpec::uniform(0.5));
  const auto g = spectrum(hamiltonian(fuzzy_ladder(96, cu), {}), 8);
  for (int n = 1; n < 8; ++n) CHECK(std::abs(g[n] - g[n - 1] - cu.C) < 1e-8);

  // completing the square: a_fuzzy^dagger a_fuzzy - lambda (a_fuzzy^dagger + a_fuzzy) shifts every level by -lambda^2
  const double lam = 0.5;
  const auto d = spectrum(hamiltonian(fuzzy_ladder(96, c), {1.0, lam, true}), 6);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(d[n] - (f[n] - lam * lam)) < 1e-8);

  CHECK_THROWS_AS(spectrum(hamiltonian(sharp, {}), 20), Error);
  Matrix bad = Matrix::Zero(4, 4);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(eigensystem(bad), Error);
}

TEST_CASE("degenerate levels: parity-even vector first") {
  Matrix H = Matrix::Zero(4, 4);
  H(0, 0) = H(1, 1) = 1.0;
  H(2, 2) = H(3, 3) = 2.0;
  const auto es = eigensystem(H);
  CHECK(es.values[0] == 1.0);
  CHECK(std::abs(es.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(es.vectors(2, 2)) == doctest::Approx(1.0));
}

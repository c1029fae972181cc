#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fuzzy/moments.hpp"
#include "oracles.hpp"

using namespace fuzzy;

namespace {

double cdiff(Complex a, Complex b) { return std::max(std::abs(a.real() - b.real()), std::abs(a.imag() - b.imag())); }

}  // namespace

TEST_CASE("branch square root") {
  CHECK(branch_sqrt(4.0) == Complex(2.0, 0.0));
  CHECK(cdiff(branch_sqrt(-1.0), Complex(0.0, 1.0)) < 1e-15);
  CHECK(cdiff(1.0 / branch_sqrt(-1.0), Complex(0.0, -1.0)) < 1e-15);
  // cut along the negative imaginary axis: just left of it the root has a negative real part
  const Complex left = branch_sqrt(Complex(-1e-9, -1.0));
  const Complex right = branch_sqrt(Complex(1e-9, -1.0));
  CHECK(left.real() < 0.0);
  CHECK(right.real() > 0.0);
}

TEST_CASE("analytic moments match hand-derived values") {
  const auto d = moments_analytic(DistributionSpec::delta());
  CHECK(d.I0 == Complex(1.0, 0.0));
  CHECK(d.I1 == Complex(0.0, 0.0));

  const auto l1 = moments_analytic(DistributionSpec::lorentzian(1.0));
  const Complex expect = std::pow(2.0, -0.25) * std::exp(Complex(0.0, -std::numbers::pi / 8));
  CHECK(cdiff(l1.I0, expect) < 1e-14);
  CHECK(cdiff(l1.I0, Complex(0.7769, -0.3218)) < 1e-4);

  const auto l3 = moments_analytic(DistributionSpec::lorentzian(0.3));
  CHECK(cdiff(l3.I0, Complex(0.9683, -0.1421)) < 1e-4);

  const auto u = moments_analytic(DistributionSpec::uniform(0.5));
  CHECK(u.I0.real() == doctest::Approx((std::sqrt(1.5) - std::sqrt(0.5)) / 0.5).epsilon(1e-14));
  CHECK(u.I0.imag() == 0.0);
  CHECK(u.I1.real() == doctest::Approx(-0.046233).epsilon(1e-4));
  CHECK(u.I1.imag() == 0.0);

  CHECK_THROWS_AS(moments_analytic(DistributionSpec::gaussian(0.2)), Error);
}

TEST_CASE("residue route against closed form and quadrature") {
  for (double z : {0.01, 0.1, 0.3, 0.7, 1.0, 2.0, 5.0}) {
    CAPTURE(z);
    const auto spec = DistributionSpec::lorentzian(z);
    const auto rep = prop1_check(spec);
    CHECK(rep.conditions_met);
    CHECK(rep.alpha[0] == -2.0);
    CHECK(rep.alpha[1] == -1.0);
    CHECK(rep.beta[0] == 0.0);
    CHECK(rep.beta[1] == 0.0);
    REQUIRE(rep.poles.size() == 1);
    CHECK(rep.poles[0].location == Complex(1.0, z));
    const auto res = residue_sum(rep);
    CHECK(cdiff(res.I0, oracle::lorentzian_I0(z)) < 1e-13);
    CHECK(cdiff(res.I1, oracle::lorentzian_I1(z)) < 1e-13);
    const auto q = moments_quadrature(spec);
    CHECK(cdiff(q.I0, res.I0) < 1e-8);
    CHECK(cdiff(q.I1, res.I1) < 1e-8);
  }
}

TEST_CASE("uniform quadrature against hand-integrated antiderivatives") {
  for (double z : {0.1, 0.5, 0.9, 1.0, 1.5, 3.0}) {
    CAPTURE(z);
    const auto spec = DistributionSpec::uniform(z);
    const auto q = moments_quadrature(spec);
    const auto a = moments_analytic(spec);
    CHECK(cdiff(a.I0, oracle::uniform_I0(z)) < 1e-14);
    CHECK(cdiff(a.I1, oracle::uniform_I1(z)) < 1e-14);
    CHECK(cdiff(q.I0, a.I0) < 1e-8);
    CHECK(cdiff(q.I1, a.I1) < 1e-8);
    if (z > 1.0) {
      CHECK(a.I0.imag() < 0.0);
      CHECK(a.I1.imag() > 0.0);
    }
  }
}

TEST_CASE("gaussian quadrature against an independent Simpson integration") {
  const double s = 0.2;
  const auto spec = DistributionSpec::gaussian(s);
  auto dens = [s](double x) { return std::exp(-x * x / (2 * s * s)) / (s * std::sqrt(2 * std::numbers::pi)); };
  const auto q = moments_quadrature(spec);
  const auto q_tight = moments_quadrature(spec, 1e-12);
  for (int k = 0; k < 2; ++k) {
    const Complex ref = oracle::moment_simpson(dens, k, 3.0, 20000);
    const Complex got = k == 0 ? q.I0 : q.I1;
    const Complex tight = k == 0 ? q_tight.I0 : q_tight.I1;
    CHECK(cdiff(got, ref) < 1e-9);
    CHECK(cdiff(got, tight) < 1e-9);
  }
  CHECK(q.I1.imag() != 0.0);
  CHECK(std::abs(q.I1) < 0.1);
}

TEST_CASE("commutation function identities") {
  for (auto spec : {DistributionSpec::lorentzian(0.3), DistributionSpec::uniform(0.5), DistributionSpec::uniform(2.0),
                    DistributionSpec::gaussian(0.4)}) {
    const auto m = moments(spec);
    const auto c = commutation_function(m);
    CHECK(std::abs(c.C - c.c_from_uv()) < 1e-12);
    CHECK(std::abs(c.C - oracle::commutation(m.I0, m.I1)) < 1e-15);
  }
  CHECK(commutation_function(moments(DistributionSpec::lorentzian(0.3))).C ==
        doctest::Approx(0.957826).epsilon(1e-6));
  CHECK(commutation_function(moments(DistributionSpec::delta())).C == 1.0);
}

TEST_CASE("lorentzian C is sub-bosonic and decays like 1/zeta") {
  for (double z = 0.05; z < 20.0; z *= 1.5) {
    const double C = fuzzy_coefficients(DistributionSpec::lorentzian(z)).C;
    CHECK(C > 0.0);
    CHECK(C <= 1.0);
    CHECK(C == doctest::Approx(1.0 / std::sqrt(1.0 + z * z)).epsilon(1e-12));
  }
  const double big = 1e3;
  CHECK(std::abs(fuzzy_coefficients(DistributionSpec::lorentzian(big)).C * big - 1.0) < 0.01);
}

TEST_CASE("uniform C against the printed closed form") {
  // The definitional uniform C exceeds 1 below zeta = 1; the printed closed form does not.
  for (double z : {0.1, 0.5, 0.9}) {
    const auto cmp = compare_uniform_commutation(z);
    CHECK(cmp.definitional > 1.0);
    CHECK(cmp.definitional == doctest::Approx(2.0 - cmp.printed).epsilon(1e-12));
    CHECK(cmp.flagged);
  }
  const auto two = compare_uniform_commutation(2.0);
  CHECK(two.printed == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(two.definitional == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(two.flagged);
  // quadrature and the exact values tell the same story
  const auto q = commutation_function(moments_quadrature(DistributionSpec::uniform(2.0)));
  CHECK(q.C == doctest::Approx(two.definitional).epsilon(1e-8));
}

TEST_CASE("zeta -> 0 recovers the sharp operator") {
  for (double z : {1e-3, 1e-4, 1e-6}) {
    for (auto kind : {DistKind::lorentzian, DistKind::uniform, DistKind::gaussian}) {
      CAPTURE(z);
      const auto m = moments(DistributionSpec::make(kind, z));
      CHECK(std::abs(m.I0 - 1.0) + std::abs(m.I1) < 5.0 * z);
    }
  }
}

TEST_CASE("analyticity report for kinds without a residue route") {
  CHECK_FALSE(prop1_check(DistributionSpec::uniform(0.5)).conditions_met);
  const auto g = prop1_check(DistributionSpec::gaussian(0.2));
  CHECK_FALSE(g.conditions_met);
  CHECK(g.alpha[0] > 0.0);
  // |g_0| at R = 10 on the imaginary axis beats any power of R
  CHECK(log_abs_shifted_integrand(DistributionSpec::gaussian(0.2), 0, Complex(0.0, 10.0)) > 100.0);
  CHECK_THROWS_AS(residue_sum(g), Error);
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS(moments_quadrature(DistributionSpec::lorentzian(0.3), 1e-15), Error);
  CHECK_THROWS_AS(moments_quadrature(DistributionSpec::lorentzian(0.3), 0.1), Error);
  CHECK_THROWS_AS(moments_quadrature(DistributionSpec::delta()), Error);
  try {
    moments_quadrature(DistributionSpec::lorentzian(0.3), 1e-16);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidTolerance);
  }
}

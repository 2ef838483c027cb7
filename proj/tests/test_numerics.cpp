/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <cmath>
#include <random>

#include "covertgeom/error.hpp"
#include "covertgeom/numerics.hpp"
#include "doctest.h"

using namespace covertgeom;

namespace {

// Q(k, x) for integer k: e^-x sum_{j<k} x^j / j!
double q_integer(int k, double x) {
  long double term = 1.0L, sum = 0.0L;
  for (int j = 0; j < k; ++j) {
    if (j > 0) term *= static_cast<long double>(x) / j;
    sum += term;
  }
  return static_cast<double>(std::exp(-static_cast<long double>(x)) * sum);
}

// Q(k + 1/2, x) = erfc(sqrt x) + e^-x sum_{j<k} x^(j+1/2) / Gamma(j + 3/2)
double q_half_integer(int k, double x) {
  long double sum = std::erfc(std::sqrt(static_cast<long double>(x)));
  for (int j = 0; j < k; ++j)
    sum += std::exp(-static_cast<long double>(x) + (j + 0.5L) * std::log(static_cast<long double>(x)) -
                    std::lgamma(static_cast<long double>(j) + 1.5L));
  return static_cast<double>(sum);
}

// Independent evaluator in extended precision: series for P below a+1,
// modified Lentz continued fraction for Q above.
double q_reference(double a_in, double x_in) {
  const long double a = a_in, x = x_in;
  const long double lpre = a * std::log(x) - x - std::lgamma(a);
  if (x < a + 1.0L) {
    long double term = 1.0L / a, sum = term;
    for (int k = 1; k < 100000000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < sum * 1e-21L) break;
    }
    return static_cast<double>(1.0L - std::exp(lpre) * sum);
  }
  const long double tiny = 1e-4000L;
  long double b = x + 1.0L - a, c = 1.0L / tiny, d = 1.0L / b, h = d;
  for (int i = 1; i < 100000000; ++i) {
    long double an = -i * (i - a);
    b += 2.0L;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0L / d;
    long double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0L) < 1e-21L) break;
  }
  return static_cast<double>(std::exp(lpre) * h);
}

}  // namespace

TEST_CASE("incomplete gamma closed forms") {
  CHECK(reg_gamma_upper(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(reg_gamma_upper(0.5, 0.5) == doctest::Approx(std::erfc(std::sqrt(0.5))).epsilon(1e-14));
  CHECK(reg_gamma_upper(0.5, 0.5) == doctest::Approx(0.317311).epsilon(1e-6));
  CHECK(reg_gamma_upper(3.7, 0.0) == 1.0);
  CHECK(reg_gamma_lower(3.7, 0.0) == 0.0);
  for (int k : {1, 2, 5, 17, 50})
    for (double x : {0.01, 0.7, 3.0, 12.5, 60.0}) {
      CHECK(std::fabs(reg_gamma_upper(k, x) - q_integer(k, x)) < 1e-13);
      CHECK(std::fabs(reg_gamma_upper(k + 0.5, x) - q_half_integer(k, x)) < 1e-12);
    }
}

TEST_CASE("incomplete gamma matches extended-precision reference up to shape 1e6") {
  for (double a : {0.3, 2.5, 50.0, 5000.0, 5e4, 5e5, 1e6})
    for (double z : {-6.0, -2.0, -0.5, 0.0, 0.5, 2.0, 6.0}) {
      double x = std::max(1e-3, a + z * std::sqrt(a));
      double ref = q_reference(a, x);
      CAPTURE(a);
      CAPTURE(x);
      CHECK(std::fabs(reg_gamma_upper(a, x) - ref) < 1e-10);
      CHECK(std::fabs(reg_gamma_lower(a, x) - (1.0 - ref)) < 1e-10);
    }
}

TEST_CASE("incomplete gamma complement and monotonicity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> la(std::log(1e-3), std::log(1e6));
  std::normal_distribution<double> z(0.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    double a = std::exp(la(rng));
    double x = std::max(0.0, a + z(rng) * std::sqrt(a));
    CHECK(std::fabs(reg_gamma_upper(a, x) + reg_gamma_lower(a, x) - 1.0) < 1e-12);
  }
  for (double a : {0.5, 10.0, 1e4, 1e6}) {
    double prev = 1.0;
    for (int i = 0; i <= 400; ++i) {
      double x = a * (i / 200.0);
      double q = reg_gamma_upper(a, x);
      CHECK(q <= prev);
      CHECK(q >= 0.0);
      prev = q;
    }
  }
}

TEST_CASE("incomplete gamma domain errors") {
  CHECK_THROWS_AS(reg_gamma_upper(0.0, 1.0), Error);
  CHECK_THROWS_AS(reg_gamma_upper(-1.0, 1.0), Error);
  CHECK_THROWS_AS(reg_gamma_upper(1.0, -0.1), Error);
  CHECK_THROWS_AS(reg_gamma_lower(1.0, std::nan("")), Error);
  try {
    reg_gamma_upper(-2.0, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
    CHECK(e.field() == "shape");
  }
}

TEST_CASE("kl_gaussian_scalar values") {
  CHECK(kl_gaussian_scalar(100, 0.0) == 0.0);
  CHECK(kl_gaussian_scalar(100, 0.1) == doctest::Approx(50.0 * (0.1 - std::log(1.1))).epsilon(1e-13));
  CHECK(kl_gaussian_scalar(100, 0.1) == doctest::Approx(0.234491).epsilon(1e-6));
  CHECK(kl_gaussian_scalar(4, 1.0) == doctest::Approx(0.613706).epsilon(1e-6));
  CHECK_THROWS_AS(kl_gaussian_scalar(4, -0.5), Error);
  CHECK_THROWS_AS(kl_gaussian_scalar(0, 0.5), Error);
}

TEST_CASE("x - ln(1+x) kernel keeps relative accuracy at small x") {
  for (double x : {1e-12, 1e-9, 1e-6, 1e-3, 0.05, 0.09, 0.11, 2.0}) {
    // Extended-precision series reference.
    long double lx = x, term = lx * lx, sum = 0.0L;
    for (int k = 2; k < 200; ++k) {
      sum += (k % 2 == 0 ? 1 : -1) * term / k;
      term *= lx;
      if (x > 0.5) break;
    }
    long double ref = x > 0.5 ? lx - std::log1p(lx) : sum;
    CHECK(std::fabs(x_minus_log1p(x) - static_cast<double>(ref)) <= 1e-14 * static_cast<double>(ref));
  }
}

TEST_CASE("kl_gaussian_scalar sits between 0 and n x^2 / 4") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lx(std::log(1e-9), std::log(1e3));
  std::uniform_int_distribution<long long> nd(1, 1000000);
  for (int i = 0; i < 100000; ++i) {
    double x = std::exp(lx(rng));
    long long n = nd(rng);
    double d = kl_gaussian_scalar(n, x);
    CHECK(d >= 0.0);
    CHECK(d <= static_cast<double>(n) * x * x / 4.0 * (1.0 + 1e-12));
  }
}

TEST_CASE("dense KL oracle basic cases") {
  Matrix i2 = Matrix::identity(2);
  Matrix two = i2;
  two(0, 0) = two(1, 1) = 2.0;
  CHECK(kl_multivariate_oracle({0, 0}, i2, {0, 0}, i2) == doctest::Approx(0.0));
  CHECK(kl_multivariate_oracle({0, 0}, i2, {0, 0}, two) ==
        doctest::Approx(0.5 * (4.0 - 2.0 - 2.0 * std::log(2.0))).epsilon(1e-14));
  CHECK(kl_multivariate_oracle({0, 0}, i2, {0, 0}, two) == doctest::Approx(0.306853).epsilon(1e-6));

  // Diagonal with mean shift: 1/2 sum (r + dm^2/s0 - 1 - ln r).
  Matrix c0(3, 3), c1(3, 3);
  double s0[3] = {1.0, 2.0, 0.5}, s1[3] = {1.5, 2.0, 3.0}, dm[3] = {0.3, -1.0, 0.0};
  double expect = 0.0;
  for (int k = 0; k < 3; ++k) {
    c0(k, k) = s0[k];
    c1(k, k) = s1[k];
    expect += 0.5 * (s1[k] / s0[k] + dm[k] * dm[k] / s0[k] - 1.0 - std::log(s1[k] / s0[k]));
  }
  CHECK(kl_multivariate_oracle({dm[0], dm[1], dm[2]}, c0, {0, 0, 0}, c1) ==
        doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("dense KL oracle rank-one update matches determinant lemma") {
  // S = diag(1,2), u = (1,1): |S + uu'|/|S| = 1 + u'S^-1u = 2.5, tr = 2 + 1.5.
  Matrix s(2, 2), s1(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = 2.0;
  s1 = s;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s1(i, j) += 1.0;
  double a = 1.5;
  CHECK(kl_multivariate_oracle({0, 0}, s, {0, 0}, s1) ==
        doctest::Approx(0.5 * (a - std::log1p(a))).epsilon(1e-13));
}

TEST_CASE("dense KL oracle diagonal agrees with scalar KL") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t k = 1 + rng() % 32;
    double s = u(rng), p = u(rng);
    Matrix c0 = Matrix::identity(k), c1 = Matrix::identity(k);
    for (std::size_t i = 0; i < k; ++i) {
      c0(i, i) = s;
      c1(i, i) = s + p;
    }
    std::vector<double> z(k, 0.0);
    CHECK(std::fabs(kl_multivariate_oracle(z, c0, z, c1) -
                    static_cast<double>(k) * kl_gaussian_scalar(1, p / s)) < 1e-9);
  }
}

TEST_CASE("dense KL oracle input errors") {
  Matrix bad(2, 2);
  bad(0, 0) = 1.0;
  bad(1, 1) = -1.0;
  Matrix i2 = Matrix::identity(2);
  CHECK_THROWS_AS(kl_multivariate_oracle({0, 0}, bad, {0, 0}, i2), Error);
  CHECK_THROWS_AS(kl_multivariate_oracle({0, 0}, i2, {0, 0, 0}, i2), Error);
  CHECK_THROWS_AS(kl_multivariate_oracle({0, 0, 0}, i2, {0, 0, 0}, Matrix::identity(3)), Error);
  Matrix asym = i2;
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(kl_multivariate_oracle({0, 0}, asym, {0, 0}, i2), Error);
  std::vector<double> z33(33, 0.0);
  CHECK_THROWS_AS(kl_multivariate_oracle(z33, Matrix::identity(33), z33, Matrix::identity(33)), Error);
}

TEST_CASE("kronecker product layout") {
  Matrix a(2, 2), b = Matrix::identity(3);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  Matrix k = kronecker(a, b);
  CHECK(k.rows == 6);
  CHECK(k(0, 3) == 2.0);
  CHECK(k(4, 1) == 3.0);
  CHECK(k(4, 4) == 4.0);
  CHECK(k(4, 5) == 0.0);
}

TEST_CASE("elementary inequalities hold") {
  auto both = [](double x, double r) {
    auto c = check_inequalities(x, r);
    return c.log_quadratic && c.bernoulli;
  };
  CHECK(both(0.0, 1.0));
  CHECK(both(3.7, 5.0));
  CHECK(both(1e-9, 1e3));
  CHECK(both(-0.5, 3.0));
  CHECK(both(1e300, 1.0));

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lx(std::log(1e-12), std::log(1e6));
  std::uniform_real_distribution<double> neg(-1.0 + 1e-12, 0.0);
  std::uniform_real_distribution<double> lr(0.0, std::log(1e4));
  long long failures = 0;
  for (int i = 0; i < 200000; ++i) {
    double x = (i % 4 == 0) ? neg(rng) : std::exp(lx(rng));
    double r = std::exp(lr(rng));
    if (!both(x, r)) ++failures;
  }
  CHECK(failures == 0);
}

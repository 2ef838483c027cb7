/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/numerics.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "covertgeom/error.hpp"

namespace covertgeom {

namespace {

void check_gamma_args(double shape, double x) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    fail(ErrorKind::Domain, "shape", "incomplete gamma: shape must be positive and finite");
  if (!(x >= 0.0)) fail(ErrorKind::Domain, "x", "incomplete gamma: x must be nonnegative");
}

}  // namespace

double reg_gamma_upper(double shape, double x) {
  check_gamma_args(shape, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  try {
    return boost::math::gamma_q(shape, x);
  } catch (const std::exception& e) {
    fail(ErrorKind::Numerical, "x", std::string("gamma_q: ") + e.what());
  }
}

double reg_gamma_lower(double shape, double x) {
  check_gamma_args(shape, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  try {
    return boost::math::gamma_p(shape, x);
  } catch (const std::exception& e) {
    fail(ErrorKind::Numerical, "x", std::string("gamma_p: ") + e.what());
  }
}

double x_minus_log1p(double x) {
  if (!(x > -1.0)) fail(ErrorKind::Domain, "x", "x - ln(1+x) needs x > -1");
  if (std::fabs(x) < 0.1) {
    // x^2/2 - x^3/3 + x^4/4 - ...
    double term = x * x;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      double add = term / k;
      sum += (k % 2 == 0) ? add : -add;
      if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
      term *= x;
    }
    return sum;
  }
  return x - std::log1p(x);
}

double kl_gaussian_scalar(long long n, double x) {
  if (n < 1) fail(ErrorKind::Domain, "n", "kl_gaussian_scalar: n must be >= 1");
  if (!(x >= 0.0)) fail(ErrorKind::Domain, "x", "kl_gaussian_scalar: x must be nonnegative");
  if (std::isinf(x)) return std::numeric_limits<double>::infinity();
  return 0.5 * static_cast<double>(n) * x_minus_log1p(x);
}

Matrix Matrix::identity(std::size_t k) {
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
  return m;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      for (std::size_t p = 0; p < b.rows; ++p)
        for (std::size_t q = 0; q < b.cols; ++q)
          out(i * b.rows + p, j * b.cols + q) = a(i, j) * b(p, q);
  return out;
}

namespace {

void check_square_sym(const Matrix& m, std::size_t k, const char* field) {
  if (m.rows != k || m.cols != k)
    fail(ErrorKind::InvalidArgument, field, "covariance dimension mismatch");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      double scale = std::max(std::fabs(m(i, j)), std::fabs(m(j, i)));
      if (std::fabs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, scale))
        fail(ErrorKind::InvalidArgument, field, "covariance is not symmetric");
    }
}

// Lower Cholesky factor; throws when not positive definite.
Matrix cholesky(const Matrix& a, const char* field) {
  const std::size_t k = a.rows;
  Matrix l(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    double d = a(j, j);
    for (std::size_t p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
    if (!(d > 0.0)) fail(ErrorKind::InvalidArgument, field, "covariance is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

// Solves L L^T x = b in place.
void chol_solve(const Matrix& l, std::vector<double>& b) {
  const std::size_t k = l.rows;
  for (std::size_t i = 0; i < k; ++i) {
    double s = b[i];
    for (std::size_t p = 0; p < i; ++p) s -= l(i, p) * b[p];
    b[i] = s / l(i, i);
  }
  for (std::size_t i = k; i-- > 0;) {
    double s = b[i];
    for (std::size_t p = i + 1; p < k; ++p) s -= l(p, i) * b[p];
    b[i] = s / l(i, i);
  }
}

double log_det(const Matrix& l) {
  double s = 0.0;
  for (std::size_t i = 0; i < l.rows; ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

}  // namespace

double kl_multivariate_oracle(const std::vector<double>& mean0, const Matrix& cov0,
                              const std::vector<double>& mean1, const Matrix& cov1) {
  const std::size_t k = mean0.size();
  if (k == 0) fail(ErrorKind::InvalidArgument, "mean0", "empty dimension");
  if (k > kOracleMaxDim) fail(ErrorKind::InvalidArgument, "mean0", "oracle dimension above 32");
  if (mean1.size() != k) fail(ErrorKind::InvalidArgument, "mean1", "dimension mismatch");
  check_square_sym(cov0, k, "cov0");
  check_square_sym(cov1, k, "cov1");
  Matrix l0 = cholesky(cov0, "cov0");
  Matrix l1 = cholesky(cov1, "cov1");

  double trace = 0.0;
  std::vector<double> col(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) col[i] = cov1(i, j);
    chol_solve(l0, col);
    trace += col[j];
  }
  std::vector<double> dm(k);
  for (std::size_t i = 0; i < k; ++i) dm[i] = mean0[i] - mean1[i];
  std::vector<double> sol = dm;
  chol_solve(l0, sol);
  double quad = 0.0;
  for (std::size_t i = 0; i < k; ++i) quad += dm[i] * sol[i];

  double d = 0.5 * (trace + quad - static_cast<double>(k) - (log_det(l1) - log_det(l0)));
  return std::max(0.0, d);
}

InequalityCheck check_inequalities(double x, double r) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  InequalityCheck out{true, true};

  if (x >= 0.0 && std::isfinite(x)) {
    // gap = ln(1+x) - x + x^2/2 >= 0; the series keeps the sign at tiny x.
    double gap;
    if (x < 0.1) {
      gap = 0.0;
      double term = x * x * x;
      for (int k = 3; k < 40; ++k) {
        double add = term / k;
        gap += (k % 2 == 1) ? add : -add;
        if (add < 1e-18 * gap) break;
        term *= x;
      }
    } else {
      gap = std::log1p(x) - (x - 0.5 * x * x);
    }
    double tol = 8.0 * eps * std::max(std::log1p(x), 0.5 * x * x);
    out.log_quadratic = gap >= -tol;
  }

  if (x > -1.0 && r >= 1.0 && std::isfinite(x) && std::isfinite(r) && 1.0 + r * x > 0.0) {
    // (1+x)^-r <= (1+rx)^-1  <=>  r ln(1+x) >= ln(1+rx)
    double lhs = r * std::log1p(x);
    double rhs = std::log1p(r * x);
    double tol = 8.0 * eps * std::max(std::fabs(lhs), std::fabs(rhs));
    out.bernoulli = lhs >= rhs - tol;
  }
  return out;
}

}  // namespace covertgeom

/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <vector>

namespace covertgeom {

/// Regularized upper incomplete gamma Q(a, x).
double reg_gamma_upper(double shape, double x);
/// Regularized lower incomplete gamma P(a, x).
double reg_gamma_lower(double shape, double x);

/// x - ln(1+x) without cancellation for small x.
double x_minus_log1p(double x);

/// KL divergence between N(0, s)^n and N(0, s(1+x))^n.
double kl_gaussian_scalar(long long n, double x);

/// Row-major dense matrix, oracle use only.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  static Matrix identity(std::size_t k);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Kronecker product a (x) b.
Matrix kronecker(const Matrix& a, const Matrix& b);

inline constexpr std::size_t kOracleMaxDim = 32;

/// Relative entropy of N(mean1, cov1) with respect to N(mean0, cov0):
/// 1/2 (tr(cov0^-1 cov1) + dm' cov0^-1 dm - k - ln(|cov1|/|cov0|)).
/// Dense Cholesky, dimension <= 32.
double kl_multivariate_oracle(const std::vector<double>& mean0, const Matrix& cov0,
                              const std::vector<double>& mean1, const Matrix& cov1);

struct InequalityCheck {
  bool log_quadratic;  // ln(1+x) >= x - x^2/2 for x >= 0
  bool bernoulli;      // (1+x)^-r <= (1+rx)^-1 for x > -1, r >= 1, 1+rx > 0
};

/// Evaluates both elementary inequalities at (x, r). Inputs outside a
/// predicate's domain report true for that predicate.
InequalityCheck check_inequalities(double x, double r);

}  // namespace covertgeom

/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace covertgeom {

/// min(1, 2^(nR - (n/2) log2(1 + P_a/(2 sigma^2)))).
double bob_error_upper(long long n, double rate, double p_a, double sigma_b_sq);

/// 1 - (P_U/(2 sigma^2) + 1/n) / (log2(xi)/n + R), clamped to [0, 1].
double bob_error_lower_lowpower(long long n, double rate, double p_u, double sigma_b_sq,
                                double xi);

inline constexpr std::size_t kMaxCodewords = std::size_t{1} << 20;

struct CodebookSpec {
  long long n = 1;
  double rate = 0.0;
  double power = 1.0;

  /// 2^ceil(nR); throws past kMaxCodewords.
  std::size_t codeword_count() const;
};

struct DecodingResult {
  double error_rate = 0.0;
  double ci95 = 0.0;  // half-width
  long long errors = 0;
  long long trials = 0;
};

/// Codeword 0 is sent; the decoder picks the codeword nearest in Euclidean
/// distance. Every trial draws a fresh codebook unless fixed_codebook is set.
DecodingResult random_coding_trial(const CodebookSpec& spec, double sigma_b_sq, long long trials,
                                   std::uint64_t seed, bool fixed_codebook = false);

/// Index of the row of `codebook` (count x n, row-major) nearest to y;
/// ties go to the smallest index.
std::size_t ml_decode(const std::vector<double>& codebook, std::size_t n,
                      const std::vector<double>& y);

}  // namespace covertgeom

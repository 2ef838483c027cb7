/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covertgeom/error.hpp"
#include "covertgeom/parallel.hpp"
#include "covertgeom/rng.hpp"

namespace covertgeom {

namespace {
bool positive(double v) { return v > 0.0 && std::isfinite(v); }
}  // namespace

double bob_error_upper(long long n, double rate, double p_a, double sigma_b_sq) {
  require(n >= 1, "n", "n must be >= 1");
  require(rate >= 0.0 && std::isfinite(rate), "rate", "rate must be nonnegative");
  require(positive(p_a), "p_a", "power must be positive");
  require(positive(sigma_b_sq), "sigma_b_sq", "noise power must be positive");
  const double nn = static_cast<double>(n);
  const double e = nn * rate - 0.5 * nn * std::log2(1.0 + p_a / (2.0 * sigma_b_sq));
  return std::min(1.0, std::exp2(e));
}

double bob_error_lower_lowpower(long long n, double rate, double p_u, double sigma_b_sq,
                                double xi) {
  require(n >= 1, "n", "n must be >= 1");
  require(xi > 0.0 && xi <= 1.0, "xi", "xi must lie in (0, 1]");
  require(p_u >= 0.0 && std::isfinite(p_u), "p_u", "power must be nonnegative");
  require(positive(sigma_b_sq), "sigma_b_sq", "noise power must be positive");
  const double nn = static_cast<double>(n);
  const double denom = std::log2(xi) / nn + rate;
  require(denom > 0.0, "rate", "rate must exceed -log2(xi)/n");
  const double v = 1.0 - (p_u / (2.0 * sigma_b_sq) + 1.0 / nn) / denom;
  return std::clamp(v, 0.0, 1.0);
}

std::size_t CodebookSpec::codeword_count() const {
  require(n >= 1, "n", "n must be >= 1");
  require(rate >= 0.0 && std::isfinite(rate), "rate", "rate must be nonnegative");
  // Small slack so n*R landing a hair above an integer does not add a bit.
  const double bits = std::ceil(static_cast<double>(n) * rate - 1e-9);
  if (bits > 20.0)
    fail(ErrorKind::InvalidArgument, "rate",
         "codebook above 2^20 codewords; lower n*R for simulation");
  return std::size_t{1} << static_cast<int>(std::max(0.0, bits));
}

std::size_t ml_decode(const std::vector<double>& codebook, std::size_t n,
                      const std::vector<double>& y) {
  require(n > 0 && y.size() == n && !codebook.empty() && codebook.size() % n == 0, "codebook",
          "codebook must be count x n with matching received vector");
  const std::size_t count = codebook.size() / n;
  std::size_t best = 0;
  double best_metric = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < count; ++j) {
    const double* c = &codebook[j * n];
    double ip = 0.0, nrm = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      ip += y[u] * c[u];
      nrm += c[u] * c[u];
    }
    double metric = 2.0 * ip - nrm;
    if (metric > best_metric) {
      best_metric = metric;
      best = j;
    }
  }
  return best;
}

DecodingResult random_coding_trial(const CodebookSpec& spec, double sigma_b_sq, long long trials,
                                   std::uint64_t seed, bool fixed_codebook) {
  require(positive(spec.power), "power", "codeword power must be positive");
  require(sigma_b_sq >= 0.0 && std::isfinite(sigma_b_sq), "sigma_b_sq",
          "noise power must be nonnegative");
  require(trials >= 1, "trials", "trials must be >= 1");
  const std::size_t count = spec.codeword_count();
  require(count >= 2, "rate", "random coding needs at least 2 codewords");
  const auto n = static_cast<std::size_t>(spec.n);
  const double amp = std::sqrt(spec.power);
  const double noise = std::sqrt(sigma_b_sq);

  std::vector<double> fixed;
  if (fixed_codebook) {
    Rng rng = make_stream(seed, tag::codebook, ~0ULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    fixed.resize(count * n);
    for (auto& v : fixed) v = amp * normal(rng);
  }

  std::vector<unsigned char> err(static_cast<std::size_t>(trials), 0);
  parallel_for(err.size(), [&](std::size_t t) {
    Rng rng = make_stream(seed, tag::codebook, t);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x0(n), y(n);
    if (fixed_codebook)
      std::copy(fixed.begin(), fixed.begin() + static_cast<std::ptrdiff_t>(n), x0.begin());
    else
      for (auto& v : x0) v = amp * normal(rng);
    double ip0 = 0.0, nrm0 = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      y[u] = x0[u] + noise * normal(rng);
      ip0 += y[u] * x0[u];
      nrm0 += x0[u] * x0[u];
    }
    const double metric0 = 2.0 * ip0 - nrm0;
    // Any codeword strictly beating codeword 0 makes the decision wrong, so
    // the scan stops there; ties keep the smaller index.
    for (std::size_t j = 1; j < count; ++j) {
      double ip = 0.0, nrm = 0.0;
      if (fixed_codebook) {
        const double* cj = &fixed[j * n];
        for (std::size_t u = 0; u < n; ++u) {
          ip += y[u] * cj[u];
          nrm += cj[u] * cj[u];
        }
      } else {
        for (std::size_t u = 0; u < n; ++u) {
          double v = amp * normal(rng);
          ip += y[u] * v;
          nrm += v * v;
        }
      }
      if (2.0 * ip - nrm > metric0) {
        err[t] = 1;
        break;
      }
    }
  });

  DecodingResult out;
  out.trials = trials;
  for (unsigned char e : err) out.errors += e;
  const double tt = static_cast<double>(trials);
  out.error_rate = static_cast<double>(out.errors) / tt;
  out.ci95 = 1.96 * std::sqrt(out.error_rate * (1.0 - out.error_rate) / tt);
  return out;
}

}  // namespace covertgeom

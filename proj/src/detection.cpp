/*
 * (C) Copyright 2026 The covertgeom Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "covertgeom/detection.hpp"

#include <algorithm>
#include <cmath>

#include "covertgeom/error.hpp"
#include "covertgeom/geometry.hpp"
#include "covertgeom/numerics.hpp"
#include "covertgeom/parallel.hpp"
#include "covertgeom/rng.hpp"

namespace covertgeom {

namespace {

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

KlBound kl_from_snr(long long n, double x) {
  KlBound out;
  out.d = kl_gaussian_scalar(n, x);
  out.pe_lower = std::max(0.0, 0.5 - std::sqrt(out.d / 8.0));
  return out;
}

double received_snr(double p_a, double d, double s, double gamma) {
  return p_a / (std::pow(std::max(d, kMinDistance), gamma) * s);
}

void check_variances(double s0, double s1) {
  require(positive(s0), "sigma0_sq", "H0 variance must be positive");
  require(std::isfinite(s1) && s1 >= s0, "sigma1_sq", "H1 variance must be >= H0 variance");
}

// Normalized energy threshold g* on G = sum y^2 / (2 sigma0^2) for variance
// ratio 1 + a.
double lrt_threshold(long long n, double a) {
  return 0.5 * static_cast<double>(n) * std::log1p(a) * (1.0 + a) / a;
}

ErrorPair lrt_from_ratio(long long n, double a) {
  if (!(a > 0.0)) return ErrorPair::of(0.5, 0.5);
  const double half = 0.5 * static_cast<double>(n);
  const double g = lrt_threshold(n, a);
  return ErrorPair::of(reg_gamma_upper(half, g), reg_gamma_lower(half, g / (1.0 + a)));
}

constexpr long long kChunk = 1 << 14;

struct Counts {
  long long fa = 0;
  long long md = 0;
};

// Runs `trial(rng, counts)` `trials` times over fixed-size chunks, each with
// its own substream; chunk results are summed in index order.
template <class F>
Counts run_chunks(long long trials, std::uint64_t seed, F trial) {
  const auto chunks = static_cast<std::size_t>((trials + kChunk - 1) / kChunk);
  std::vector<Counts> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng = make_stream(seed, tag::detector, c);
    long long lo = static_cast<long long>(c) * kChunk;
    long long hi = std::min(trials, lo + kChunk);
    Counts local;
    for (long long i = lo; i < hi; ++i) trial(rng, local);
    parts[c] = local;
  });
  Counts total;
  for (const auto& p : parts) {
    total.fa += p.fa;
    total.md += p.md;
  }
  return total;
}

McErrorPair summarize(const Counts& c, long long trials) {
  McErrorPair out;
  const double t = static_cast<double>(trials);
  const double fa = static_cast<double>(c.fa) / t;
  const double md = static_cast<double>(c.md) / t;
  out.estimate = ErrorPair::of(fa, md);
  out.p_fa_ci95 = 1.96 * std::sqrt(fa * (1.0 - fa) / t);
  out.p_md_ci95 = 1.96 * std::sqrt(md * (1.0 - md) / t);
  out.p_e_ci95 = 1.96 * std::sqrt((fa * (1.0 - fa) + md * (1.0 - md)) / (4.0 * t));
  out.trials = trials;
  return out;
}

}  // namespace

KlBound kl_budget_single(long long n, double p_a, double d_aw, double sigma_w_sq, double gamma) {
  require(p_a >= 0.0 && std::isfinite(p_a), "p_a", "power must be nonnegative");
  require(d_aw >= 0.0 && std::isfinite(d_aw), "d_aw", "distance must be nonnegative");
  require(positive(sigma_w_sq), "sigma_w_sq", "noise power must be positive");
  return kl_from_snr(n, received_snr(p_a, d_aw, sigma_w_sq, gamma));
}

KlBound kl_budget_multi(long long n, double p_a, const std::vector<double>& d_aw,
                        const std::vector<double>& sigma_w_sq, double gamma) {
  require(!d_aw.empty(), "d_aw", "at least one warden required");
  require(d_aw.size() == sigma_w_sq.size(), "sigma_w_sq", "list lengths differ");
  require(p_a >= 0.0 && std::isfinite(p_a), "p_a", "power must be nonnegative");
  double sum = 0.0;
  for (std::size_t k = 0; k < d_aw.size(); ++k) {
    require(positive(sigma_w_sq[k]), "sigma_w_sq", "noise power must be positive");
    sum += received_snr(p_a, d_aw[k], sigma_w_sq[k], gamma);
  }
  return kl_from_snr(n, sum);
}

ErrorPair radiometer_exact(long long n, double sigma0_sq, double sigma1_sq, double t) {
  require(n >= 1, "n", "n must be >= 1");
  check_variances(sigma0_sq, sigma1_sq);
  require(t > 0.0, "t", "threshold must be positive");
  const double half = 0.5 * static_cast<double>(n);
  const double level = sigma0_sq + t;
  return ErrorPair::of(reg_gamma_upper(half, half * level / sigma0_sq),
                       reg_gamma_lower(half, half * level / sigma1_sq));
}

ErrorPair lrt_exact_single(long long n, double sigma0_sq, double sigma1_sq) {
  require(n >= 1, "n", "n must be >= 1");
  check_variances(sigma0_sq, sigma1_sq);
  return lrt_from_ratio(n, (sigma1_sq - sigma0_sq) / sigma0_sq);
}

HypothesisPair make_hypotheses(double p_a, const std::vector<double>& d_aw,
                               const std::vector<double>& sigma_w_sq, double gamma) {
  require(d_aw.size() == sigma_w_sq.size(), "sigma_w_sq", "list lengths differ");
  HypothesisPair hp;
  hp.sigma0_sq = sigma_w_sq;
  hp.sigma1_sq.resize(d_aw.size());
  for (std::size_t k = 0; k < d_aw.size(); ++k)
    hp.sigma1_sq[k] = sigma_w_sq[k] + p_a / std::pow(std::max(d_aw[k], kMinDistance), gamma);
  return hp;
}

double total_snr(const HypothesisPair& hp) {
  require(hp.sigma0_sq.size() == hp.sigma1_sq.size() && !hp.sigma0_sq.empty(), "hp",
          "hypothesis lists must be nonempty and equal length");
  double a = 0.0;
  for (std::size_t k = 0; k < hp.sigma0_sq.size(); ++k) {
    check_variances(hp.sigma0_sq[k], hp.sigma1_sq[k]);
    a += (hp.sigma1_sq[k] - hp.sigma0_sq[k]) / hp.sigma0_sq[k];
  }
  return a;
}

ErrorPair lrt_exact_multi(long long n, const HypothesisPair& hp) {
  require(n >= 1, "n", "n must be >= 1");
  return lrt_from_ratio(n, total_snr(hp));
}

McErrorPair lrt_multi_mc(long long n, const HypothesisPair& hp, long long trials,
                         std::uint64_t seed) {
  require(n >= 1, "n", "n must be >= 1");
  require(trials >= 1000, "trials", "Monte Carlo needs at least 1000 trials");
  const double a = total_snr(hp);
  const double half = 0.5 * static_cast<double>(n);
  // Joint LLR in terms of the projected energy G; components orthogonal to
  // the whitened steering vector have the same law under both hypotheses.
  const double bias = half * std::log1p(a);
  const double slope = a / (1.0 + a);
  Counts c = run_chunks(trials, seed, [&](Rng& rng, Counts& k) {
    std::gamma_distribution<double> g(half, 1.0);
    double g0 = g(rng);
    double g1 = (1.0 + a) * g(rng);
    if (g0 * slope - bias > 0.0) ++k.fa;
    if (!(g1 * slope - bias > 0.0)) ++k.md;
  });
  return summarize(c, trials);
}

McErrorPair radiometer_mc(long long n, double sigma0_sq, double sigma1_sq, double t,
                          long long trials, std::uint64_t seed) {
  require(n >= 1, "n", "n must be >= 1");
  check_variances(sigma0_sq, sigma1_sq);
  require(trials >= 1, "trials", "trials must be >= 1");
  const double half = 0.5 * static_cast<double>(n);
  const double energy = static_cast<double>(n) * (sigma0_sq + t);
  Counts c = run_chunks(trials, seed, [&](Rng& rng, Counts& k) {
    std::gamma_distribution<double> g(half, 1.0);
    if (2.0 * sigma0_sq * g(rng) >= energy) ++k.fa;
    if (2.0 * sigma1_sq * g(rng) < energy) ++k.md;
  });
  return summarize(c, trials);
}

McErrorPair lrt_single_mc(long long n, double sigma0_sq, double sigma1_sq, long long trials,
                          std::uint64_t seed) {
  require(n >= 1, "n", "n must be >= 1");
  check_variances(sigma0_sq, sigma1_sq);
  require(trials >= 1, "trials", "trials must be >= 1");
  const double half = 0.5 * static_cast<double>(n);
  const double nn = static_cast<double>(n);
  // Sum y^2 compared against tau* = n ln(s1/s0) s0 s1/(s1 - s0).
  const double tau = nn * std::log(sigma1_sq / sigma0_sq) * sigma0_sq * sigma1_sq /
                     (sigma1_sq - sigma0_sq);
  Counts c = run_chunks(trials, seed, [&](Rng& rng, Counts& k) {
    std::gamma_distribution<double> g(half, 1.0);
    if (2.0 * sigma0_sq * g(rng) > tau) ++k.fa;
    if (!(2.0 * sigma1_sq * g(rng) > tau)) ++k.md;
  });
  return summarize(c, trials);
}

ChebyshevBounds chebyshev_bounds(long long n, double p_a, double d_aw, double sigma_w_sq,
                                 double gamma, double t) {
  require(n >= 1, "n", "n must be >= 1");
  require(positive(sigma_w_sq), "sigma_w_sq", "noise power must be positive");
  require(t > 0.0, "t", "threshold must be positive");
  require(p_a >= 0.0, "p_a", "power must be nonnegative");
  const double nn = static_cast<double>(n);
  const double s2 = sigma_w_sq * sigma_w_sq;
  const double pr = p_a / std::pow(std::max(d_aw, kMinDistance), gamma);
  ChebyshevBounds b;
  b.fa_bound = std::min(1.0, 2.0 * s2 / (nn * t * t));
  if (pr > t) {
    const double gap = pr - t;
    b.md_bound = std::min(1.0, (4.0 * pr * sigma_w_sq + 2.0 * s2) / (nn * gap * gap));
  }
  return b;
}

ChebyshevBounds chebyshev_bounds_worst_case(long long n, double p_a, double sigma_w_sq,
                                            double gamma, double t) {
  return chebyshev_bounds(n, p_a, 2.0, sigma_w_sq, gamma, t);
}

}  // namespace covertgeom

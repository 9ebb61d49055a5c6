// Copyright 2026 The svnkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svnkit/pvalues.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace svnkit {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

// Compensated accumulator (Neumaier variant). Keeps tail sums accurate to a
// few ulp independent of the number of terms.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

double clamp01(double p) {
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

// Grow-only cache of ln(n!) built by compensated cumulative summation.
// Reads take a shared lock; growth takes the exclusive lock and continues
// the running compensated sum, so already-published entries never change.
class LogFactorialCache {
 public:
  static constexpr std::int64_t kCap = 1 << 16;

  double value(std::int64_t n) {
    {
      std::shared_lock lock(mutex_);
      if (static_cast<std::size_t>(n) < table_.size()) return table_[n];
    }
    std::unique_lock lock(mutex_);
    while (static_cast<std::int64_t>(table_.size()) <= n) {
      const double k = static_cast<double>(table_.size());
      running_.add(std::log(k));
      table_.push_back(running_.value());
    }
    return table_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<double> table_{0.0, 0.0};  // ln 0! = ln 1! = 0
  KahanSum running_;
};

LogFactorialCache& log_factorial_cache() {
  static LogFactorialCache cache;
  return cache;
}

// Stirling series for ln(n!) beyond the cache cap. The truncation error at
// n >= 2^16 is far below double rounding.
double log_factorial_stirling(double n) {
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  const double series =
      inv / 12.0 - inv * inv2 / 360.0 + inv * inv2 * inv2 / 1260.0;
  return kLogSqrt2Pi + (n + 0.5) * std::log(n) - n + series;
}

// Raw (unnormalized) tail masses around a query point n. Terms come from the
// pmf ratio recurrence anchored at the distribution mode; every ratio is a
// quotient of exactly representable integer products, so the drift stays at a
// few ulp per step. Callers divide by `total`, which cancels the anchor scale:
// the two tails of one distribution partition to 1 at machine precision, and
// the pmf sums to 1 by construction. Log-space log-factorial differences lose
// ~1e-9 absolute once the population reaches 1e6, which breaks both
// properties at the 1e-12 level; they are only used for the standalone
// binomial kernels.
struct TailScan {
  double below = 0.0;  // P*(X <= n-1)
  double at = 0.0;     // raw pmf at n (0 when n outside support)
  double above = 0.0;  // P*(X >= n+1)
  double total = 0.0;
};

TailScan scan_support(const HypergeomParams& prm, std::int64_t n) {
  const std::int64_t lo = prm.support_min();
  const std::int64_t hi = prm.support_max();
  const double nb = static_cast<double>(prm.population);
  const double ni = static_cast<double>(prm.successes);
  const double nj = static_cast<double>(prm.draws);

  std::int64_t mode =
      ((prm.successes + 1) * (prm.draws + 1)) / (prm.population + 2);
  if (mode < lo) mode = lo;
  if (mode > hi) mode = hi;

  KahanSum below, above;
  double at = 0.0;
  auto classify = [&](std::int64_t x, double term) {
    if (x < n) {
      below.add(term);
    } else if (x > n) {
      above.add(term);
    } else {
      at = term;
    }
  };

  // Anchor raw mass 1 at the mode, walk outward until terms underflow.
  classify(mode, 1.0);
  double term = 1.0;
  for (std::int64_t x = mode - 1; x >= lo; --x) {
    const double xd = static_cast<double>(x);
    term *= ((xd + 1.0) * (nb - ni - nj + xd + 1.0)) /
            ((ni - xd) * (nj - xd));
    if (term == 0.0) break;
    classify(x, term);
  }
  term = 1.0;
  for (std::int64_t x = mode + 1; x <= hi; ++x) {
    const double xd = static_cast<double>(x);
    term *= ((ni - xd + 1.0) * (nj - xd + 1.0)) /
            (xd * (nb - ni - nj + xd));
    if (term == 0.0) break;
    classify(x, term);
  }

  TailScan out;
  out.below = below.value();
  out.at = at;
  out.above = above.value();
  out.total = out.below + out.at + out.above;
  return out;
}

void check_observation(const HypergeomParams& prm, std::int64_t n_ij) {
  if (n_ij < 0 || n_ij > prm.support_max()) {
    throw std::invalid_argument(
        "co-occurrence count " + std::to_string(n_ij) +
        " outside [0, min(N_i, N_j)] = [0, " +
        std::to_string(prm.support_max()) + "]");
  }
}

}  // namespace

void HypergeomParams::validate() const {
  if (population < 0) {
    throw std::invalid_argument("population must be non-negative");
  }
  if (successes < 0 || successes > population) {
    throw std::invalid_argument("successes must lie in [0, population]");
  }
  if (draws < 0 || draws > population) {
    throw std::invalid_argument("draws must lie in [0, population]");
  }
}

const char* tail_name(Tail t) {
  switch (t) {
    case Tail::over: return "over";
    case Tail::under: return "under";
    case Tail::disparity: return "disparity";
  }
  return "?";
}

double log_factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("log_factorial of negative value");
  if (n <= 1) return 0.0;
  if (n < LogFactorialCache::kCap) return log_factorial_cache().value(n);
  return log_factorial_stirling(static_cast<double>(n));
}

double log_choose(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("log_choose with negative n");
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double hypergeom_pmf(const HypergeomParams& params, std::int64_t x) {
  params.validate();
  if (x < params.support_min() || x > params.support_max()) return 0.0;
  const TailScan s = scan_support(params, x);
  return clamp01(s.at / s.total);
}

HypergeomTails hypergeom_tails(const HypergeomParams& params,
                               std::int64_t n_ij) {
  params.validate();
  check_observation(params, n_ij);
  const std::int64_t lo = params.support_min();
  if (n_ij < lo) {
    // Forced-overlap regime: observations below the support minimum are
    // impossible, the upper tail covers everything.
    return {1.0, 0.0, 0.0};
  }
  const TailScan s = scan_support(params, n_ij);
  HypergeomTails t;
  t.over = clamp01((s.at + s.above) / s.total);
  t.under = clamp01((s.below + s.at) / s.total);
  t.pmf = clamp01(s.at / s.total);
  return t;
}

double pvalue_over(const HypergeomParams& params, std::int64_t n_ij) {
  return hypergeom_tails(params, n_ij).over;
}

double pvalue_under(const HypergeomParams& params, std::int64_t n_ij) {
  return hypergeom_tails(params, n_ij).under;
}

double pvalue_disparity(std::int64_t k, double x) {
  if (k < 2) {
    throw std::invalid_argument(
        "disparity test requires degree >= 2 (degree-1 links are a policy "
        "decision of the filter, not of the kernel)");
  }
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument("normalized weight must lie in [0, 1]");
  }
  return std::pow(1.0 - x, static_cast<double>(k - 1));
}

double binom_tail_at_least(std::int64_t n, std::int64_t k, double p) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("binomial tail requires 0 <= k <= n");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("success probability must lie in [0, 1]");
  }
  if (k == 0) return 1.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  auto log_term = [&](std::int64_t j) {
    const double jd = static_cast<double>(j);
    return log_choose(n, j) + jd * log_p + (static_cast<double>(n) - jd) * log_q;
  };

  const auto mode = static_cast<std::int64_t>(p * static_cast<double>(n + 1));
  KahanSum acc;
  if (k > mode) {
    // Short upper tail: sum its own terms, smallest first.
    for (std::int64_t j = n; j >= k; --j) acc.add(std::exp(log_term(j)));
    return clamp01(acc.value());
  }
  // Tail is the bulk: complement of the short lower sum, no cancellation.
  for (std::int64_t j = 0; j < k; ++j) acc.add(std::exp(log_term(j)));
  return clamp01(1.0 - acc.value());
}

double fwer_at_least_one(double p_single, std::int64_t n_tests) {
  if (p_single < 0.0 || p_single > 1.0) {
    throw std::invalid_argument("single-test probability must lie in [0, 1]");
  }
  if (n_tests < 1) throw std::invalid_argument("n_tests must be >= 1");
  if (p_single == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n_tests) * std::log1p(-p_single));
}

}  // namespace svnkit

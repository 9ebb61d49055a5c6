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

#include "svnkit/corrections.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace svnkit {

const char* correction_name(CorrectionMethod m) {
  switch (m) {
    case CorrectionMethod::none: return "none";
    case CorrectionMethod::bonferroni: return "bonferroni";
    case CorrectionMethod::fdr: return "fdr";
  }
  return "?";
}

CorrectionMethod correction_from_name(const std::string& name) {
  if (name == "none") return CorrectionMethod::none;
  if (name == "bonferroni") return CorrectionMethod::bonferroni;
  if (name == "fdr") return CorrectionMethod::fdr;
  throw std::invalid_argument("unknown correction '" + name + "'");
}

void TestBattery::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (n_tests < static_cast<std::int64_t>(records.size())) {
    throw std::invalid_argument("n_tests must be >= number of records");
  }
  if (n_tests < 1) throw std::invalid_argument("n_tests must be >= 1");
}

namespace {

bool rejects(double p, double threshold, bool strict) {
  return strict ? p < threshold : p <= threshold;
}

CorrectionResult threshold_rule(const TestBattery& battery, double threshold,
                                CorrectionMethod method, bool strict) {
  CorrectionResult res;
  res.method = method;
  res.threshold = threshold;
  for (std::size_t i = 0; i < battery.records.size(); ++i) {
    if (rejects(battery.records[i].p, threshold, strict)) res.rejected.push_back(i);
  }
  return res;
}

}  // namespace

CorrectionResult uncorrected(const TestBattery& battery, bool strict) {
  battery.validate();
  return threshold_rule(battery, battery.alpha, CorrectionMethod::none, strict);
}

CorrectionResult bonferroni(const TestBattery& battery, bool strict) {
  battery.validate();
  const double alpha_b = battery.alpha / static_cast<double>(battery.n_tests);
  return threshold_rule(battery, alpha_b, CorrectionMethod::bonferroni, strict);
}

CorrectionResult fdr(const TestBattery& battery, bool strict) {
  battery.validate();
  const std::size_t n = battery.records.size();
  const double theta_b = battery.alpha / static_cast<double>(battery.n_tests);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return battery.records[a].p < battery.records[b].p;  // ties keep index order
  });

  std::size_t t_max = 0;
  for (std::size_t rank = n; rank >= 1; --rank) {
    const double p = battery.records[order[rank - 1]].p;
    if (rejects(p, static_cast<double>(rank) * theta_b, strict)) {
      t_max = rank;
      break;
    }
  }

  CorrectionResult res;
  res.method = CorrectionMethod::fdr;
  if (t_max == 0) {
    res.threshold = 0.0;
    return res;
  }
  res.threshold = battery.records[order[t_max - 1]].p;  // p at rank t_max
  res.rejected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t_max));
  std::sort(res.rejected.begin(), res.rejected.end());
  return res;
}

CorrectionResult apply_correction(const TestBattery& battery,
                                  CorrectionMethod method, bool strict) {
  switch (method) {
    case CorrectionMethod::none: return uncorrected(battery, strict);
    case CorrectionMethod::bonferroni: return bonferroni(battery, strict);
    case CorrectionMethod::fdr: return fdr(battery, strict);
  }
  throw std::invalid_argument("unknown correction method");
}

}  // namespace svnkit

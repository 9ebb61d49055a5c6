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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svnkit/pvalues.hpp"

namespace svnkit {

enum class CorrectionMethod : std::uint8_t { none, bonferroni, fdr };

const char* correction_name(CorrectionMethod m);
CorrectionMethod correction_from_name(const std::string& name);

// A family of hypothesis tests. n_tests may exceed records.size() when
// untested hypotheses still count toward the family (they carry no p-value
// but inflate the per-test threshold's denominator).
struct TestBattery {
  std::vector<PValueRecord> records;
  std::int64_t n_tests = 0;
  double alpha = 0.05;

  void validate() const;  // throws std::invalid_argument
};

struct CorrectionResult {
  CorrectionMethod method = CorrectionMethod::none;
  double threshold = 0.0;              // per-test rejection threshold applied
  std::vector<std::size_t> rejected;   // record indices, ascending
};

// Rejection rules use strict inequality (p strictly below the threshold);
// set strict=false for parity with tools that use <=.
CorrectionResult bonferroni(const TestBattery& battery, bool strict = true);

// Rank procedure: sort p ascending, find the largest rank t with
// p_(t) < t * alpha / n_tests, reject ranks 1..t. Ties share ranks
// contiguously (stable sort by record index), and a tie group is always
// rejected or kept as a whole.
CorrectionResult fdr(const TestBattery& battery, bool strict = true);

// Uncorrected per-test threshold alpha.
CorrectionResult uncorrected(const TestBattery& battery, bool strict = true);

CorrectionResult apply_correction(const TestBattery& battery,
                                  CorrectionMethod method, bool strict = true);

}  // namespace svnkit

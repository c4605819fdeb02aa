//
// Copyright 2026 The numprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//


// Variant validity scoring and the unit filter.

#ifndef NUMPROBE_VALIDATE_H_
#define NUMPROBE_VALIDATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "numprobe/adapter.h"
#include "numprobe/augment.h"

namespace numprobe {

struct ValidityReport {
  std::string unit_id;
  std::vector<double> scores;  // one per variant, in [0, 1]
  bool kept = true;
  std::vector<std::string> reasons;
};

struct FilterOptions {
  double threshold = 0.5;
  int max_bad = 3;
  // Discard when more than a third of the unit's variants fall below the
  // threshold, instead of more than max_bad.
  bool proportional = false;
};

// Whether a unit with these scores survives the filter.
bool KeepUnit(const std::vector<double>& scores, const FilterOptions& options);

// Rule-based stand-in for an LLM judge. 0.0 when the text outside the target
// span changed, when the span no longer holds exactly one well-formed
// numeral (e.g. "February 31st", "9:4 AM"), or when its kind changed; 0.4 for
// an absolute percentage above 100; 1.0 otherwise. `reason` is set for any
// score below 1.
double BuiltinValidate(const EvaluationUnit& unit, size_t variant_index, std::string* reason);

class Validator {
 public:
  virtual ~Validator() = default;
  // One report per unit, in input order, with `kept` left unset (true).
  virtual std::vector<ValidityReport> Score(const std::vector<EvaluationUnit>& units) = 0;
};

class BuiltinValidator : public Validator {
 public:
  std::vector<ValidityReport> Score(const std::vector<EvaluationUnit>& units) override;
};

// Validator wire protocol:
//   request {"unit_id", "variant_index", "sentence"}
//   reply   {"unit_id", "variant_index", "valid": bool, "reason"?} or
//           {"unit_id", "variant_index", "score": number}
// Variants without a usable reply get the builtin score and a reason.
class ProcessValidator : public Validator {
 public:
  explicit ProcessValidator(AdapterOptions options) : adapter_(std::move(options)) {}
  std::vector<ValidityReport> Score(const std::vector<EvaluationUnit>& units) override;
  int failed_batches() const { return failed_batches_; }

 private:
  LineAdapter adapter_;
  int failed_batches_ = 0;
};

// Sets `kept` on each report.
void ApplyFilter(std::vector<ValidityReport>& reports, const FilterOptions& options);

// Units whose report says kept, with validity scores attached. NotFound
// when a unit has no report.
absl::StatusOr<std::vector<EvaluationUnit>> FilterUnits(const std::vector<EvaluationUnit>& units,
                                                        const std::vector<ValidityReport>& reports,
                                                        const FilterOptions& options);

// {unit_id, scores, kept, reasons} per line.
std::string SerializeReports(const std::vector<ValidityReport>& reports);
absl::StatusOr<std::vector<ValidityReport>> ParseReports(std::string_view content);

}  // namespace numprobe

#endif  // NUMPROBE_VALIDATE_H_

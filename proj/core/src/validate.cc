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


#include "numprobe/validate.h"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "fmt/format.h"
#include "io_util.h"
#include "json.hpp"
#include "text_util.h"

namespace numprobe {
namespace {

using Json = nlohmann::ordered_json;

std::string VariantKey(std::string_view unit_id, size_t index) {
  return fmt::format("{}\n{}", unit_id, index);
}

}  // namespace

bool KeepUnit(const std::vector<double>& scores, const FilterOptions& options) {
  const auto bad = std::count_if(scores.begin(), scores.end(),
                                 [&](double s) { return s < options.threshold; });
  if (options.proportional) return bad * 3 <= static_cast<long>(scores.size());
  return bad <= options.max_bad;
}

double BuiltinValidate(const EvaluationUnit& unit, size_t variant_index, std::string* reason) {
  auto fail = [&](double score, std::string why) {
    if (reason) *reason = std::move(why);
    return score;
  };
  const std::string& text = unit.variants[variant_index].text;
  const std::string_view base = unit.base_text;
  const Span span = unit.target.span;
  const std::string_view prefix = base.substr(0, span.start);
  const std::string_view suffix = base.substr(span.end);
  if (text.size() < prefix.size() + suffix.size() + 1 || !text.starts_with(prefix) ||
      !text.ends_with(suffix)) {
    return fail(0.0, "text outside the target changed");
  }
  const Span target{span.start, text.size() - suffix.size()};
  const std::vector<Candidate> candidates = ScanCandidates(text);
  const auto at = std::find_if(candidates.begin(), candidates.end(),
                               [&](const Candidate& c) { return c.span.end > target.start; });
  if (at == candidates.end() || at->span != target) {
    return fail(0.0, fmt::format("'{}' is not one numeral",
                                 std::string_view(text).substr(target.start, target.size())));
  }
  if (!at->status.ok()) return fail(0.0, Message(at->status));
  if (at->kind != unit.target.kind()) {
    return fail(0.0, fmt::format("numeral kind changed to {}", NumeralKindName(at->kind)));
  }
  if (unit.target.label && unit.target.label->subcategory == Subcategory::kAbsolute &&
      at->mention->value.Abs() > Decimal::FromInt(100)) {
    return fail(0.4, "absolute percentage above 100");
  }
  return 1.0;
}

std::vector<ValidityReport> BuiltinValidator::Score(const std::vector<EvaluationUnit>& units) {
  std::vector<ValidityReport> reports;
  reports.reserve(units.size());
  for (const EvaluationUnit& unit : units) {
    ValidityReport r;
    r.unit_id = unit.unit_id;
    for (size_t i = 0; i < unit.variants.size(); ++i) {
      std::string reason;
      r.scores.push_back(BuiltinValidate(unit, i, &reason));
      if (!reason.empty()) r.reasons.push_back(fmt::format("variant {}: {}", i, reason));
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<ValidityReport> ProcessValidator::Score(const std::vector<EvaluationUnit>& units) {
  std::vector<LineAdapter::Request> requests;
  for (const EvaluationUnit& unit : units) {
    for (size_t i = 0; i < unit.variants.size(); ++i) {
      Json o;
      o["unit_id"] = unit.unit_id;
      o["variant_index"] = i;
      o["sentence"] = unit.variants[i].text;
      requests.push_back({VariantKey(unit.unit_id, i), o.dump()});
    }
  }
  LineAdapter::Result result =
      adapter_.Exchange(requests, [](std::string_view line) -> std::optional<std::string> {
        Json o = Json::parse(line, nullptr, false);
        if (o.is_discarded() || !o.is_object() || !o.contains("unit_id") ||
            !o["unit_id"].is_string() || !o.contains("variant_index") ||
            !o["variant_index"].is_number_unsigned()) {
          return std::nullopt;
        }
        const bool has_valid = o.contains("valid") && o["valid"].is_boolean();
        const bool has_score = o.contains("score") && o["score"].is_number();
        if (!has_valid && !has_score) return std::nullopt;
        return VariantKey(o["unit_id"].get<std::string>(), o["variant_index"].get<size_t>());
      });
  failed_batches_ += result.failed_batches;
  std::vector<ValidityReport> reports;
  for (const EvaluationUnit& unit : units) {
    ValidityReport r;
    r.unit_id = unit.unit_id;
    for (size_t i = 0; i < unit.variants.size(); ++i) {
      auto it = result.replies.find(VariantKey(unit.unit_id, i));
      if (it == result.replies.end()) {
        std::string why;
        r.scores.push_back(BuiltinValidate(unit, i, &why));
        r.reasons.push_back(fmt::format("variant {}: no validator reply; builtin score used{}", i,
                                        why.empty() ? "" : " (" + why + ")"));
        continue;
      }
      const Json o = Json::parse(it->second);
      if (o.contains("score") && o["score"].is_number()) {
        r.scores.push_back(std::clamp(o["score"].get<double>(), 0.0, 1.0));
      } else {
        r.scores.push_back(o["valid"].get<bool>() ? 1.0 : 0.0);
      }
      if (o.contains("reason") && o["reason"].is_string() && r.scores.back() < 1.0) {
        r.reasons.push_back(fmt::format("variant {}: {}", i, o["reason"].get<std::string>()));
      }
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

void ApplyFilter(std::vector<ValidityReport>& reports, const FilterOptions& options) {
  for (ValidityReport& r : reports) r.kept = KeepUnit(r.scores, options);
}

absl::StatusOr<std::vector<EvaluationUnit>> FilterUnits(const std::vector<EvaluationUnit>& units,
                                                        const std::vector<ValidityReport>& reports,
                                                        const FilterOptions& options) {
  std::map<std::string_view, const ValidityReport*> by_id;
  for (const ValidityReport& r : reports) by_id[r.unit_id] = &r;
  std::vector<EvaluationUnit> kept;
  for (const EvaluationUnit& unit : units) {
    auto it = by_id.find(unit.unit_id);
    if (it == by_id.end()) {
      return absl::NotFoundError(fmt::format("no validity report for unit '{}'", unit.unit_id));
    }
    const ValidityReport& r = *it->second;
    if (r.scores.size() != unit.variants.size()) {
      return absl::InvalidArgumentError(
          fmt::format("report for '{}' has {} scores for {} variants", unit.unit_id,
                      r.scores.size(), unit.variants.size()));
    }
    if (!KeepUnit(r.scores, options)) continue;
    EvaluationUnit u = unit;
    for (size_t i = 0; i < u.variants.size(); ++i) u.variants[i].validity = r.scores[i];
    kept.push_back(std::move(u));
  }
  return kept;
}

std::string SerializeReports(const std::vector<ValidityReport>& reports) {
  std::string out;
  for (const ValidityReport& r : reports) {
    Json o;
    o["unit_id"] = r.unit_id;
    o["scores"] = r.scores;
    o["kept"] = r.kept;
    o["reasons"] = r.reasons;
    out += o.dump();
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<std::vector<ValidityReport>> ParseReports(std::string_view content) {
  std::vector<ValidityReport> reports;
  std::set<std::string> seen;
  size_t line_no = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_no;
    if (Strip(line).empty()) continue;
    Json o = Json::parse(line, nullptr, false);
    auto error = [&](std::string_view what) {
      return absl::InvalidArgumentError(fmt::format("line {}: {}", line_no, what));
    };
    if (o.is_discarded() || !o.is_object()) return error("malformed JSON");
    if (!o.contains("unit_id") || !o["unit_id"].is_string() || !o.contains("scores") ||
        !o["scores"].is_array()) {
      return error("report needs unit_id and scores");
    }
    ValidityReport r;
    r.unit_id = o["unit_id"].get<std::string>();
    if (!seen.insert(r.unit_id).second) return error("duplicate unit_id");
    for (const Json& s : o["scores"]) {
      if (!s.is_number()) return error("scores must be numbers");
      const double v = s.get<double>();
      if (v < 0.0 || v > 1.0) return error("score outside [0, 1]");
      r.scores.push_back(v);
    }
    r.kept = o.value("kept", true);
    if (o.contains("reasons") && o["reasons"].is_array()) {
      for (const Json& why : o["reasons"]) {
        if (why.is_string()) r.reasons.push_back(why.get<std::string>());
      }
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace numprobe

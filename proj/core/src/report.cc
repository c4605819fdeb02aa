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


#include "numprobe/report.h"

#include <utility>

#include "fmt/format.h"
#include "json.hpp"
#include "text_util.h"

namespace numprobe {
namespace {

using Json = nlohmann::ordered_json;

Json OptionalNumber(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json AccuracyJson(const AccuracyTally& t) {
  Json o;
  o["accuracy"] = OptionalNumber(t.accuracy());
  o["eligible"] = t.eligible;
  o["passed"] = t.passed;
  o["ineligible"] = t.ineligible;
  o["scorer_errors"] = t.scorer_errors;
  o["tie_broken"] = t.tie_broken;
  return o;
}

Json ListwiseJson(const ListwiseTally& t) {
  Json o;
  o["mean_tau_b"] = OptionalNumber(t.mean());
  o["scored"] = t.scored;
  o["tau_sum"] = t.tau_sum;
  o["undefined"] = t.undefined;
  o["ineligible"] = t.ineligible;
  o["scorer_errors"] = t.scorer_errors;
  return o;
}

Json StratumJson(const StratumResult& r) {
  Json o;
  o["triplet"] = AccuracyJson(r.triplet);
  o["listwise"] = ListwiseJson(r.listwise);
  o["cross_pair"] = AccuracyJson(r.cross_pair);
  return o;
}

int GetInt(const Json& o, const char* key) {
  return o.contains(key) && o[key].is_number_integer() ? o[key].get<int>() : 0;
}

AccuracyTally AccuracyFromJson(const Json& o) {
  AccuracyTally t;
  t.eligible = GetInt(o, "eligible");
  t.passed = GetInt(o, "passed");
  t.ineligible = GetInt(o, "ineligible");
  t.scorer_errors = GetInt(o, "scorer_errors");
  t.tie_broken = GetInt(o, "tie_broken");
  return t;
}

ListwiseTally ListwiseFromJson(const Json& o) {
  ListwiseTally t;
  t.scored = GetInt(o, "scored");
  t.tau_sum = o.contains("tau_sum") && o["tau_sum"].is_number() ? o["tau_sum"].get<double>() : 0;
  t.undefined = GetInt(o, "undefined");
  t.ineligible = GetInt(o, "ineligible");
  t.scorer_errors = GetInt(o, "scorer_errors");
  return t;
}

absl::StatusOr<StratumResult> StratumFromJson(const Json& o) {
  for (const char* key : {"triplet", "listwise", "cross_pair"}) {
    if (!o.contains(key) || !o[key].is_object()) {
      return absl::InvalidArgumentError(fmt::format("stratum lacks '{}'", key));
    }
  }
  return StratumResult{AccuracyFromJson(o["triplet"]), ListwiseFromJson(o["listwise"]),
                       AccuracyFromJson(o["cross_pair"])};
}

std::string Cell(const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : "n/a"; }

const StratumResult& FamilyResult(const EvaluationResult& r, Family family) {
  static const StratumResult kEmpty;
  auto it = r.by_family.find(family);
  return it == r.by_family.end() ? kEmpty : it->second;
}

}  // namespace

std::string SerializeMetrics(const std::vector<EvaluationResult>& results) {
  Json arr = Json::array();
  for (const EvaluationResult& r : results) {
    Json o;
    o["scorer"] = r.scorer;
    o["distance_mode"] = std::string(DistanceModeName(r.mode));
    o["units"] = r.units;
    o["cross_pairs_per_family"] = r.cross_pairs_requested;
    Json families;
    for (const auto& [family, stratum] : r.by_family) {
      families[std::string(FamilyName(family))] = StratumJson(stratum);
    }
    o["families"] = std::move(families);
    Json strata = Json::array();
    for (const auto& [key, stratum] : r.by_stratum) {
      Json s;
      s["family"] = std::string(FamilyName(key.first));
      s["category"] = std::string(CategoryName(key.second));
      s.update(StratumJson(stratum));
      strata.push_back(std::move(s));
    }
    o["strata"] = std::move(strata);
    arr.push_back(std::move(o));
  }
  Json root;
  root["results"] = std::move(arr);
  return root.dump(2) + "\n";
}

absl::StatusOr<std::vector<EvaluationResult>> ParseMetrics(std::string_view content) {
  Json root = Json::parse(content, nullptr, false);
  if (root.is_discarded() || !root.is_object() || !root.contains("results") ||
      !root["results"].is_array()) {
    return absl::InvalidArgumentError("metrics file needs a 'results' array");
  }
  std::vector<EvaluationResult> results;
  for (const Json& o : root["results"]) {
    if (!o.is_object() || !o.contains("scorer") || !o["scorer"].is_string()) {
      return absl::InvalidArgumentError("result needs a 'scorer'");
    }
    EvaluationResult r;
    r.scorer = o["scorer"].get<std::string>();
    if (o.contains("distance_mode") && o["distance_mode"].is_string()) {
      absl::StatusOr<DistanceMode> mode = ParseDistanceMode(o["distance_mode"].get<std::string>());
      if (!mode.ok()) return mode.status();
      r.mode = *mode;
    }
    r.units = GetInt(o, "units");
    r.cross_pairs_requested = GetInt(o, "cross_pairs_per_family");
    if (o.contains("families") && o["families"].is_object()) {
      for (const auto& [name, value] : o["families"].items()) {
        absl::StatusOr<Family> family = ParseFamily(name);
        if (!family.ok()) return family.status();
        absl::StatusOr<StratumResult> stratum = StratumFromJson(value);
        if (!stratum.ok()) return stratum.status();
        r.by_family[*family] = *stratum;
      }
    }
    if (o.contains("strata") && o["strata"].is_array()) {
      for (const Json& s : o["strata"]) {
        if (!s.contains("family") || !s["family"].is_string() || !s.contains("category") ||
            !s["category"].is_string()) {
          return absl::InvalidArgumentError("stratum needs family and category");
        }
        absl::StatusOr<Family> family = ParseFamily(s["family"].get<std::string>());
        if (!family.ok()) return family.status();
        absl::StatusOr<Category> category = ParseCategory(s["category"].get<std::string>());
        if (!category.ok()) return category.status();
        absl::StatusOr<StratumResult> stratum = StratumFromJson(s);
        if (!stratum.ok()) return stratum.status();
        r.by_stratum[{*family, *category}] = *stratum;
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string RenderReportJson(const std::vector<EvaluationResult>& results) {
  Json rows = Json::array();
  for (const EvaluationResult& r : results) {
    Json row;
    row["scorer"] = r.scorer;
    row["distance_mode"] = std::string(DistanceModeName(r.mode));
    const auto by_family = [&](auto metric) {
      Json cell;
      for (Family family : {Family::kRandom, Family::kRuleBased}) {
        cell[std::string(FamilyName(family))] = OptionalNumber(metric(FamilyResult(r, family)));
      }
      return cell;
    };
    row["triplet"] = by_family([](const StratumResult& s) { return s.triplet.accuracy(); });
    row["listwise"] = by_family([](const StratumResult& s) { return s.listwise.mean(); });
    row["cross_pair"] = by_family([](const StratumResult& s) { return s.cross_pair.accuracy(); });
    Json strata = Json::array();
    for (const auto& [k, s] : r.by_stratum) {
      Json o;
      o["family"] = std::string(FamilyName(k.first));
      o["category"] = std::string(CategoryName(k.second));
      o["triplet"] = OptionalNumber(s.triplet.accuracy());
      o["listwise"] = OptionalNumber(s.listwise.mean());
      o["cross_pair"] = OptionalNumber(s.cross_pair.accuracy());
      strata.push_back(std::move(o));
    }
    row["strata"] = std::move(strata);
    rows.push_back(std::move(row));
  }
  Json root;
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

namespace {

std::string TrimLineEnds(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    size_t last = end;
    while (last > start && text[last - 1] == ' ') --last;
    out.append(text, start, last - start);
    if (end < text.size()) out.push_back('\n');
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string RenderReportText(const std::vector<EvaluationResult>& results) {
  size_t name_width = 7;
  for (const EvaluationResult& r : results) name_width = std::max(name_width, r.scorer.size());
  const std::string pad(name_width, ' ');
  std::string out;
  out += fmt::format("{}  {:<21}  {:<21}  {:<21}\n", pad, "Triplet (Accuracy)",
                     "Listwise (tau_b)", "Cross-Pair (Accuracy)");
  out += fmt::format("{:<{}}  {:<10} {:<10}  {:<10} {:<10}  {:<10} {:<10}\n", "Scorer", name_width,
                     "Random", "Rule-based", "Random", "Rule-based", "Random", "Rule-based");
  for (const EvaluationResult& r : results) {
    const StratumResult& rnd = FamilyResult(r, Family::kRandom);
    const StratumResult& rule = FamilyResult(r, Family::kRuleBased);
    out += fmt::format("{:<{}}  {:<10} {:<10}  {:<10} {:<10}  {:<10} {:<10}\n", r.scorer,
                       name_width, Cell(rnd.triplet.accuracy()), Cell(rule.triplet.accuracy()),
                       Cell(rnd.listwise.mean()), Cell(rule.listwise.mean()),
                       Cell(rnd.cross_pair.accuracy()), Cell(rule.cross_pair.accuracy()));
  }
  for (const EvaluationResult& r : results) {
    out += fmt::format("\nPer category: {} (distance: {}, units: {})\n", r.scorer,
                       DistanceModeName(r.mode), r.units);
    out += fmt::format("{:<11} {:<14} {:>8} {:>6}  {:>8} {:>6}  {:>10} {:>6}\n", "Family",
                       "Category", "Triplet", "n", "Listwise", "n", "Cross-Pair", "n");
    for (const auto& [key, s] : r.by_stratum) {
      out += fmt::format("{:<11} {:<14} {:>8} {:>6}  {:>8} {:>6}  {:>10} {:>6}\n",
                         FamilyName(key.first), CategoryName(key.second),
                         Cell(s.triplet.accuracy()), s.triplet.eligible, Cell(s.listwise.mean()),
                         s.listwise.scored, Cell(s.cross_pair.accuracy()), s.cross_pair.eligible);
    }
    for (Family family : {Family::kRandom, Family::kRuleBased}) {
      const StratumResult& s = FamilyResult(r, family);
      out += fmt::format(
          "{}: triplet excluded {} (ineligible) + {} (scorer), tie-broken {}; listwise "
          "undefined {}, ineligible {}, scorer {}; cross-pair scorer errors {}\n",
          FamilyName(family), s.triplet.ineligible, s.triplet.scorer_errors, s.triplet.tie_broken,
          s.listwise.undefined, s.listwise.ineligible, s.listwise.scorer_errors,
          s.cross_pair.scorer_errors);
    }
  }
  return TrimLineEnds(out);
}

}  // namespace numprobe

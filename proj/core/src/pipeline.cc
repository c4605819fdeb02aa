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


#include "numprobe/pipeline.h"

#include <filesystem>
#include <memory>
#include <utility>

#include "fmt/format.h"
#include "io_util.h"
#include "json.hpp"
#include "numprobe/corpus.h"
#include "numprobe/metric.h"
#include "numprobe/protocol.h"
#include "numprobe/report.h"
#include "text_util.h"

namespace numprobe {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string OutPath(const RunConfig& config, std::string_view name) {
  return (fs::path(config.out_dir) / name).string();
}

std::string InputPath(const RunConfig& config, std::string_view default_name) {
  return config.input.empty() ? OutPath(config, default_name) : config.input;
}

absl::Status EnsureOutDir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        fmt::format("cannot create output directory '{}': {}", config.out_dir, ec.message()));
  }
  return absl::OkStatus();
}

// Reads a stage input, prefixing schema errors with the file name.
template <typename T, typename Parser>
absl::StatusOr<T> ReadArtifact(const std::string& path, Parser parse) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  absl::StatusOr<T> parsed = parse(*content);
  if (!parsed.ok()) {
    return absl::Status(parsed.status().code(),
                        fmt::format("{}: {}", path, Message(parsed.status())));
  }
  return parsed;
}

absl::StatusOr<std::string> WriteSummary(const RunConfig& config, std::string_view stage,
                                         Json summary) {
  Json root;
  root["stage"] = std::string(stage);
  root.update(summary);
  const std::string text = root.dump(2) + "\n";
  if (absl::Status s = WriteFile(OutPath(config, fmt::format("{}_summary.json", stage)), text);
      !s.ok()) {
    return s;
  }
  return text;
}

Json CountBy(const std::vector<EvaluationUnit>& units) {
  Json by;
  for (Family family : {Family::kRandom, Family::kRuleBased}) {
    int n = 0;
    for (const EvaluationUnit& u : units) n += u.spec.family == family;
    by[std::string(FamilyName(family))] = n;
  }
  for (Rule rule : kAllRules) {
    int n = 0;
    for (const EvaluationUnit& u : units) n += u.spec.rule == rule;
    by[std::string(RuleName(rule))] = n;
  }
  return by;
}

std::string SerializeCrossPairs(const std::vector<EvaluationUnit>& units,
                                const std::vector<CrossPair>& pairs) {
  std::string out;
  for (const CrossPair& p : pairs) {
    Json o;
    o["family"] = std::string(FamilyName(units[p.left.unit].spec.family));
    o["left"] = {{"unit_id", units[p.left.unit].unit_id}, {"variant_index", p.left.variant}};
    o["right"] = {{"unit_id", units[p.right.unit].unit_id}, {"variant_index", p.right.variant}};
    o["gold"] = p.gold == Gold::kLeftCloser ? "left_closer" : "right_closer";
    out += o.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kNotFound:
      return 2;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kAlreadyExists:
      return 3;
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kDeadlineExceeded:
      return 4;
    default:
      return 1;
  }
}

absl::StatusOr<std::string> RunExtract(const RunConfig& config) {
  if (config.corpus_path.empty()) return absl::NotFoundError("no corpus given (--corpus)");
  const CorpusFormat format = fs::path(config.corpus_path).extension() == ".csv"
                                  ? CorpusFormat::kCsv
                                  : CorpusFormat::kJsonl;
  absl::StatusOr<Corpus> corpus = LoadCorpus(config.corpus_path, format);
  if (!corpus.ok()) {
    return absl::Status(corpus.status().code(),
                        fmt::format("{}: {}", config.corpus_path, Message(corpus.status())));
  }
  if (absl::Status s = EnsureOutDir(config); !s.ok()) return s;
  Json summary;
  if (config.annotator) {
    ProcessAnnotator annotator(*config.annotator);
    const AnnotationStats stats = AnnotateLabels(*corpus, annotator);
    summary["annotator"] = {{"requested", stats.requested},
                            {"labeled", stats.labeled},
                            {"fallback", stats.fallback},
                            {"failed", stats.failed}};
  }
  int mentions = 0, labeled = 0, mentionless = 0, warnings = 0;
  for (const BaseSentence& s : *corpus) {
    mentions += static_cast<int>(s.mentions.size());
    mentionless += s.mentionless();
    warnings += static_cast<int>(s.warnings.size());
    for (const NumeralMention& m : s.mentions) labeled += m.label.has_value();
  }
  if (absl::Status s = WriteFile(OutPath(config, kCorpusArtifact), SerializeExtracted(*corpus));
      !s.ok()) {
    return s;
  }
  summary["sentences"] = corpus->size();
  summary["mentionless"] = mentionless;
  summary["mentions"] = mentions;
  summary["labeled_mentions"] = labeled;
  summary["unlabeled_mentions"] = mentions - labeled;
  summary["warnings"] = warnings;
  return WriteSummary(config, "extract", std::move(summary));
}

absl::StatusOr<std::string> RunAugment(const RunConfig& config) {
  absl::StatusOr<Corpus> corpus =
      ReadArtifact<Corpus>(InputPath(config, kCorpusArtifact), ParseExtracted);
  if (!corpus.ok()) return corpus.status();
  if (absl::Status s = EnsureOutDir(config); !s.ok()) return s;
  MakeUnitsOptions options;
  options.families = config.families;
  options.rules = config.rules;
  options.seed = config.seed;
  options.workers = config.workers;
  const std::vector<EvaluationUnit> units = MakeUnits(*corpus, options);
  if (absl::Status s = WriteFile(OutPath(config, kUnitsArtifact), SerializeUnits(units)); !s.ok()) {
    return s;
  }
  int variants = 0, short_units = 0;
  for (const EvaluationUnit& u : units) {
    variants += static_cast<int>(u.variants.size());
    short_units += u.variants.size() < static_cast<size_t>(u.spec.k);
  }
  Json summary;
  summary["seed"] = config.seed;
  summary["units"] = units.size();
  summary["variants"] = variants;
  summary["units_below_k"] = short_units;
  summary["by_spec"] = CountBy(units);
  return WriteSummary(config, "augment", std::move(summary));
}

absl::StatusOr<std::string> RunValidate(const RunConfig& config) {
  absl::StatusOr<std::vector<EvaluationUnit>> units =
      ReadArtifact<std::vector<EvaluationUnit>>(InputPath(config, kUnitsArtifact), ParseUnits);
  if (!units.ok()) return units.status();
  if (absl::Status s = EnsureOutDir(config); !s.ok()) return s;
  std::unique_ptr<Validator> validator;
  ProcessValidator* external = nullptr;
  if (config.validator) {
    auto p = std::make_unique<ProcessValidator>(*config.validator);
    external = p.get();
    validator = std::move(p);
  } else {
    validator = std::make_unique<BuiltinValidator>();
  }
  std::vector<ValidityReport> reports = validator->Score(*units);
  ApplyFilter(reports, config.filter);
  absl::StatusOr<std::vector<EvaluationUnit>> kept = FilterUnits(*units, reports, config.filter);
  if (!kept.ok()) return kept.status();
  if (absl::Status s = WriteFile(OutPath(config, kValidityArtifact), SerializeReports(reports));
      !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteFile(OutPath(config, kKeptUnitsArtifact), SerializeUnits(*kept));
      !s.ok()) {
    return s;
  }
  Json summary;
  summary["validator"] = config.validator ? "external" : "builtin";
  summary["filter"] = {{"threshold", config.filter.threshold},
                       {"max_bad", config.filter.max_bad},
                       {"proportional", config.filter.proportional}};
  summary["units"] = units->size();
  summary["kept"] = kept->size();
  summary["discarded"] = units->size() - kept->size();
  summary["retention"] =
      units->empty() ? Json(nullptr) : Json(static_cast<double>(kept->size()) / units->size());
  summary["kept_by_spec"] = CountBy(*kept);
  if (external) summary["validator_failed_batches"] = external->failed_batches();
  return WriteSummary(config, "validate", std::move(summary));
}

absl::StatusOr<std::string> RunEvaluate(const RunConfig& config) {
  absl::StatusOr<std::vector<EvaluationUnit>> units = ReadArtifact<std::vector<EvaluationUnit>>(
      InputPath(config, kKeptUnitsArtifact), ParseUnits);
  if (!units.ok()) return units.status();
  if (absl::Status s = EnsureOutDir(config); !s.ok()) return s;
  AssignDistances(*units, config.distance_mode);
  Json summary;
  CrossPairOptions pair_options;
  pair_options.pairs_per_family = config.cross_pairs;
  pair_options.seed = config.seed;
  std::vector<CrossPair> pairs;
  if (config.cross_pairs > 0) {
    absl::StatusOr<std::vector<CrossPair>> sampled = SampleCrossPairs(*units, pair_options);
    if (sampled.ok()) {
      pairs = std::move(*sampled);
    } else {
      summary["cross_pair_warning"] = Message(sampled.status());
    }
  }
  if (absl::Status s =
          WriteFile(OutPath(config, kCrossPairsArtifact), SerializeCrossPairs(*units, pairs));
      !s.ok()) {
    return s;
  }
  std::vector<std::unique_ptr<Scorer>> scorers;
  for (const std::string& name : config.scorers) {
    absl::StatusOr<std::unique_ptr<Scorer>> scorer =
        MakeBuiltinScorer(name, config.distance_mode, config.seed);
    if (!scorer.ok()) return scorer.status();
    scorers.push_back(std::move(*scorer));
  }
  ProcessScorer* external = nullptr;
  if (config.scorer_adapter) {
    auto p = std::make_unique<ProcessScorer>(config.scorer_adapter_name, *config.scorer_adapter);
    external = p.get();
    scorers.push_back(std::move(p));
  }
  std::vector<EvaluationResult> results;
  for (const std::unique_ptr<Scorer>& scorer : scorers) {
    EvaluationResult r = Evaluate(*units, pairs, *scorer, config.distance_mode);
    r.cross_pairs_requested = static_cast<int>(config.cross_pairs);
    results.push_back(std::move(r));
  }
  if (external) {
    const EvaluationResult& r = results.back();
    int scored = 0;
    for (const auto& [family, s] : r.by_family) scored += s.triplet.eligible + s.listwise.scored;
    if (external->failed_batches() > 0 && scored == 0 && !units->empty()) {
      return absl::UnavailableError(
          fmt::format("scorer adapter '{}' produced no scores", config.scorer_adapter_name));
    }
    summary["scorer_failed_batches"] = external->failed_batches();
  }
  if (absl::Status s = WriteFile(OutPath(config, kMetricsArtifact), SerializeMetrics(results));
      !s.ok()) {
    return s;
  }
  summary["units"] = units->size();
  summary["cross_pairs"] = pairs.size();
  summary["distance_mode"] = std::string(DistanceModeName(config.distance_mode));
  Json names = Json::array();
  for (const std::unique_ptr<Scorer>& s : scorers) names.push_back(s->name());
  summary["scorers"] = std::move(names);
  return WriteSummary(config, "evaluate", std::move(summary));
}

absl::StatusOr<std::string> RunReport(const RunConfig& config) {
  absl::StatusOr<std::vector<EvaluationResult>> results =
      ReadArtifact<std::vector<EvaluationResult>>(InputPath(config, kMetricsArtifact),
                                                  ParseMetrics);
  if (!results.ok()) return results.status();
  if (absl::Status s = EnsureOutDir(config); !s.ok()) return s;
  const std::string text = RenderReportText(*results);
  if (absl::Status s = WriteFile(OutPath(config, kReportJsonArtifact), RenderReportJson(*results));
      !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteFile(OutPath(config, kReportTextArtifact), text); !s.ok()) return s;
  return text;
}

absl::StatusOr<std::string> RunAll(const RunConfig& config) {
  RunConfig stage = config;
  stage.input.clear();
  for (auto run : {RunExtract, RunAugment, RunValidate, RunEvaluate}) {
    absl::StatusOr<std::string> summary = run(stage);
    if (!summary.ok()) return summary.status();
  }
  return RunReport(stage);
}

}  // namespace numprobe

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


// numprobe: build numeric perturbation datasets and test whether a
// similarity metric ranks them by numeric distance.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "numprobe/pipeline.h"
#include "numprobe/prompts.h"

namespace {

using numprobe::AdapterOptions;
using numprobe::RunConfig;

struct AdapterFlags {
  std::string transport = "streams";
  size_t batch_size = 64;
  int timeout_ms = 30000;
  int retries = 1;

  AdapterOptions Make(const std::string& command) const {
    AdapterOptions o;
    o.command = command;
    o.transport = transport == "files" ? numprobe::Transport::kFiles : numprobe::Transport::kStreams;
    o.batch_size = batch_size;
    o.timeout = std::chrono::milliseconds(timeout_ms);
    o.retries = retries;
    return o;
  }
};

struct Flags {
  RunConfig config;
  AdapterFlags adapter;
  std::string families;
  std::string rules;
  std::string validator = "builtin";
  std::string validator_cmd;
  std::string annotator_cmd;
  std::string scorer_cmd;
  std::vector<std::string> scorers;
  std::string distance_mode = "surface";
};

void AddCommon(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out", f.config.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--in", f.config.input, "Input artifact (default: previous stage's file in --out)");
  cmd->add_option("--seed", f.config.seed, "Random seed")->capture_default_str();
  cmd->add_option("--workers", f.config.workers, "Worker threads for generation")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--adapter-transport", f.adapter.transport, "streams or files")
      ->capture_default_str()
      ->check(CLI::IsMember({"streams", "files"}));
  cmd->add_option("--adapter-batch", f.adapter.batch_size, "Requests per adapter batch")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--adapter-timeout-ms", f.adapter.timeout_ms, "Per-batch adapter timeout")
      ->capture_default_str();
  cmd->add_option("--adapter-retries", f.adapter.retries, "Extra attempts per failed batch")
      ->capture_default_str();
}

void AddExtract(CLI::App* cmd, Flags& f) {
  cmd->add_option("--corpus", f.config.corpus_path, "Corpus file (.jsonl or .csv)");
  cmd->add_option("--annotator-cmd", f.annotator_cmd,
                  "Command speaking the annotator protocol, for unlabeled numerals");
}

void AddAugment(CLI::App* cmd, Flags& f) {
  cmd->add_option("--families", f.families, "Comma list: random,rule_based (default both)");
  cmd->add_option("--rules", f.rules, "Comma list of rule names (default all)");
}

void AddValidate(CLI::App* cmd, Flags& f) {
  cmd->add_option("--validator", f.validator, "builtin or external")
      ->capture_default_str()
      ->check(CLI::IsMember({"builtin", "external"}));
  cmd->add_option("--validator-cmd", f.validator_cmd, "Command speaking the validator protocol");
  cmd->add_option("--threshold", f.config.filter.threshold, "Validity threshold")
      ->capture_default_str();
  cmd->add_option("--max-bad", f.config.filter.max_bad,
                  "Discard units with more low-scoring variants than this")
      ->capture_default_str();
  cmd->add_flag("--proportional", f.config.filter.proportional,
                "Discard when more than a third of a unit's variants score low");
}

void AddEvaluate(CLI::App* cmd, Flags& f) {
  cmd->add_option("--scorer", f.scorers,
                  "Builtin scorer(s): oracle, anti-oracle, random, constant, lexical, "
                  "numeric-aware (default oracle unless --scorer-cmd is set)");
  cmd->add_option("--scorer-cmd", f.scorer_cmd, "Command speaking the scorer protocol");
  cmd->add_option("--scorer-name", f.config.scorer_adapter_name, "Report name for --scorer-cmd")
      ->capture_default_str();
  cmd->add_option("--cross-pairs", f.config.cross_pairs, "Cross pairs per augmentation family")
      ->capture_default_str();
  cmd->add_option("--distance-mode", f.distance_mode, "surface or unit_normalized")
      ->capture_default_str()
      ->check(CLI::IsMember({"surface", "unit_normalized"}));
}

absl::Status Finalize(Flags& f) {
  RunConfig& c = f.config;
  if (!f.families.empty()) {
    c.families.clear();
    for (const std::string& name : CLI::detail::split(f.families, ',')) {
      absl::StatusOr<numprobe::Family> family = numprobe::ParseFamily(name);
      if (!family.ok()) return family.status();
      c.families.insert(*family);
    }
  }
  if (!f.rules.empty()) {
    c.rules.clear();
    for (const std::string& name : CLI::detail::split(f.rules, ',')) {
      absl::StatusOr<numprobe::Rule> rule = numprobe::ParseRule(name);
      if (!rule.ok()) return rule.status();
      c.rules.insert(*rule);
    }
  }
  if (f.validator == "external") {
    if (f.validator_cmd.empty()) {
      return absl::InvalidArgumentError("--validator external needs --validator-cmd");
    }
    c.validator = f.adapter.Make(f.validator_cmd);
  }
  if (!f.annotator_cmd.empty()) c.annotator = f.adapter.Make(f.annotator_cmd);
  if (!f.scorer_cmd.empty()) c.scorer_adapter = f.adapter.Make(f.scorer_cmd);
  if (!f.scorers.empty()) {
    c.scorers = f.scorers;
  } else if (!f.scorer_cmd.empty()) {
    c.scorers.clear();
  }
  absl::StatusOr<numprobe::DistanceMode> mode = numprobe::ParseDistanceMode(f.distance_mode);
  if (!mode.ok()) return mode.status();
  c.distance_mode = *mode;
  return absl::OkStatus();
}

int Report(const absl::StatusOr<std::string>& result) {
  if (!result.ok()) {
    std::cerr << "numprobe: " << result.status().message() << "\n";
    return numprobe::ExitCodeFor(result.status());
  }
  std::cout << *result;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numeric perturbation probes for text-similarity metrics"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* extract = app.add_subcommand("extract", "Extract and label numerals from a corpus");
  CLI::App* augment = app.add_subcommand("augment", "Generate evaluation units and variants");
  CLI::App* validate = app.add_subcommand("validate", "Score variant validity and filter units");
  CLI::App* evaluate = app.add_subcommand("evaluate", "Run the three protocols with scorers");
  CLI::App* report = app.add_subcommand("report", "Render metrics as JSON and a text table");
  CLI::App* run = app.add_subcommand("run", "Run every stage in order");
  CLI::App* prompt = app.add_subcommand("prompt", "Print an adapter prompt template");

  for (CLI::App* cmd : {extract, augment, validate, evaluate, report, run}) AddCommon(cmd, f);
  for (CLI::App* cmd : {extract, run}) AddExtract(cmd, f);
  for (CLI::App* cmd : {augment, run}) AddAugment(cmd, f);
  for (CLI::App* cmd : {validate, run}) AddValidate(cmd, f);
  for (CLI::App* cmd : {evaluate, run}) AddEvaluate(cmd, f);

  std::string prompt_name;
  std::vector<std::string> prompt_sentences;
  prompt->add_option("name", prompt_name, "validation or identification")
      ->required()
      ->check(CLI::IsMember({"validation", "identification"}));
  prompt->add_option("--sentence", prompt_sentences, "Fill the template with sentence(s)");

  CLI11_PARSE(app, argc, argv);

  if (prompt->parsed()) {
    if (prompt_name == "validation") {
      std::cout << (prompt_sentences.empty()
                        ? std::string(numprobe::ValidationPromptTemplate())
                        : numprobe::ValidationPrompt(prompt_sentences.front()));
    } else {
      std::cout << numprobe::NumberIdentificationPrompt(prompt_sentences);
    }
    return 0;
  }

  if (absl::Status s = Finalize(f); !s.ok()) {
    std::cerr << "numprobe: " << s.message() << "\n";
    return numprobe::ExitCodeFor(s);
  }
  if (extract->parsed()) return Report(numprobe::RunExtract(f.config));
  if (augment->parsed()) return Report(numprobe::RunAugment(f.config));
  if (validate->parsed()) return Report(numprobe::RunValidate(f.config));
  if (evaluate->parsed()) return Report(numprobe::RunEvaluate(f.config));
  if (report->parsed()) return Report(numprobe::RunReport(f.config));
  return Report(numprobe::RunAll(f.config));
}

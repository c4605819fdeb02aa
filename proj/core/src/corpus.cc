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

#include "numprobe/corpus.h"

#include <set>
#include <utility>

#include "fmt/format.h"
#include "io_util.h"
#include "json.hpp"
#include "text_util.h"

namespace numprobe {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::pair<SourceKind, std::string_view> kSources[] = {
    {SourceKind::kSocialMedia, "social_media"},
    {SourceKind::kNews, "news"},
    {SourceKind::kFiling, "filing"},
    {SourceKind::kOther, "other"},
};

std::string DigitsOnly(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c >= '0' && c <= '9') out.push_back(c);
  }
  return out;
}

// Numeric core without sign or separators: "-1,000.50" -> "1000.50".
std::string CoreKey(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    if ((c >= '0' && c <= '9') || c == '.') out.push_back(c);
  }
  return out;
}

bool TargetMatches(const NumeralMention& m, std::string_view target) {
  const std::string want = CoreKey(target);
  if (want.empty()) return false;
  if (m.kind() == NumeralKind::kDate || m.kind() == NumeralKind::kTime) {
    // Annotators name one digit group of a date ("2024", "28").
    std::string group;
    for (size_t i = 0; i <= m.surface.size(); ++i) {
      const char c = i < m.surface.size() ? m.surface[i] : ' ';
      if (c >= '0' && c <= '9') {
        group.push_back(c);
      } else if (!group.empty()) {
        if (group == want) return true;
        group.clear();
      }
    }
    return DigitsOnly(m.surface) == DigitsOnly(target);
  }
  return CoreKey(m.raw) == want;
}

absl::StatusOr<std::vector<TargetLabel>> ParseLabels(const Json& labels) {
  if (!labels.is_array()) return absl::InvalidArgumentError("labels must be an array");
  std::vector<TargetLabel> out;
  for (const Json& l : labels) {
    if (!l.is_object() || !l.contains("target") || !l.contains("category") ||
        !l.contains("subcategory") || !l["target"].is_string() ||
        !l["category"].is_string() || !l["subcategory"].is_string()) {
      return absl::InvalidArgumentError("label needs string target, category, subcategory");
    }
    absl::StatusOr<FinNumLabel> label = ParseLabel(l["category"].get<std::string>(),
                                                   l["subcategory"].get<std::string>());
    if (!label.ok()) return label.status();
    out.push_back({l["target"].get<std::string>(), *label});
  }
  return out;
}

Json LabelsToJson(const std::vector<TargetLabel>& labels) {
  Json arr = Json::array();
  for (const TargetLabel& l : labels) {
    Json o;
    o["target"] = l.target;
    o["category"] = std::string(CategoryName(l.label.category));
    o["subcategory"] = std::string(SubcategoryName(l.label.subcategory));
    arr.push_back(std::move(o));
  }
  return arr;
}

Json RecordToJson(const BaseSentence& s) {
  Json o;
  o["id"] = s.id;
  o["text"] = s.text;
  if (s.source) o["source"] = std::string(SourceKindName(*s.source));
  if (s.input_labels) o["labels"] = LabelsToJson(*s.input_labels);
  return o;
}

// Builds a sentence from a parsed record: extraction plus input labels.
BaseSentence MakeSentence(std::string id, std::string text, std::optional<SourceKind> source,
                          std::optional<std::vector<TargetLabel>> labels) {
  BaseSentence s;
  s.id = std::move(id);
  s.text = std::move(text);
  s.source = source;
  s.input_labels = std::move(labels);
  s.mentions = ExtractNumerals(s.text);
  s.label_origins.assign(s.mentions.size(), LabelOrigin::kNone);
  if (s.input_labels) {
    for (const TargetLabel& l : AttachLabels(s, *s.input_labels, LabelOrigin::kInput)) {
      s.warnings.push_back(fmt::format("label target '{}' matches no numeral", l.target));
    }
  }
  return s;
}

absl::Status LineError(size_t line, std::string_view what) {
  return absl::InvalidArgumentError(fmt::format("line {}: {}", line, what));
}

absl::StatusOr<BaseSentence> SentenceFromJson(const Json& o, size_t line) {
  if (!o.is_object()) return LineError(line, "record is not a JSON object");
  if (!o.contains("id") || !o["id"].is_string()) return LineError(line, "missing string 'id'");
  if (!o.contains("text") || !o["text"].is_string()) {
    return LineError(line, "missing string 'text'");
  }
  std::optional<SourceKind> source;
  if (o.contains("source")) {
    if (!o["source"].is_string()) return LineError(line, "'source' must be a string");
    absl::StatusOr<SourceKind> parsed = ParseSourceKind(o["source"].get<std::string>());
    if (!parsed.ok()) return LineError(line, Message(parsed.status()));
    source = *parsed;
  }
  std::optional<std::vector<TargetLabel>> labels;
  if (o.contains("labels")) {
    absl::StatusOr<std::vector<TargetLabel>> parsed = ParseLabels(o["labels"]);
    if (!parsed.ok()) return LineError(line, Message(parsed.status()));
    labels = std::move(*parsed);
  }
  return MakeSentence(o["id"].get<std::string>(), o["text"].get<std::string>(), source,
                      std::move(labels));
}

absl::Status CheckUnique(std::set<std::string>& seen, const std::string& id, size_t line) {
  if (!seen.insert(id).second) {
    return absl::AlreadyExistsError(fmt::format("line {}: duplicate id '{}'", line, id));
  }
  return absl::OkStatus();
}

// RFC 4180 records. Returns (first line number, fields) per record.
absl::StatusOr<std::vector<std::pair<size_t, std::vector<std::string>>>> SplitCsv(
    std::string_view content) {
  std::vector<std::pair<size_t, std::vector<std::string>>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  size_t line = 1;
  size_t record_line = 1;
  auto end_record = [&]() {
    fields.push_back(std::move(field));
    field.clear();
    if (!(fields.size() == 1 && fields[0].empty())) records.emplace_back(record_line, std::move(fields));
    fields.clear();
    any = false;
  };
  for (size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (!any) record_line = line;
    any = true;
    if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      end_record();
      ++line;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) return LineError(record_line, "unterminated quoted field");
  if (any) end_record();
  return records;
}

}  // namespace

std::string_view SourceKindName(SourceKind source) {
  for (const auto& [kind, name] : kSources) {
    if (kind == source) return name;
  }
  return "other";
}

absl::StatusOr<SourceKind> ParseSourceKind(std::string_view name) {
  const std::string folded = ToLower(Strip(name));
  for (const auto& [kind, n] : kSources) {
    if (n == folded) return kind;
  }
  return absl::InvalidArgumentError(fmt::format("unknown source '{}'", name));
}

std::string_view LabelOriginName(LabelOrigin origin) {
  switch (origin) {
    case LabelOrigin::kNone:
      return "none";
    case LabelOrigin::kInput:
      return "input";
    case LabelOrigin::kAnnotator:
      return "annotator";
    case LabelOrigin::kFallback:
      return "fallback";
  }
  return "none";
}

std::vector<TargetLabel> AttachLabels(BaseSentence& sentence,
                                      const std::vector<TargetLabel>& labels,
                                      LabelOrigin origin) {
  std::vector<TargetLabel> unmatched;
  sentence.label_origins.resize(sentence.mentions.size(), LabelOrigin::kNone);
  for (const TargetLabel& l : labels) {
    bool matched = false;
    for (size_t i = 0; i < sentence.mentions.size(); ++i) {
      NumeralMention& m = sentence.mentions[i];
      if (m.label || !TargetMatches(m, l.target)) continue;
      m.label = l.label;
      sentence.label_origins[i] = origin;
      matched = true;
      break;
    }
    if (!matched) unmatched.push_back(l);
  }
  return unmatched;
}

absl::StatusOr<Corpus> ParseCorpusJsonl(std::string_view content) {
  Corpus corpus;
  std::set<std::string> seen;
  size_t line_no = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_no;
    if (Strip(line).empty()) continue;
    Json o = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (o.is_discarded()) return LineError(line_no, "malformed JSON");
    absl::StatusOr<BaseSentence> s = SentenceFromJson(o, line_no);
    if (!s.ok()) return s.status();
    if (absl::Status u = CheckUnique(seen, s->id, line_no); !u.ok()) return u;
    corpus.push_back(std::move(*s));
  }
  return corpus;
}

absl::StatusOr<Corpus> ParseCorpusCsv(std::string_view content) {
  absl::StatusOr<std::vector<std::pair<size_t, std::vector<std::string>>>> records =
      SplitCsv(content);
  if (!records.ok()) return records.status();
  Corpus corpus;
  if (records->empty()) return corpus;
  const std::vector<std::string>& header = records->front().second;
  int id_col = -1, text_col = -1, source_col = -1, labels_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    const std::string h = ToLower(Strip(header[i]));
    if (h == "id") id_col = static_cast<int>(i);
    if (h == "text") text_col = static_cast<int>(i);
    if (h == "source") source_col = static_cast<int>(i);
    if (h == "labels") labels_col = static_cast<int>(i);
  }
  if (id_col < 0 || text_col < 0) return LineError(1, "CSV header needs 'id' and 'text' columns");
  std::set<std::string> seen;
  for (size_t r = 1; r < records->size(); ++r) {
    const auto& [line, fields] = (*records)[r];
    if (fields.size() != header.size()) {
      return LineError(line, fmt::format("expected {} fields, got {}", header.size(), fields.size()));
    }
    Json o;
    o["id"] = fields[id_col];
    o["text"] = fields[text_col];
    if (source_col >= 0 && !fields[source_col].empty()) o["source"] = fields[source_col];
    if (labels_col >= 0 && !fields[labels_col].empty()) {
      Json labels = Json::parse(fields[labels_col], nullptr, false);
      if (labels.is_discarded()) return LineError(line, "labels column is not JSON");
      o["labels"] = std::move(labels);
    }
    absl::StatusOr<BaseSentence> s = SentenceFromJson(o, line);
    if (!s.ok()) return s.status();
    if (absl::Status u = CheckUnique(seen, s->id, line); !u.ok()) return u;
    corpus.push_back(std::move(*s));
  }
  return corpus;
}

absl::StatusOr<Corpus> LoadCorpus(const std::string& path, CorpusFormat format) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return format == CorpusFormat::kJsonl ? ParseCorpusJsonl(*content) : ParseCorpusCsv(*content);
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  for (const BaseSentence& s : corpus) {
    out += RecordToJson(s).dump();
    out.push_back('\n');
  }
  return out;
}

std::string SerializeExtracted(const Corpus& corpus) {
  std::string out;
  for (const BaseSentence& s : corpus) {
    Json o = RecordToJson(s);
    Json mentions = Json::array();
    for (size_t i = 0; i < s.mentions.size(); ++i) {
      const NumeralMention& m = s.mentions[i];
      Json mj;
      mj["span"] = {m.span.start, m.span.end};
      mj["surface"] = m.surface;
      mj["raw"] = m.raw;
      mj["value"] = m.value.ToString();
      mj["kind"] = std::string(NumeralKindName(m.kind()));
      if (m.label) {
        mj["category"] = std::string(CategoryName(m.label->category));
        mj["subcategory"] = std::string(SubcategoryName(m.label->subcategory));
      }
      mj["label_origin"] = std::string(LabelOriginName(s.label_origins[i]));
      mentions.push_back(std::move(mj));
    }
    o["mentions"] = std::move(mentions);
    if (!s.warnings.empty()) o["warnings"] = s.warnings;
    out += o.dump();
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<Corpus> ParseExtracted(std::string_view content) {
  Corpus corpus;
  std::set<std::string> seen;
  size_t line_no = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_no;
    if (Strip(line).empty()) continue;
    Json o = Json::parse(line, nullptr, false);
    if (o.is_discarded() || !o.is_object()) return LineError(line_no, "malformed JSON");
    if (!o.contains("id") || !o["id"].is_string() || !o.contains("text") ||
        !o["text"].is_string() || !o.contains("mentions") || !o["mentions"].is_array()) {
      return LineError(line_no, "extracted record needs id, text and mentions");
    }
    BaseSentence s;
    s.id = o["id"].get<std::string>();
    s.text = o["text"].get<std::string>();
    if (absl::Status u = CheckUnique(seen, s.id, line_no); !u.ok()) return u;
    if (o.contains("source") && o["source"].is_string()) {
      absl::StatusOr<SourceKind> src = ParseSourceKind(o["source"].get<std::string>());
      if (!src.ok()) return LineError(line_no, Message(src.status()));
      s.source = *src;
    }
    if (o.contains("labels")) {
      absl::StatusOr<std::vector<TargetLabel>> labels = ParseLabels(o["labels"]);
      if (!labels.ok()) return LineError(line_no, Message(labels.status()));
      s.input_labels = std::move(*labels);
    }
    if (o.contains("warnings") && o["warnings"].is_array()) {
      for (const Json& w : o["warnings"]) {
        if (w.is_string()) s.warnings.push_back(w.get<std::string>());
      }
    }
    for (const Json& mj : o["mentions"]) {
      if (!mj.is_object() || !mj.contains("span") || !mj["span"].is_array() ||
          mj["span"].size() != 2 || !mj["span"][0].is_number_unsigned() ||
          !mj["span"][1].is_number_unsigned()) {
        return LineError(line_no, "mention needs span [start, end]");
      }
      const size_t start = mj["span"][0].get<size_t>();
      const size_t end = mj["span"][1].get<size_t>();
      if (start >= end || end > s.text.size()) {
        return LineError(line_no, fmt::format("span [{}, {}) outside text", start, end));
      }
      if (!s.mentions.empty() && start < s.mentions.back().span.end) {
        return LineError(line_no, "mention spans overlap or are out of order");
      }
      absl::StatusOr<NumeralMention> m =
          ParseMention(std::string_view(s.text).substr(start, end - start));
      if (!m.ok()) return LineError(line_no, Message(m.status()));
      m->span = {start, end};
      LabelOrigin origin = LabelOrigin::kNone;
      if (mj.contains("category") || mj.contains("subcategory")) {
        if (!mj.contains("category") || !mj.contains("subcategory") ||
            !mj["category"].is_string() || !mj["subcategory"].is_string()) {
          return LineError(line_no, "mention label needs category and subcategory");
        }
        absl::StatusOr<FinNumLabel> label = ParseLabel(mj["category"].get<std::string>(),
                                                       mj["subcategory"].get<std::string>());
        if (!label.ok()) return LineError(line_no, Message(label.status()));
        m->label = *label;
        origin = LabelOrigin::kInput;
      }
      if (mj.contains("label_origin") && mj["label_origin"].is_string()) {
        const std::string name = mj["label_origin"].get<std::string>();
        for (LabelOrigin o2 : {LabelOrigin::kNone, LabelOrigin::kInput, LabelOrigin::kAnnotator,
                               LabelOrigin::kFallback}) {
          if (LabelOriginName(o2) == name) origin = o2;
        }
      }
      s.mentions.push_back(std::move(*m));
      s.label_origins.push_back(origin);
    }
    corpus.push_back(std::move(s));
  }
  return corpus;
}

std::map<std::string, absl::StatusOr<std::vector<TargetLabel>>> ProcessAnnotator::Annotate(
    const std::vector<AnnotationRequest>& requests) {
  std::vector<LineAdapter::Request> lines;
  for (const AnnotationRequest& r : requests) {
    Json o;
    o["id"] = r.id;
    o["sentence"] = r.sentence;
    lines.push_back({r.id, o.dump()});
  }
  LineAdapter::Result result =
      adapter_.Exchange(lines, [](std::string_view line) -> std::optional<std::string> {
        Json o = Json::parse(line, nullptr, false);
        if (o.is_discarded() || !o.is_object() || !o.contains("id") || !o["id"].is_string()) {
          return std::nullopt;
        }
        return o["id"].get<std::string>();
      });
  std::map<std::string, absl::StatusOr<std::vector<TargetLabel>>> out;
  for (const AnnotationRequest& r : requests) {
    auto it = result.replies.find(r.id);
    if (it == result.replies.end()) {
      out.emplace(r.id, absl::UnavailableError("no reply from annotator"));
      continue;
    }
    Json o = Json::parse(it->second);
    if (!o.contains("targets") || !o["targets"].is_array()) {
      out.emplace(r.id, absl::InvalidArgumentError("reply has no targets array"));
      continue;
    }
    std::vector<TargetLabel> labels;
    for (const Json& t : o["targets"]) {
      if (!t.is_object() || !t.contains("raw") || !t["raw"].is_string() ||
          !t.contains("category") || !t["category"].is_string() ||
          !t.contains("subcategory") || !t["subcategory"].is_string()) {
        continue;
      }
      absl::StatusOr<FinNumLabel> label = ParseLabel(t["category"].get<std::string>(),
                                                     t["subcategory"].get<std::string>());
      if (!label.ok()) continue;  // "None" rows and illegal pairs
      labels.push_back({t["raw"].get<std::string>(), *label});
    }
    out.emplace(r.id, std::move(labels));
  }
  return out;
}

AnnotationStats AnnotateLabels(Corpus& corpus, Annotator& annotator) {
  AnnotationStats stats;
  std::vector<AnnotationRequest> requests;
  for (const BaseSentence& s : corpus) {
    for (const NumeralMention& m : s.mentions) {
      if (!m.label) {
        requests.push_back({s.id, s.text});
        break;
      }
    }
  }
  stats.requested = static_cast<int>(requests.size());
  if (requests.empty()) return stats;
  std::map<std::string, absl::StatusOr<std::vector<TargetLabel>>> replies =
      annotator.Annotate(requests);
  for (BaseSentence& s : corpus) {
    auto it = replies.find(s.id);
    if (it == replies.end()) continue;
    if (!it->second.ok()) {
      ++stats.failed;
      s.warnings.push_back(
          fmt::format("annotator: {}", Message(it->second.status())));
    } else {
      AttachLabels(s, *it->second, LabelOrigin::kAnnotator);
    }
    for (size_t i = 0; i < s.mentions.size(); ++i) {
      if (s.label_origins[i] == LabelOrigin::kAnnotator) ++stats.labeled;
      if (s.mentions[i].label) continue;
      s.mentions[i].label = kFallbackLabel;
      s.label_origins[i] = LabelOrigin::kFallback;
      s.warnings.push_back(
          fmt::format("numeral '{}' unlabeled; defaulted to Quantity", s.mentions[i].surface));
      ++stats.fallback;
    }
  }
  return stats;
}

}  // namespace numprobe

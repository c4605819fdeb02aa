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

#ifndef NUMPROBE_CORPUS_H_
#define NUMPROBE_CORPUS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "numprobe/adapter.h"
#include "numprobe/finnum.h"
#include "numprobe/numeral.h"

namespace numprobe {

enum class SourceKind { kSocialMedia, kNews, kFiling, kOther };

std::string_view SourceKindName(SourceKind source);
absl::StatusOr<SourceKind> ParseSourceKind(std::string_view name);

// A label as supplied by the input file or an annotator: the numeral's
// digits (commas kept, symbols dropped) plus its taxonomy label.
struct TargetLabel {
  std::string target;
  FinNumLabel label;
};

enum class LabelOrigin { kNone, kInput, kAnnotator, kFallback };

std::string_view LabelOriginName(LabelOrigin origin);

struct BaseSentence {
  std::string id;
  std::string text;
  std::optional<SourceKind> source;
  // Labels exactly as read; kept so serialization round-trips.
  std::optional<std::vector<TargetLabel>> input_labels;
  std::vector<NumeralMention> mentions;
  std::vector<LabelOrigin> label_origins;  // parallel to mentions
  std::vector<std::string> warnings;

  bool mentionless() const { return mentions.empty(); }
};

using Corpus = std::vector<BaseSentence>;

enum class CorpusFormat { kJsonl, kCsv };

// Reads raw sentences, extracts numerals and attaches input labels.
// Records keep file order; sentences without numerals are kept.
// Errors: NotFound for a missing file; InvalidArgument naming the line for
// a malformed record; AlreadyExists for a duplicate id.
absl::StatusOr<Corpus> LoadCorpus(const std::string& path, CorpusFormat format);
absl::StatusOr<Corpus> ParseCorpusJsonl(std::string_view content);
absl::StatusOr<Corpus> ParseCorpusCsv(std::string_view content);

// Canonical input form: one compact object per line with keys id, text,
// and source/labels when the record had them.
std::string SerializeCorpus(const Corpus& corpus);

// Extraction-stage artifact: the canonical record plus a "mentions" array
// carrying spans, values, kinds and labels.
std::string SerializeExtracted(const Corpus& corpus);
// Reads an extraction artifact. Mention styles are re-derived from the
// text at each span; a span that does not parse is a schema error.
absl::StatusOr<Corpus> ParseExtracted(std::string_view content);

// Assigns `labels` in order to still-unlabeled mentions whose numeric core
// (or, for dates and times, one of its digit groups) equals the target.
// Returns the labels that matched nothing.
std::vector<TargetLabel> AttachLabels(BaseSentence& sentence,
                                      const std::vector<TargetLabel>& labels,
                                      LabelOrigin origin);

struct AnnotationRequest {
  std::string id;
  std::string sentence;
};

// Source of taxonomy labels for sentences that arrive without them.
class Annotator {
 public:
  virtual ~Annotator() = default;
  // Keyed by request id. A missing key or an error status means the
  // sentence gets no annotator labels.
  virtual std::map<std::string, absl::StatusOr<std::vector<TargetLabel>>> Annotate(
      const std::vector<AnnotationRequest>& requests) = 0;
};

// Speaks the annotator wire protocol with an external command:
//   request  {"id": ..., "sentence": ...}
//   reply    {"id": ..., "targets": [{"raw", "category", "subcategory"}]}
class ProcessAnnotator : public Annotator {
 public:
  explicit ProcessAnnotator(AdapterOptions options) : adapter_(std::move(options)) {}
  std::map<std::string, absl::StatusOr<std::vector<TargetLabel>>> Annotate(
      const std::vector<AnnotationRequest>& requests) override;

 private:
  LineAdapter adapter_;
};

struct AnnotationStats {
  int requested = 0;   // sentences sent to the annotator
  int labeled = 0;     // mentions labeled by the annotator
  int fallback = 0;    // mentions given the Quantity fallback
  int failed = 0;      // sentences with no usable reply
};

// Labels every mention that the input left unlabeled. Mentions the
// annotator does not cover get the Quantity fallback and a warning.
AnnotationStats AnnotateLabels(Corpus& corpus, Annotator& annotator);

}  // namespace numprobe

#endif  // NUMPROBE_CORPUS_H_

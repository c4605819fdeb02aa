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

// Line-delimited JSON transport to external adapter processes (annotator,
// validator, scorer). Each request is one line; each reply is one line that
// carries the request's key, so replies may arrive in any order.

#ifndef NUMPROBE_ADAPTER_H_
#define NUMPROBE_ADAPTER_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace numprobe {

enum class Transport {
  // One long-lived child; requests on its stdin, replies on its stdout.
  kStreams,
  // One child per batch: `command < requests.jsonl > replies.jsonl`.
  kFiles,
};

struct AdapterOptions {
  std::string command;  // run through /bin/sh -c
  Transport transport = Transport::kStreams;
  size_t batch_size = 64;
  std::chrono::milliseconds timeout{30000};  // per batch
  int retries = 1;                           // extra attempts per batch
};

// A child process with line-oriented stdin/stdout.
class LineProcess {
 public:
  static absl::StatusOr<std::unique_ptr<LineProcess>> Start(const std::string& command);
  ~LineProcess();

  LineProcess(const LineProcess&) = delete;
  LineProcess& operator=(const LineProcess&) = delete;

  // Writes all of `data`, buffering any replies that arrive meanwhile.
  absl::Status Write(std::string_view data, std::chrono::milliseconds timeout);
  // DeadlineExceeded on timeout, Unavailable once the child closed stdout.
  absl::StatusOr<std::string> ReadLine(std::chrono::milliseconds timeout);

 private:
  LineProcess(int pid, int to_child, int from_child)
      : pid_(pid), to_child_(to_child), from_child_(from_child) {}

  int pid_;
  int to_child_;
  int from_child_;
  std::string buffer_;
  bool output_closed_ = false;

  absl::Status FillBuffer();
};

class LineAdapter {
 public:
  struct Request {
    std::string key;
    std::string line;
  };

  // Extracts the request key from a reply line; nullopt for lines that are
  // not understandable replies.
  using KeyFn = std::function<std::optional<std::string>(std::string_view line)>;

  struct Result {
    std::map<std::string, std::string> replies;  // key -> reply line
    int failed_batches = 0;    // batches that failed even after retry
    int unparsed_lines = 0;    // reply lines KeyFn rejected
    std::vector<std::string> diagnostics;
  };

  explicit LineAdapter(AdapterOptions options);
  ~LineAdapter();

  // Sends requests in batches of options.batch_size. A batch that fails
  // (spawn error, timeout, early exit) is retried once with a fresh process
  // for its still-missing keys; keys that never get a reply are absent from
  // Result::replies.
  Result Exchange(const std::vector<Request>& requests, const KeyFn& key_of);

  const AdapterOptions& options() const { return options_; }

 private:
  absl::Status RunBatchStreams(const std::vector<const Request*>& batch, const KeyFn& key_of,
                               Result& result);
  absl::Status RunBatchFiles(const std::vector<const Request*>& batch, const KeyFn& key_of,
                             Result& result);

  AdapterOptions options_;
  std::unique_ptr<LineProcess> process_;
};

}  // namespace numprobe

#endif  // NUMPROBE_ADAPTER_H_

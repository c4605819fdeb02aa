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

#include "numprobe/adapter.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "fmt/format.h"

namespace numprobe {
namespace {

using Clock = std::chrono::steady_clock;

void IgnoreSigpipeOnce() {
  static const bool done = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

absl::Status ErrnoStatus(std::string_view what) {
  return absl::UnavailableError(fmt::format("{}: {}", what, std::strerror(errno)));
}

// Waits up to `timeout` for pid; kills it if still running.
int ReapWithTimeout(int pid, std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  int status = 0;
  while (true) {
    const int r = waitpid(pid, &status, WNOHANG);
    if (r == pid) return status;
    if (r < 0) return -1;
    if (Clock::now() >= deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      return -1;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
}

}  // namespace

absl::StatusOr<std::unique_ptr<LineProcess>> LineProcess::Start(const std::string& command) {
  IgnoreSigpipeOnce();
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) return ErrnoStatus("pipe");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    return ErrnoStatus("pipe");
  }
  const pid_t pid = fork();
  if (pid < 0) return ErrnoStatus("fork");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  fcntl(in_pipe[1], F_SETFL, fcntl(in_pipe[1], F_GETFL) | O_NONBLOCK);
  fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  return std::unique_ptr<LineProcess>(new LineProcess(pid, in_pipe[1], out_pipe[0]));
}

LineProcess::~LineProcess() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  ReapWithTimeout(pid_, std::chrono::milliseconds(500));
}

absl::Status LineProcess::FillBuffer() {
  char chunk[4096];
  const ssize_t n = read(from_child_, chunk, sizeof(chunk));
  if (n < 0) {
    if (errno == EINTR || errno == EAGAIN) return absl::OkStatus();
    return ErrnoStatus("read from adapter");
  }
  if (n == 0) {
    output_closed_ = true;
  } else {
    buffer_.append(chunk, static_cast<size_t>(n));
  }
  return absl::OkStatus();
}

absl::Status LineProcess::Write(std::string_view data, std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  size_t off = 0;
  while (off < data.size()) {
    const auto left =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) return absl::DeadlineExceededError("adapter stopped reading input");
    // Keep draining replies so a child blocked on a full stdout keeps reading.
    pollfd fds[2] = {{to_child_, POLLOUT, 0}, {output_closed_ ? -1 : from_child_, POLLIN, 0}};
    const int r = poll(fds, 2, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      return ErrnoStatus("poll");
    }
    if (r == 0) return absl::DeadlineExceededError("adapter stopped reading input");
    if (fds[1].revents != 0) {
      if (absl::Status s = FillBuffer(); !s.ok()) return s;
    }
    if (fds[0].revents != 0) {
      const ssize_t n = write(to_child_, data.data() + off, data.size() - off);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        return ErrnoStatus("write to adapter");
      }
      off += static_cast<size_t>(n);
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> LineProcess::ReadLine(std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  while (true) {
    if (const size_t nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) return absl::DeadlineExceededError("adapter reply timed out");
    if (output_closed_) {
      if (buffer_.empty()) return absl::UnavailableError("adapter closed its output");
      std::string line = std::move(buffer_);
      buffer_.clear();
      return line;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int r = poll(&pfd, 1, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      return ErrnoStatus("poll");
    }
    if (r == 0) return absl::DeadlineExceededError("adapter reply timed out");
    if (absl::Status s = FillBuffer(); !s.ok()) return s;
  }
}

LineAdapter::LineAdapter(AdapterOptions options) : options_(std::move(options)) {
  if (options_.batch_size == 0) options_.batch_size = 1;
}

LineAdapter::~LineAdapter() = default;

absl::Status LineAdapter::RunBatchStreams(const std::vector<const Request*>& batch,
                                          const KeyFn& key_of, Result& result) {
  if (!process_) {
    absl::StatusOr<std::unique_ptr<LineProcess>> started = LineProcess::Start(options_.command);
    if (!started.ok()) return started.status();
    process_ = std::move(*started);
  }
  const auto deadline = Clock::now() + options_.timeout;
  std::string payload;
  for (const Request* r : batch) {
    payload += r->line;
    payload.push_back('\n');
  }
  if (absl::Status s = process_->Write(payload, options_.timeout); !s.ok()) return s;
  std::set<std::string> pending;
  for (const Request* r : batch) pending.insert(r->key);
  size_t lines = 0;
  while (!pending.empty() && lines < batch.size()) {
    const auto left =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    absl::StatusOr<std::string> line = process_->ReadLine(std::max(left, std::chrono::milliseconds(0)));
    if (!line.ok()) return line.status();
    ++lines;
    std::optional<std::string> key = key_of(*line);
    if (!key) {
      ++result.unparsed_lines;
      continue;
    }
    if (pending.erase(*key) > 0) result.replies[*key] = std::move(*line);
  }
  return absl::OkStatus();
}

absl::Status LineAdapter::RunBatchFiles(const std::vector<const Request*>& batch,
                                        const KeyFn& key_of, Result& result) {
  namespace fs = std::filesystem;
  std::string dir_template = (fs::temp_directory_path() / "numprobe-XXXXXX").string();
  if (mkdtemp(dir_template.data()) == nullptr) return ErrnoStatus("mkdtemp");
  const fs::path dir(dir_template);
  const fs::path in = dir / "requests.jsonl";
  const fs::path out = dir / "replies.jsonl";
  {
    std::ofstream f(in, std::ios::binary);
    for (const Request* r : batch) f << r->line << '\n';
  }
  const pid_t pid = fork();
  if (pid < 0) return ErrnoStatus("fork");
  if (pid == 0) {
    const int fin = open(in.c_str(), O_RDONLY);
    const int fout = open(out.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fin < 0 || fout < 0) _exit(126);
    dup2(fin, STDIN_FILENO);
    dup2(fout, STDOUT_FILENO);
    execl("/bin/sh", "sh", "-c", options_.command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  const int status = ReapWithTimeout(pid, options_.timeout);
  absl::Status outcome = absl::OkStatus();
  if (status < 0) {
    outcome = absl::DeadlineExceededError("adapter batch timed out");
  } else if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    outcome = absl::UnavailableError(
        fmt::format("adapter exited with status {}", WIFEXITED(status) ? WEXITSTATUS(status) : -1));
  } else {
    std::ifstream f(out, std::ios::binary);
    std::string line;
    while (std::getline(f, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::optional<std::string> key = key_of(line);
      if (!key) {
        ++result.unparsed_lines;
        continue;
      }
      result.replies[*key] = line;
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return outcome;
}

LineAdapter::Result LineAdapter::Exchange(const std::vector<Request>& requests,
                                          const KeyFn& key_of) {
  Result result;
  for (size_t begin = 0; begin < requests.size(); begin += options_.batch_size) {
    const size_t end = std::min(requests.size(), begin + options_.batch_size);
    std::vector<const Request*> missing;
    for (size_t i = begin; i < end; ++i) missing.push_back(&requests[i]);
    absl::Status last;
    for (int attempt = 0; attempt <= options_.retries && !missing.empty(); ++attempt) {
      last = options_.transport == Transport::kStreams
                 ? RunBatchStreams(missing, key_of, result)
                 : RunBatchFiles(missing, key_of, result);
      if (!last.ok()) {
        result.diagnostics.push_back(std::string(last.message()));
        process_.reset();
      }
      std::vector<const Request*> still;
      for (const Request* r : missing) {
        if (!result.replies.contains(r->key)) still.push_back(r);
      }
      missing = std::move(still);
      if (last.ok()) break;
    }
    if (!last.ok()) ++result.failed_batches;
  }
  return result;
}

}  // namespace numprobe

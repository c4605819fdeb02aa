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


#include "numprobe/prompts.h"

#include "prompt_data.h"

namespace numprobe {

std::string_view ValidationPromptTemplate() { return kValidationPromptText; }

std::string_view NumberIdentificationPromptTemplate() { return kNumberIdentificationPromptText; }

std::string ValidationPrompt(std::string_view sentence) {
  std::string out(kValidationPromptText);
  static constexpr std::string_view kPlaceholder = "{sentence}";
  if (const size_t at = out.find(kPlaceholder); at != std::string::npos) {
    out.replace(at, kPlaceholder.size(), sentence);
  }
  return out;
}

std::string NumberIdentificationPrompt(const std::vector<std::string>& sentences) {
  std::string out(kNumberIdentificationPromptText);
  for (const std::string& s : sentences) {
    out += s;
    out.push_back('\n');
  }
  return out;
}

}  // namespace numprobe

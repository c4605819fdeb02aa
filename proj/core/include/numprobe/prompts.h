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


// Prompt templates for LLM-backed annotator and validator adapters. The
// same text ships as files under share/numprobe/prompts.

#ifndef NUMPROBE_PROMPTS_H_
#define NUMPROBE_PROMPTS_H_

#include <string>
#include <string_view>
#include <vector>

namespace numprobe {

// Contains the placeholder "{sentence}".
std::string_view ValidationPromptTemplate();
// Ends with "Sentences:" followed by a blank line.
std::string_view NumberIdentificationPromptTemplate();

std::string ValidationPrompt(std::string_view sentence);
// Template followed by one sentence per line.
std::string NumberIdentificationPrompt(const std::vector<std::string>& sentences);

}  // namespace numprobe

#endif  // NUMPROBE_PROMPTS_H_

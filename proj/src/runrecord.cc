// Copyright 2026 The kouzen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kouzen/runrecord.h"

#include <filesystem>

#include "kouzen/digest.h"
#include "kouzen/text.h"

namespace kouzen {

void RunRecord::AddInput(const std::string& path) {
  inputs_.emplace_back(path, Fnv1a64Hex(ReadFile(path)));
}

void RunRecord::AddOutput(const std::string& path) {
  outputs_.emplace_back(path, Fnv1a64Hex(ReadFile(path)));
}

nlohmann::json RunRecord::ToJson() const {
  nlohmann::json files_in = nlohmann::json::object();
  for (const auto& [path, digest] : inputs_) files_in[path] = digest;
  nlohmann::json files_out = nlohmann::json::object();
  for (const auto& [path, digest] : outputs_) files_out[path] = digest;
  return {{"subcommand", subcommand}, {"config", config},
          {"seed", seed},             {"version", kVersion},
          {"wall_ms", wall_ms},       {"inputs", files_in},
          {"outputs", files_out}};
}

void RunRecord::Write(const std::string& output_path) const {
  namespace fs = std::filesystem;
  const fs::path out(output_path);
  const fs::path record = fs::is_directory(out) ? out / "run.json"
                                                : fs::path(output_path +
                                                           ".run.json");
  WriteFile(record.string(), ToJson().dump(2) + "\n");
}

}  // namespace kouzen

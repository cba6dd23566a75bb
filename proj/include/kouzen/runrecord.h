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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace kouzen {

inline constexpr const char* kVersion = "0.1.0";

// Reproducibility record emitted beside every successful CLI run: the
// subcommand, its fully resolved configuration, content digests of the
// files read and written, the seed and the wall time.
struct RunRecord {
  std::string subcommand;
  nlohmann::json config;
  uint64_t seed = 0;
  double wall_ms = 0.0;

  void AddInput(const std::string& path);
  void AddOutput(const std::string& path);

  nlohmann::json ToJson() const;
  // Writes `<output_path>.run.json`, or `<dir>/run.json` when the
  // output is a directory.
  void Write(const std::string& output_path) const;

 private:
  std::vector<std::pair<std::string, std::string>> inputs_;   // path, digest
  std::vector<std::pair<std::string, std::string>> outputs_;
};

}  // namespace kouzen

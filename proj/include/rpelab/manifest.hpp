// Copyright 2026 The rpelab Authors
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

#ifndef RPELAB_MANIFEST_HPP
#define RPELAB_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace rpelab {

inline constexpr const char* kToolVersion = "0.1.0";

// Record of one CLI run with everything needed to reproduce it.
struct RunManifest {
  std::string command;
  std::string tool_version = kToolVersion;
  std::map<std::string, std::string> inputs;  // logical name -> path
  std::uint64_t seed = 0;
  nlohmann::json parameters = nlohmann::json::object();
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const RunManifest& m, const std::string& path);
RunManifest read_manifest(const std::string& path);

}  // namespace rpelab

#endif

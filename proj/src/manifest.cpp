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

#include "rpelab/manifest.hpp"

#include <fstream>

#include "rpelab/errors.hpp"

namespace rpelab {

nlohmann::json manifest_to_json(const RunManifest& m) {
  return nlohmann::json{{"command", m.command},
                        {"tool_version", m.tool_version},
                        {"inputs", m.inputs},
                        {"seed", m.seed},
                        {"parameters", m.parameters}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.tool_version = j.at("tool_version").get<std::string>();
  m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.parameters = j.at("parameters");
  return m;
}

void write_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write manifest: " + path);
  os << manifest_to_json(m).dump(2) << "\n";
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read manifest: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("manifest parse failure: ") + e.what());
  }
  try {
    return manifest_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("manifest missing fields: ") + e.what());
  }
}

}  // namespace rpelab

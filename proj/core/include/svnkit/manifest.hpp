// Copyright 2026 The svnkit Authors
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
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace svnkit {

// Reproducibility record written next to every command's outputs. Parameters
// and input hashes fully determine the result files; the timestamp is the
// only field that varies between identical reruns.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, std::string>> input_hashes;
  std::string tool_version;
  std::uint64_t master_seed = 0;
  std::string timestamp;  // filled at write time when empty

  void add_param(const std::string& key, const std::string& value);
  void add_input(const std::filesystem::path& path);  // hashes the file
};

// FNV-1a 64-bit content hash, hex-encoded with an algorithm prefix.
std::string hash_file(const std::filesystem::path& path);

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& path);

}  // namespace svnkit

// Copyright 2026 The amrbench Authors.
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

// Paths and loaders for the checked-in fixture data.

#ifndef AMRBENCH_TESTS_SUPPORT_FIXTURES_H_
#define AMRBENCH_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "amrbench/corpus.h"

namespace amrbench::testing {

inline std::filesystem::path DataDir() { return AMRBENCH_TEST_DATA; }

inline std::filesystem::path CorpusDir() { return DataDir() / "corpus"; }

inline std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Standalone graph files by stem: "want_go", "duplicate_variable", "sing_boy",
// "boy_sing", "accelerate".
inline std::string Graph(const std::string& stem) { return ReadText(DataDir() / "graphs" / (stem + ".amr")); }

inline const std::vector<corpus::CorpusEntry>& FixtureCorpus() {
  static const std::vector<corpus::CorpusEntry> entries = corpus::LoadPath(CorpusDir());
  return entries;
}

// A scratch directory under the build tree, emptied on creation.
inline std::filesystem::path ScratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("amrbench_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace amrbench::testing

#endif  // AMRBENCH_TESTS_SUPPORT_FIXTURES_H_

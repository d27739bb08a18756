// Copyright 2026 The gbsgraph Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gbsgraph/encoding.hpp"
#include "gbsgraph/graph.hpp"
#include "gbsgraph/solvers.hpp"

namespace gbsgraph {

/// Version stamped into every file this library writes.
inline constexpr int kFormatVersion = 1;

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partially written file. Creates missing parent directories.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Graph JSON: {"format_version": 1, "n": n, "entries": [[i, j, re, im], ...]}
/// listing nonzero upper-triangle entries (i <= j). Optional metadata such as
/// a planted clique is carried in "planted".
struct GraphFile {
    Graph graph;
    std::vector<std::size_t> planted;
};
std::string graph_to_json(const GraphFile& file);
GraphFile graph_from_json(const std::string& text);
void save_graph(const GraphFile& file, const std::filesystem::path& path);
GraphFile load_graph(const std::filesystem::path& path);

/// Device JSON: squeezing list, interferometer as [[re, im], ...] rows, scale.
std::string device_to_json(const DeviceParams& device);
DeviceParams device_from_json(const std::string& text);
void save_device(const DeviceParams& device, const std::filesystem::path& path);
DeviceParams load_device(const std::filesystem::path& path);

/// "step,best_value" rows.
std::string trace_to_csv(const RunTrace& trace);

}  // namespace gbsgraph

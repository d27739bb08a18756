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

#include "gbsgraph/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gbsgraph/error.hpp"
#include "json.hpp"

namespace gbsgraph {
namespace {

using nlohmann::json;

// Pretty-prints with one array element per line for the given array field.
std::string dump_rows(const json& doc, const char* rows_field) {
    std::string out = "{\n";
    bool first = true;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        out += first ? "" : ",\n";
        first = false;
        out += " " + json(it.key()).dump() + ": ";
        if (it.key() == rows_field && it.value().is_array() && !it.value().empty()) {
            out += "[\n";
            for (std::size_t i = 0; i < it.value().size(); ++i) {
                out += "  " + it.value()[i].dump() + (i + 1 < it.value().size() ? ",\n" : "\n");
            }
            out += " ]";
        } else {
            out += it.value().dump();
        }
    }
    return out + "\n}\n";
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(what) + ": invalid JSON: " + e.what());
    }
}

const json& field(const json& obj, const char* name, const char* what) {
    if (!obj.is_object() || !obj.contains(name)) {
        throw ValidationError(std::string(what) + ": missing field '" + name + "'");
    }
    return obj.at(name);
}

void check_version(const json& obj, const char* what) {
    const json& v = field(obj, "format_version", what);
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion) {
        throw ValidationError(std::string(what) + ": unsupported format_version");
    }
}

double number(const json& v, const char* what) {
    if (!v.is_number()) {
        throw ValidationError(std::string(what) + ": expected a number");
    }
    return v.get<double>();
}

std::size_t index(const json& v, const char* what) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw ValidationError(std::string(what) + ": expected a nonnegative integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ValidationError("cannot write " + tmp.string());
        }
        out << contents;
        out.flush();
        if (!out) {
            throw ValidationError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw ValidationError("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string graph_to_json(const GraphFile& file) {
    const Graph& g = file.graph;
    json entries = json::array();
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        for (std::size_t j = i; j < g.vertex_count(); ++j) {
            const Complex w = g.weight(i, j);
            if (w != Complex{}) {
                entries.push_back(json::array({i, j, w.real(), w.imag()}));
            }
        }
    }
    json out = {{"format_version", kFormatVersion}, {"n", g.vertex_count()}, {"entries", entries}};
    if (!file.planted.empty()) {
        out["planted"] = file.planted;
    }
    return dump_rows(out, "entries");
}

GraphFile graph_from_json(const std::string& text) {
    constexpr const char* what = "graph file";
    const json doc = parse_json(text, what);
    check_version(doc, what);
    const std::size_t n = index(field(doc, "n", what), "graph file field 'n'");
    if (n == 0 || n > kMaxVertices) {
        throw ValidationError("graph file: n must lie in [1, " + std::to_string(kMaxVertices) + "]");
    }
    const json& entries = field(doc, "entries", what);
    if (!entries.is_array()) {
        throw ValidationError("graph file: 'entries' must be an array");
    }
    ComplexMatrix adj(n, n);
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const json& row = entries[e];
        const std::string where = "graph file entry " + std::to_string(e);
        if (!row.is_array() || row.size() != 4) {
            throw ValidationError(where + ": expected [i, j, re, im]");
        }
        const std::size_t i = index(row[0], where.c_str());
        const std::size_t j = index(row[1], where.c_str());
        if (i >= n || j >= n) {
            throw ValidationError(where + ": vertex index out of range");
        }
        const Complex w{number(row[2], where.c_str()), number(row[3], where.c_str())};
        adj(i, j) = w;
        adj(j, i) = w;
    }
    GraphFile out;
    out.graph = Graph(std::move(adj));
    if (doc.contains("planted")) {
        for (const auto& v : doc.at("planted")) {
            out.planted.push_back(index(v, "graph file field 'planted'"));
        }
        validate_subset(out.planted, n);
    }
    return out;
}

void save_graph(const GraphFile& file, const std::filesystem::path& path) {
    write_file_atomic(path, graph_to_json(file));
}

GraphFile load_graph(const std::filesystem::path& path) { return graph_from_json(read_file(path)); }

std::string device_to_json(const DeviceParams& device) {
    json u = json::array();
    for (std::size_t r = 0; r < device.interferometer.rows(); ++r) {
        json row = json::array();
        for (const Complex& z : device.interferometer.row(r)) {
            row.push_back(json::array({z.real(), z.imag()}));
        }
        u.push_back(row);
    }
    const json out = {{"format_version", kFormatVersion},
                      {"modes", device.squeezing.size()},
                      {"scale", device.scale},
                      {"squeezing", device.squeezing},
                      {"interferometer", u}};
    return dump_rows(out, "interferometer");
}

DeviceParams device_from_json(const std::string& text) {
    constexpr const char* what = "device file";
    const json doc = parse_json(text, what);
    check_version(doc, what);
    DeviceParams p;
    p.scale = number(field(doc, "scale", what), "device file field 'scale'");
    for (const auto& r : field(doc, "squeezing", what)) {
        p.squeezing.push_back(number(r, "device file field 'squeezing'"));
    }
    const std::size_t m = p.squeezing.size();
    if (m == 0 || index(field(doc, "modes", what), "device file field 'modes'") != m) {
        throw ValidationError("device file: 'modes' must equal the number of squeezing values");
    }
    const json& u = field(doc, "interferometer", what);
    if (!u.is_array() || u.size() != m) {
        throw ValidationError("device file: interferometer must have one row per mode");
    }
    p.interferometer = ComplexMatrix(m, m);
    for (std::size_t r = 0; r < m; ++r) {
        if (!u[r].is_array() || u[r].size() != m) {
            throw ValidationError("device file: interferometer row " + std::to_string(r) + " has the wrong length");
        }
        for (std::size_t c = 0; c < m; ++c) {
            const json& z = u[r][c];
            if (!z.is_array() || z.size() != 2) {
                throw ValidationError("device file: interferometer entries must be [re, im]");
            }
            p.interferometer(r, c) = {number(z[0], what), number(z[1], what)};
        }
    }
    // Construction validates squeezing and unitarity.
    (void)state_from_device(p.device());
    return p;
}

void save_device(const DeviceParams& device, const std::filesystem::path& path) {
    write_file_atomic(path, device_to_json(device));
}

DeviceParams load_device(const std::filesystem::path& path) { return device_from_json(read_file(path)); }

std::string trace_to_csv(const RunTrace& trace) {
    std::string out = "step,best_value\n";
    for (const auto& p : trace.best_value_at_step) {
        out += std::to_string(p.step) + "," + format_double(p.value) + "\n";
    }
    return out;
}

}  // namespace gbsgraph

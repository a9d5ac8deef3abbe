// Copyright 2026 The pathforest Authors
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

#include <charconv>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "opf/dataset/dataset.hpp"
#include "opf/detail/binary.hpp"
#include "opf/errors.hpp"

namespace opf {

enum class FileFormat { txt, csv, json, opf };

inline const char* format_name(FileFormat f) {
    switch (f) {
        case FileFormat::txt: return "txt";
        case FileFormat::csv: return "csv";
        case FileFormat::json: return "json";
        case FileFormat::opf: return "opf";
    }
    return "?";
}

inline FileFormat format_from_name(const std::string& name) {
    if (name == "txt") return FileFormat::txt;
    if (name == "csv") return FileFormat::csv;
    if (name == "json") return FileFormat::json;
    if (name == "opf") return FileFormat::opf;
    throw ValueError("unknown dataset format '" + name + "'");
}

inline FileFormat infer_format(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    if (!ext.empty() && ext.front() == '.') ext.erase(ext.begin());
    return format_from_name(ext);
}

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

inline std::vector<std::string_view> split_fields(std::string_view line, bool comma) {
    std::vector<std::string_view> fields;
    if (comma) {
        std::size_t start = 0;
        while (true) {
            std::size_t end = line.find(',', start);
            std::string_view f =
                line.substr(start, end == std::string_view::npos ? end : end - start);
            while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
            while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.remove_suffix(1);
            fields.push_back(f);
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
        if (fields.size() == 1 && fields.front().empty()) fields.clear();
    } else {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            if (i > start) fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

inline long long parse_int_field(std::string_view field, const std::string& where) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(where + ": '" + std::string(field) + "' is not an integer");
    return value;
}

inline double parse_real_field(std::string_view field, const std::string& where) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(where + ": '" + std::string(field) + "' is not a number");
    return value;
}

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, ptr};
}

inline Dataset parse_delimited(const std::string& text, const std::string& origin,
                               bool comma) {
    const auto lines = split_lines(text);

    std::size_t ln = 0; // index of the header line
    while (ln < lines.size() && split_fields(lines[ln], comma).empty()) ++ln;
    if (ln == lines.size()) throw ParseError(origin + ": empty file, expected a header line");

    const std::string header_where = origin + ":" + std::to_string(ln + 1);
    const auto header = split_fields(lines[ln], comma);
    if (header.size() != 3)
        throw ParseError(header_where + ": header needs 3 values (n_samples n_classes n_features), got " +
                         std::to_string(header.size()));
    const long long n_samples = parse_int_field(header[0], header_where);
    const long long n_classes = parse_int_field(header[1], header_where);
    const long long n_features = parse_int_field(header[2], header_where);
    if (n_samples < 1 || n_classes < 0 || n_features < 1)
        throw ParseError(header_where + ": header values out of range");

    Dataset ds;
    ds.n_classes = static_cast<int>(n_classes);
    ds.features = Matrix(static_cast<std::size_t>(n_samples),
                         static_cast<std::size_t>(n_features));

    long long row = 0;
    std::size_t last_line = ln + 1;
    for (std::size_t li = ln + 1; li < lines.size(); ++li) {
        const auto fields = split_fields(lines[li], comma);
        if (fields.empty()) continue; // blank line
        last_line = li + 1;
        const std::string where = origin + ":" + std::to_string(li + 1);
        if (row >= n_samples)
            throw ParseError(where + ": header declared " + std::to_string(n_samples) +
                             " samples but more follow");
        if (static_cast<long long>(fields.size()) != 2 + n_features)
            throw ParseError(where + ": expected " + std::to_string(2 + n_features) +
                             " fields (id label features...), got " +
                             std::to_string(fields.size()));
        const long long id = parse_int_field(fields[0], where);
        const long long label = parse_int_field(fields[1], where);
        if (id < 0) throw ParseError(where + ": negative id");
        if (label < 0 || label > n_classes)
            throw ParseError(where + ": label " + std::to_string(label) + " outside 0.." +
                             std::to_string(n_classes));
        ds.ids.push_back(static_cast<int>(id));
        ds.labels.push_back(static_cast<int>(label));
        for (long long j = 0; j < n_features; ++j)
            ds.features.at(static_cast<std::size_t>(row), static_cast<std::size_t>(j)) =
                parse_real_field(fields[static_cast<std::size_t>(2 + j)], where);
        ++row;
    }
    if (row != n_samples)
        throw ParseError(origin + ":" + std::to_string(last_line) + ": header declared " +
                         std::to_string(n_samples) + " samples but the file contains " +
                         std::to_string(row));
    return ds;
}

inline std::string render_delimited(const Dataset& ds, bool comma) {
    const char sep = comma ? ',' : ' ';
    std::string out;
    out += std::to_string(ds.size());
    out += sep;
    out += std::to_string(ds.n_classes > 0 ? ds.n_classes : ds.max_label());
    out += sep;
    out += std::to_string(ds.n_features());
    out += '\n';
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out += std::to_string(ds.ids[i]);
        out += sep;
        out += std::to_string(ds.labels[i]);
        for (std::size_t j = 0; j < ds.n_features(); ++j) {
            out += sep;
            out += format_real(ds.features.at(i, j));
        }
        out += '\n';
    }
    return out;
}

inline Dataset parse_json(const std::string& text, const std::string& origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("n_classes") || !doc.contains("data"))
        throw ParseError(origin + ": expected an object with 'n_classes' and 'data'");
    if (!doc["n_classes"].is_number_integer())
        throw ParseError(origin + ": 'n_classes' must be an integer");
    const int n_classes = doc["n_classes"].get<int>();
    if (n_classes < 0) throw ParseError(origin + ": 'n_classes' must be >= 0");
    if (!doc["data"].is_array() || doc["data"].empty())
        throw ParseError(origin + ": 'data' must be a non-empty array");

    Dataset ds;
    ds.n_classes = n_classes;
    std::size_t n_features = 0;
    std::size_t index = 0;
    for (const auto& item : doc["data"]) {
        const std::string where = origin + ": data[" + std::to_string(index) + "]";
        if (!item.is_object() || !item.contains("id") || !item.contains("label") ||
            !item.contains("features"))
            throw ParseError(where + ": expected {id, label, features}");
        if (!item["id"].is_number_integer() || !item["label"].is_number_integer())
            throw ParseError(where + ": id and label must be integers");
        const int id = item["id"].get<int>();
        const int label = item["label"].get<int>();
        if (id < 0) throw ParseError(where + ": negative id");
        if (label < 0 || label > n_classes)
            throw ParseError(where + ": label " + std::to_string(label) + " outside 0.." +
                             std::to_string(n_classes));
        if (!item["features"].is_array() || item["features"].empty())
            throw ParseError(where + ": 'features' must be a non-empty array");
        std::vector<double> feats;
        feats.reserve(item["features"].size());
        for (const auto& f : item["features"]) {
            if (!f.is_number()) throw ParseError(where + ": non-numeric feature value");
            feats.push_back(f.get<double>());
        }
        if (index == 0)
            n_features = feats.size();
        else if (feats.size() != n_features)
            throw ParseError(where + ": " + std::to_string(feats.size()) +
                             " features, expected " + std::to_string(n_features));
        ds.ids.push_back(id);
        ds.labels.push_back(label);
        ds.features.append_row(feats);
        ++index;
    }
    return ds;
}

inline std::string render_json(const Dataset& ds) {
    nlohmann::json doc;
    doc["n_classes"] = ds.n_classes > 0 ? ds.n_classes : ds.max_label();
    auto& data = doc["data"];
    data = nlohmann::json::array();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        nlohmann::json item;
        item["id"] = ds.ids[i];
        item["label"] = ds.labels[i];
        auto row = ds.features.row(i);
        item["features"] = std::vector<double>(row.begin(), row.end());
        data.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

} // namespace detail

/// Binary OPF layout: header of three 32-bit LE integers (n_samples,
/// n_classes, n_features), then per sample a 32-bit LE id, a 32-bit LE label
/// and n_features IEEE-754 float32 values.
inline Dataset read_opf_binary(const std::filesystem::path& path) {
    const std::string data = detail::read_file(path);
    const std::string origin = path.string();
    detail::ByteReader r(data, origin);

    if (r.remaining() < 12)
        throw ParseError(origin + ": file too short for the 12-byte header");
    const std::int32_t n_samples = r.i32();
    const std::int32_t n_classes = r.i32();
    const std::int32_t n_features = r.i32();
    if (n_samples < 1 || n_classes < 1 || n_features < 1)
        throw ParseError(origin + ": malformed header (" + std::to_string(n_samples) + ", " +
                         std::to_string(n_classes) + ", " + std::to_string(n_features) + ")");

    const std::size_t sample_bytes = 8 + 4 * static_cast<std::size_t>(n_features);
    const std::size_t expected = 12 + sample_bytes * static_cast<std::size_t>(n_samples);
    if (data.size() < expected) {
        const std::size_t bad = (data.size() - 12) / sample_bytes;
        throw ParseError(origin + ": truncated in sample " + std::to_string(bad) + " (file has " +
                         std::to_string(data.size()) + " bytes, header implies " +
                         std::to_string(expected) + ")");
    }
    if (data.size() > expected)
        throw ParseError(origin + ": " + std::to_string(data.size() - expected) +
                         " trailing bytes after the declared " + std::to_string(n_samples) +
                         " samples");

    Dataset ds;
    ds.n_classes = n_classes;
    ds.features = Matrix(static_cast<std::size_t>(n_samples),
                         static_cast<std::size_t>(n_features));
    for (std::int32_t i = 0; i < n_samples; ++i) {
        const std::int32_t id = r.i32();
        const std::int32_t label = r.i32();
        if (id < 0)
            throw ParseError(origin + ": sample " + std::to_string(i) + " has negative id");
        if (label < 1 || label > n_classes)
            throw ParseError(origin + ": sample " + std::to_string(i) + " has label " +
                             std::to_string(label) + " outside 1.." +
                             std::to_string(n_classes));
        ds.ids.push_back(id);
        ds.labels.push_back(label);
        for (std::int32_t j = 0; j < n_features; ++j)
            ds.features.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                static_cast<double>(r.f32());
    }
    if (!ds.ids_are_permutation())
        throw ParseError(origin + ": sample ids are not a permutation of 0.." +
                         std::to_string(n_samples - 1));
    return ds;
}

inline std::string render_opf_binary(const Dataset& ds) {
    ds.validate();
    if (ds.size() < 1) throw TooSmallError("opf writer: empty dataset");
    if (ds.n_features() < 1) throw ValueError("opf writer: zero features");
    const int n_classes = ds.n_classes > 0 ? ds.n_classes : ds.max_label();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.labels[i] < 1 || ds.labels[i] > n_classes)
            throw ValueError("opf writer: sample " + std::to_string(i) + " has label " +
                             std::to_string(ds.labels[i]) +
                             "; the binary format requires labels in 1.." +
                             std::to_string(n_classes));
    }

    std::string out;
    out.reserve(12 + ds.size() * (8 + 4 * ds.n_features()));
    detail::put_i32(out, static_cast<std::int32_t>(ds.size()));
    detail::put_i32(out, n_classes);
    detail::put_i32(out, static_cast<std::int32_t>(ds.n_features()));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        detail::put_i32(out, ds.ids[i]);
        detail::put_i32(out, ds.labels[i]);
        for (std::size_t j = 0; j < ds.n_features(); ++j)
            detail::put_f32(out, static_cast<float>(ds.features.at(i, j)));
    }
    return out;
}

inline void write_opf_binary(const Dataset& ds, const std::filesystem::path& path) {
    detail::write_file(path, render_opf_binary(ds));
}

/// Loads a dataset in any supported format. Ids that are not already a
/// permutation of 0..n-1 are re-indexed in file order (text formats only; the
/// binary format requires a permutation).
inline Dataset load_dataset(const std::filesystem::path& path, FileFormat format) {
    Dataset ds;
    switch (format) {
        case FileFormat::txt:
            ds = detail::parse_delimited(detail::read_file(path), path.string(), false);
            break;
        case FileFormat::csv:
            ds = detail::parse_delimited(detail::read_file(path), path.string(), true);
            break;
        case FileFormat::json:
            ds = detail::parse_json(detail::read_file(path), path.string());
            break;
        case FileFormat::opf: return read_opf_binary(path);
    }
    ds.validate();
    if (!ds.ids_are_permutation()) ds.reindex_ids();
    return ds;
}

inline Dataset load_dataset(const std::filesystem::path& path) {
    return load_dataset(path, infer_format(path));
}

inline void save_dataset(const Dataset& ds, const std::filesystem::path& path,
                         FileFormat format) {
    switch (format) {
        case FileFormat::txt:
            detail::write_file(path, detail::render_delimited(ds, false));
            return;
        case FileFormat::csv:
            detail::write_file(path, detail::render_delimited(ds, true));
            return;
        case FileFormat::json: detail::write_file(path, detail::render_json(ds)); return;
        case FileFormat::opf: write_opf_binary(ds, path); return;
    }
}

inline void convert_dataset(const std::filesystem::path& src, FileFormat src_format,
                            const std::filesystem::path& dst, FileFormat dst_format) {
    save_dataset(load_dataset(src, src_format), dst, dst_format);
}

} // namespace opf

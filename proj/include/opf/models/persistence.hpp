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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "opf/detail/binary.hpp"
#include "opf/errors.hpp"
#include "opf/models/model.hpp"

namespace opf {

namespace detail {

inline constexpr char kModelMagic[4] = {'O', 'P', 'F', 'M'};

} // namespace detail

/// Canonical model bytes: versioned, self-describing, little-endian. Two
/// models with identical state serialize to identical bytes, which is how the
/// precomputed-distance and determinism guarantees are checked.
inline std::string serialize_model(const TrainedModel& model) {
    if (!model.graph.trained) throw InvalidStateError("serialize of an untrained model");

    std::string out;
    out.append(detail::kModelMagic, 4);
    detail::put_u32(out, static_cast<std::uint32_t>(model.format_version));
    detail::put_u8(out, static_cast<std::uint8_t>(model.variant));
    detail::put_u8(out, static_cast<std::uint8_t>(model.metric));
    detail::put_u64(out, static_cast<std::uint64_t>(model.graph.nodes.size()));
    detail::put_u64(out, static_cast<std::uint64_t>(model.graph.n_features));
    detail::put_u32(out, static_cast<std::uint32_t>(model.knn.k_best));
    detail::put_u32(out, static_cast<std::uint32_t>(model.knn.n_clusters));
    detail::put_f64(out, model.knn.d_f);
    detail::put_f64(out, model.knn.rho_min);
    detail::put_f64(out, model.knn.rho_max);

    for (const Node& nd : model.graph.nodes) {
        detail::put_i32(out, nd.true_label);
        detail::put_i32(out, nd.predicted_label);
        detail::put_f64(out, nd.cost);
        detail::put_f64(out, nd.density);
        detail::put_i32(out, nd.predecessor);
        detail::put_i32(out, nd.root);
        detail::put_i32(out, nd.cluster_label);
        detail::put_u8(out, static_cast<std::uint8_t>((nd.is_prototype ? 1 : 0) |
                                                      (nd.is_relevant ? 2 : 0)));
        for (double f : nd.features) detail::put_f64(out, f);
    }

    detail::put_u64(out, static_cast<std::uint64_t>(model.graph.ordered_indices.size()));
    for (int idx : model.graph.ordered_indices)
        detail::put_u32(out, static_cast<std::uint32_t>(idx));
    return out;
}

inline TrainedModel deserialize_model(const std::string& bytes, const std::string& origin) {
    detail::ByteReader r(bytes, origin);

    if (r.bytes(4) != std::string(detail::kModelMagic, 4))
        throw ParseError(origin + ": not a model file (bad magic)");
    const auto version = static_cast<int>(r.u32());
    if (version < 1 || version > kModelFormatVersion)
        throw VersionError(origin + ": model format version " + std::to_string(version) +
                           " not supported (this build reads up to " +
                           std::to_string(kModelFormatVersion) + ")");

    TrainedModel model;
    model.format_version = version;
    const auto variant = r.u8();
    if (variant > 3) throw ParseError(origin + ": unknown variant tag");
    model.variant = static_cast<Variant>(variant);
    const auto metric = r.u8();
    if (metric > 7) throw ParseError(origin + ": unknown metric tag");
    model.metric = static_cast<DistanceMetric>(metric);

    const std::uint64_t n = r.u64();
    const std::uint64_t m = r.u64();
    if (n < 1 || m < 1) throw ParseError(origin + ": empty model");
    model.knn.k_best = static_cast<int>(r.u32());
    model.knn.n_clusters = static_cast<int>(r.u32());
    model.knn.d_f = r.f64();
    model.knn.rho_min = r.f64();
    model.knn.rho_max = r.f64();

    model.graph.n_features = static_cast<int>(m);
    model.graph.nodes.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        Node& nd = model.graph.nodes[i];
        nd.idx = static_cast<int>(i);
        nd.true_label = r.i32();
        nd.predicted_label = r.i32();
        nd.cost = r.f64();
        nd.density = r.f64();
        nd.predecessor = r.i32();
        nd.root = r.i32();
        nd.cluster_label = r.i32();
        const auto flags = r.u8();
        nd.is_prototype = (flags & 1) != 0;
        nd.is_relevant = (flags & 2) != 0;
        nd.features.resize(m);
        for (std::uint64_t j = 0; j < m; ++j) nd.features[j] = r.f64();
        if (nd.predecessor == nd.idx)
            throw ParseError(origin + ": node " + std::to_string(i) +
                             " is its own predecessor");
    }

    const std::uint64_t ordered = r.u64();
    if (ordered > n) throw ParseError(origin + ": ordered index list longer than the graph");
    model.graph.ordered_indices.resize(ordered);
    for (std::uint64_t i = 0; i < ordered; ++i) {
        const auto idx = r.u32();
        if (idx >= n) throw ParseError(origin + ": ordered index out of range");
        model.graph.ordered_indices[i] = static_cast<int>(idx);
    }
    if (!r.exhausted())
        throw ParseError(origin + ": " + std::to_string(r.remaining()) +
                         " trailing bytes after the model payload");

    if ((model.variant == Variant::supervised || model.variant == Variant::semi_supervised) &&
        ordered != n)
        throw ParseError(origin + ": path-cost model without a full ordered index list");

    model.graph.trained = true;
    return model;
}

inline void save_model(const TrainedModel& model, const std::filesystem::path& path) {
    detail::write_file(path, serialize_model(model));
}

inline TrainedModel load_model(const std::filesystem::path& path) {
    return deserialize_model(detail::read_file(path), path.string());
}

/// Human-readable export of the full model state. For inspection only; the
/// binary form above is the canonical one.
inline void save_model_json(const TrainedModel& model, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["format_version"] = model.format_version;
    doc["variant"] = variant_name(model.variant);
    doc["metric"] = metric_name(model.metric);
    doc["n_features"] = model.graph.n_features;
    if (model.uses_density()) {
        doc["k_best"] = model.knn.k_best;
        doc["n_clusters"] = model.knn.n_clusters;
        doc["d_f"] = model.knn.d_f;
        doc["rho_min"] = model.knn.rho_min;
        doc["rho_max"] = model.knn.rho_max;
    }
    auto& nodes = doc["nodes"];
    nodes = nlohmann::json::array();
    for (const Node& nd : model.graph.nodes) {
        nlohmann::json j;
        j["true_label"] = nd.true_label;
        j["predicted_label"] = nd.predicted_label;
        j["cost"] = nd.cost;
        j["density"] = nd.density;
        j["predecessor"] = nd.predecessor;
        j["root"] = nd.root;
        j["cluster_label"] = nd.cluster_label;
        j["is_prototype"] = nd.is_prototype;
        j["features"] = nd.features;
        nodes.push_back(std::move(j));
    }
    doc["ordered_indices"] = model.graph.ordered_indices;
    detail::write_file(path, doc.dump(2) + "\n");
}

} // namespace opf

// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace foon {

bool is_recipe_class(const std::string& token) {
    for (const char* c : kRecipeClasses) {
        if (token == c) return true;
    }
    return token == "unlabeled";
}

std::string ObjectNode::identity() const {
    std::string id = label;
    id += ';';
    id += state;
    id += ';';
    for (std::size_t i = 0; i < ingredients.size(); ++i) {
        if (i) id += ':';
        id += ingredients[i];
    }
    return id;
}

namespace {

std::vector<std::string> sorted_identities(const std::vector<ObjectNode>& nodes) {
    std::vector<std::string> ids;
    ids.reserve(nodes.size());
    for (const auto& n : nodes) ids.push_back(n.identity());
    std::sort(ids.begin(), ids.end());
    return ids;
}

void append_joined(std::string& out, const std::vector<std::string>& parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '|';
        out += parts[i];
    }
}

}  // namespace

std::string unit_key(const FunctionalUnit& u) {
    std::string key;
    append_joined(key, sorted_identities(u.inputs));
    key += "=>";
    key += u.motion.label;
    key += "=>";
    append_joined(key, sorted_identities(u.outputs));
    return key;
}

UniversalFoon merge(std::span<const Subgraph> subgraphs) {
    // ordered map: iteration yields the canonical key order directly
    std::map<std::string, const FunctionalUnit*> by_key;
    for (const Subgraph& g : subgraphs) {
        for (const FunctionalUnit& u : g.units) {
            std::string key = unit_key(u);
            auto [it, inserted] = by_key.emplace(std::move(key), &u);
            if (!inserted) {
                const FunctionalUnit* kept = it->second;
                auto rank = [](const FunctionalUnit* f) {
                    return std::tie(f->source_video, f->motion.start_frame, f->motion.end_frame);
                };
                if (rank(&u) < rank(kept)) it->second = &u;
            }
        }
    }

    UniversalFoon foon;
    foon.units.reserve(by_key.size());
    foon.keys.reserve(by_key.size());
    std::set<std::string> identities;
    for (const auto& [key, unit] : by_key) {
        const int id = static_cast<int>(foon.units.size());
        foon.units.push_back(*unit);
        foon.keys.push_back(key);
        foon.edge_count += unit->edge_count();

        std::set<std::string> labels;
        for (const auto& n : unit->inputs) {
            identities.insert(n.identity());
            labels.insert(n.label);
        }
        for (const auto& n : unit->outputs) {
            identities.insert(n.identity());
            labels.insert(n.label);
        }
        for (const auto& label : labels) foon.object_index[label].push_back(id);
    }
    foon.object_node_count = identities.size();
    return foon;
}

std::span<const int> probe(const UniversalFoon& foon, const std::string& label) {
    auto it = foon.object_index.find(label);
    if (it == foon.object_index.end()) return {};
    return it->second;
}

FoonStats stats(const UniversalFoon& foon) {
    return FoonStats{
        .object_nodes = foon.object_node_count,
        .motion_nodes = foon.motion_node_count(),
        .edges = foon.edge_count,
        .units = foon.unit_count(),
    };
}

}  // namespace foon

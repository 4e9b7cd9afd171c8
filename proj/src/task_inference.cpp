// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/task_inference.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace foon {

VideoSignature signature_of_subgraph(const Subgraph& graph) {
    VideoSignature sig;
    for (const FunctionalUnit& unit : graph.units) {
        sig.unit_keys.insert(unit_key(unit));
        for (const ObjectNode& n : unit.inputs) sig.object_labels.insert(n.label);
        for (const ObjectNode& n : unit.outputs) sig.object_labels.insert(n.label);
    }
    return sig;
}

VideoSignature signature_of_recognition(const UniversalFoon& foon,
                                        const std::vector<std::vector<CandidateUnit>>& segments) {
    VideoSignature sig;
    for (const std::vector<CandidateUnit>& cands : segments) {
        if (cands.empty()) continue;
        const CandidateUnit& top = cands.front();
        sig.unit_keys.insert(foon.keys[static_cast<size_t>(top.unit_id)]);
        for (const ScoredLabel& s : top.used) sig.object_labels.insert(s.label);
    }
    return sig;
}

std::vector<RecipeCluster> build_clusters(std::span<const Subgraph> graphs) {
    std::map<std::string, std::vector<VideoSignature>> by_class;
    for (const Subgraph& g : graphs) {
        if (g.recipe_class == "unlabeled") continue;
        by_class[g.recipe_class].push_back(signature_of_subgraph(g));
    }
    if (by_class.empty()) throw std::invalid_argument("no labeled videos to cluster");
    std::vector<RecipeCluster> out;
    out.reserve(by_class.size());
    for (auto& [recipe_class, members] : by_class) {
        out.push_back({recipe_class, std::move(members)});
    }
    return out;
}

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    size_t inter = 0;
    for (const std::string& x : a) inter += b.count(x);
    size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

double signature_similarity(const VideoSignature& a, const VideoSignature& b, double w_fu,
                            double w_obj) {
    return w_fu * jaccard(a.unit_keys, b.unit_keys) + w_obj * jaccard(a.object_labels, b.object_labels);
}

std::vector<RecipeScore> classify_recipe(const std::vector<RecipeCluster>& clusters,
                                         const VideoSignature& query, double w_fu, double w_obj) {
    std::vector<RecipeScore> out;
    out.reserve(clusters.size());
    for (const RecipeCluster& cluster : clusters) {
        double sum = 0;
        for (const VideoSignature& member : cluster.members) {
            sum += signature_similarity(query, member, w_fu, w_obj);
        }
        double score = cluster.members.empty() ? 0 : sum / static_cast<double>(cluster.members.size());
        out.push_back({cluster.recipe_class, score});
    }
    std::sort(out.begin(), out.end(), [](const RecipeScore& a, const RecipeScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.recipe_class < b.recipe_class;
    });
    return out;
}

}  // namespace foon

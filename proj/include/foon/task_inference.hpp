// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "foon/graph.hpp"
#include "foon/recognition.hpp"

namespace foon {

/// What a video did, reduced to the set of functional units it contains and
/// the set of objects they touch.
struct VideoSignature {
    std::set<std::string> unit_keys;
    std::set<std::string> object_labels;

    bool operator==(const VideoSignature&) const = default;
};

/// Signature of an annotated subgraph: every unit key and every object label.
VideoSignature signature_of_subgraph(const Subgraph& graph);

/// Signature of a recognition run: the top candidate's unit key and used
/// object labels from each segment that produced candidates.
VideoSignature signature_of_recognition(const UniversalFoon& foon,
                                        const std::vector<std::vector<CandidateUnit>>& segments);

/// Labeled training videos grouped by recipe class.
struct RecipeCluster {
    std::string recipe_class;
    std::vector<VideoSignature> members;
};

/// Group the labeled subgraphs by recipe class (classes sorted, unlabeled
/// ones skipped). Throws std::invalid_argument when nothing is labeled.
std::vector<RecipeCluster> build_clusters(std::span<const Subgraph> graphs);

/// Weighted Jaccard mix over unit keys and object labels; an empty-vs-empty
/// set counts as fully similar.
double signature_similarity(const VideoSignature& a, const VideoSignature& b, double w_fu,
                            double w_obj);

struct RecipeScore {
    std::string recipe_class;
    double score = 0;
};

/// Score every cluster by the mean similarity of its members to the query
/// signature, best first (ties by class name).
std::vector<RecipeScore> classify_recipe(const std::vector<RecipeCluster>& clusters,
                                         const VideoSignature& query, double w_fu, double w_obj);

}  // namespace foon

// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace foon {

/// Recipe classes a video annotation may carry, plus "unlabeled".
inline constexpr const char* kRecipeClasses[] = {
    "cake",   "pizza",     "bread", "omelette",      "soup",
    "barbecue", "sandwich", "smoothies", "pasta",    "coffee_and_tea",
    "salad",  "mashed_potato", "others",
};

bool is_recipe_class(const std::string& token);

/// An item acted upon in one step. Identity (used for deduplication and
/// matching) is the tuple (label, state, ingredients); in_motion and
/// is_container are per-observation attributes, not identity.
struct ObjectNode {
    std::string label;
    std::string state;                     // may be empty
    bool in_motion = false;
    bool is_container = false;
    std::vector<std::string> ingredients;  // kept sorted

    /// "label;state;ing1:ing2" - stable across attribute changes.
    std::string identity() const;

    bool operator==(const ObjectNode&) const = default;
};

struct MotionNode {
    std::string label;
    int start_frame = 0;
    int end_frame = 0;  // >= start_frame

    bool operator==(const MotionNode&) const = default;
};

/// One atomic action: input objects, the motion applied, output objects.
/// Every edge joins an object node to this unit's motion node, so the unit
/// contributes |inputs| + |outputs| edges to the (bipartite) graph.
struct FunctionalUnit {
    std::vector<ObjectNode> inputs;   // >= 1
    MotionNode motion;
    std::vector<ObjectNode> outputs;  // >= 1
    std::string source_video;

    std::size_t edge_count() const { return inputs.size() + outputs.size(); }

    bool operator==(const FunctionalUnit&) const = default;
};

/// Equality key for deduplication: multiset of input identities, the motion
/// label, multiset of output identities. Frame times and source video are
/// excluded; motion synonyms are NOT collapsed.
std::string unit_key(const FunctionalUnit& u);

/// The annotation of one video: an ordered run of functional units.
struct Subgraph {
    std::string video_id;
    std::string recipe_class = "unlabeled";
    std::vector<FunctionalUnit> units;  // sorted by motion.start_frame

    bool operator==(const Subgraph&) const = default;
};

/// Deduplicated union of many subgraphs with a label index for probing.
/// Built by merge() and immutable afterwards; safe to share across threads.
struct UniversalFoon {
    std::vector<FunctionalUnit> units;  // canonical key order, ascending
    std::vector<std::string> keys;      // keys[i] == unit_key(units[i])
    std::unordered_map<std::string, std::vector<int>> object_index;
    std::size_t object_node_count = 0;  // distinct node identities
    std::size_t edge_count = 0;

    std::size_t unit_count() const { return units.size(); }
    // one motion node per unit, never shared
    std::size_t motion_node_count() const { return units.size(); }
};

/// Union by unit key. Result is independent of subgraph order; on key
/// collisions the representative with the smallest (source_video,
/// start_frame, end_frame) wins.
UniversalFoon merge(std::span<const Subgraph> subgraphs);

/// Ids of units containing an object with this label (any state) among
/// inputs or outputs. Sorted ascending; empty when the label is unknown.
std::span<const int> probe(const UniversalFoon& foon, const std::string& label);

struct FoonStats {
    std::size_t object_nodes = 0;
    std::size_t motion_nodes = 0;
    std::size_t edges = 0;
    std::size_t units = 0;
};

FoonStats stats(const UniversalFoon& foon);

}  // namespace foon

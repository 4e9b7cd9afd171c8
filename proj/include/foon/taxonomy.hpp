// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace foon {

/// Synonym groups over motion labels plus the mapping from motion label to
/// the 10 deep motion classes (class 9 is the catch-all "other").
struct MotionTaxonomy {
    static constexpr int kNumClasses = 10;
    static constexpr int kOtherClass = 9;

    std::vector<std::vector<std::string>> synonym_groups;  // disjoint
    std::unordered_map<std::string, int> deep_class_map;   // label -> 0..9
    std::unordered_map<std::string, int> group_index;      // label -> group id

    /// Deep class for a motion label; kOtherClass when unmapped.
    int deep_class(const std::string& motion_label) const;
};

/// Validates group disjointness and class range, builds the lookup index.
MotionTaxonomy make_taxonomy(std::vector<std::vector<std::string>> groups,
                             std::unordered_map<std::string, int> class_map);

/// Built-in kitchen taxonomy used when no taxonomy file is given.
const MotionTaxonomy& default_taxonomy();

/// Text format: one comma-separated synonym group per line, then a line
/// `CLASSMAP` followed by `label=class_index` lines. `#` comments allowed.
MotionTaxonomy parse_taxonomy(const std::string& text);

/// True iff the labels are equal or share a synonym group.
bool motions_equivalent(const std::string& a, const std::string& b, const MotionTaxonomy& tax);

}  // namespace foon

// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/taxonomy.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "foon/graph_io.hpp"

namespace foon {

int MotionTaxonomy::deep_class(const std::string& motion_label) const {
    auto it = deep_class_map.find(motion_label);
    return it == deep_class_map.end() ? kOtherClass : it->second;
}

MotionTaxonomy make_taxonomy(std::vector<std::vector<std::string>> groups,
                             std::unordered_map<std::string, int> class_map) {
    MotionTaxonomy tax;
    tax.synonym_groups = std::move(groups);
    tax.deep_class_map = std::move(class_map);
    for (std::size_t g = 0; g < tax.synonym_groups.size(); ++g) {
        for (const auto& label : tax.synonym_groups[g]) {
            auto [it, inserted] = tax.group_index.emplace(label, static_cast<int>(g));
            if (!inserted && it->second != static_cast<int>(g))
                throw std::invalid_argument("motion label '" + label + "' in two synonym groups");
        }
    }
    for (const auto& [label, cls] : tax.deep_class_map) {
        if (cls < 0 || cls >= MotionTaxonomy::kNumClasses)
            throw std::invalid_argument("deep class out of range for '" + label + "'");
    }
    return tax;
}

const MotionTaxonomy& default_taxonomy() {
    static const MotionTaxonomy tax = make_taxonomy(
        {
            {"pour", "drizzle"},
            {"pick_and_place", "pick", "place"},
            {"cook", "fry", "saute", "bake", "boil"},
            {"mix", "stir", "whip", "beat"},
            {"cut", "slice", "chop", "dice"},
            {"sprinkle", "season"},
            {"flip", "turn"},
        },
        {
            {"pour", 0},   {"drizzle", 0},
            {"pick_and_place", 1}, {"pick", 1}, {"place", 1},
            {"cook", 2},   {"fry", 2},   {"saute", 2}, {"bake", 2}, {"boil", 2},
            {"mix", 3},    {"stir", 3},  {"whip", 3},  {"beat", 3},
            {"cut", 4},    {"slice", 4}, {"chop", 4},  {"dice", 4},
            {"crack", 5},
            {"sprinkle", 6}, {"season", 6},
            {"flip", 7},   {"turn", 7},
            {"scoop", 8},
        });
    return tax;
}

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

}  // namespace

MotionTaxonomy parse_taxonomy(const std::string& text) {
    std::vector<std::vector<std::string>> groups;
    std::unordered_map<std::string, int> class_map;
    bool in_class_map = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = trim(eol == std::string::npos ? std::string_view(text).substr(pos)
                                                         : std::string_view(text).substr(pos, eol - pos));
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (line == "CLASSMAP") {
            if (in_class_map) throw ParseError(line_no, "duplicate CLASSMAP section");
            in_class_map = true;
            continue;
        }
        if (!in_class_map) {
            std::vector<std::string> group;
            std::size_t start = 0;
            while (start <= line.size()) {
                std::size_t comma = line.find(',', start);
                std::string label = trim(comma == std::string::npos
                                             ? std::string_view(line).substr(start)
                                             : std::string_view(line).substr(start, comma - start));
                if (label.empty()) throw ParseError(line_no, "empty motion label in synonym group");
                group.push_back(std::move(label));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            groups.push_back(std::move(group));
        } else {
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(line_no, "expected label=class_index");
            std::string label = trim(std::string_view(line).substr(0, eq));
            std::string value = trim(std::string_view(line).substr(eq + 1));
            if (label.empty()) throw ParseError(line_no, "empty motion label in class map");
            int cls = -1;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), cls);
            if (ec != std::errc{} || ptr != value.data() + value.size())
                throw ParseError(line_no, "invalid class index '" + value + "'");
            if (cls < 0 || cls >= MotionTaxonomy::kNumClasses)
                throw ParseError(line_no, "class index out of range: " + value);
            auto [it, inserted] = class_map.emplace(label, cls);
            if (!inserted && it->second != cls)
                throw ParseError(line_no, "conflicting class for motion '" + label + "'");
        }
    }

    try {
        return make_taxonomy(std::move(groups), std::move(class_map));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

bool motions_equivalent(const std::string& a, const std::string& b, const MotionTaxonomy& tax) {
    if (a == b) return true;
    auto ia = tax.group_index.find(a);
    if (ia == tax.group_index.end()) return false;
    auto ib = tax.group_index.find(b);
    return ib != tax.group_index.end() && ia->second == ib->second;
}

}  // namespace foon

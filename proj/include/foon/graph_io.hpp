// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "foon/graph.hpp"

namespace foon {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Parse the line-oriented subgraph format:
///
///   V<TAB>video_id<TAB>recipe_class
///   //                                    start of a functional unit
///   O<TAB>label<TAB>state[<TAB>I=a,b][<TAB>C][<TAB>M]
///   M<TAB>label<TAB>start_frame<TAB>end_frame
///   O<TAB>...                             objects after M are outputs
///
/// `#` starts a comment line; blank lines are ignored. Parsing canonicalizes:
/// labels/states lowercased, ingredient lists sorted, units sorted by
/// start_frame. Throws ParseError on malformed input.
Subgraph parse_subgraph(std::string_view text);

/// Canonical serialization; parse_subgraph(serialize_subgraph(g)) == g.
std::string serialize_subgraph(const Subgraph& g);

/// Merged graphs persist in the same grammar, units in canonical key order,
/// under the header `V<TAB>universal<TAB>unlabeled`.
std::string serialize_foon(const UniversalFoon& foon);

Subgraph load_subgraph_file(const std::filesystem::path& path);
UniversalFoon load_foon_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace foon

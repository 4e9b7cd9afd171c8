// Copyright (C) 2026 The foon authors
// SPDX-License-Identifier: Apache-2.0
//

#include "foon/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace foon {

namespace {

bool token_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '+' || c == '-';
}

std::string lower_token(std::string_view raw, int line, const char* what) {
    std::string tok;
    tok.reserve(raw.size());
    for (char c : raw) tok += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (tok.empty()) throw ParseError(line, std::string("empty ") + what);
    for (char c : tok) {
        if (!token_char(c))
            throw ParseError(line, std::string("invalid character in ") + what + " '" + tok + "'");
    }
    return tok;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

int parse_frame(std::string_view field, int line, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || value < 0)
        throw ParseError(line, std::string("expected non-negative integer ") + what);
    return value;
}

ObjectNode parse_object(const std::vector<std::string_view>& fields, int line) {
    if (fields.size() < 3) throw ParseError(line, "object line needs label and state fields");
    ObjectNode node;
    node.label = lower_token(fields[1], line, "object label");
    if (!fields[2].empty()) node.state = lower_token(fields[2], line, "object state");
    bool saw_ingredients = false;
    for (std::size_t i = 3; i < fields.size(); ++i) {
        std::string_view f = fields[i];
        if (f == "C") {
            if (node.is_container) throw ParseError(line, "duplicate C flag");
            node.is_container = true;
        } else if (f == "M") {
            if (node.in_motion) throw ParseError(line, "duplicate M flag");
            node.in_motion = true;
        } else if (f.rfind("I=", 0) == 0) {
            if (saw_ingredients) throw ParseError(line, "duplicate ingredient list");
            saw_ingredients = true;
            std::string_view list = f.substr(2);
            if (list.empty()) throw ParseError(line, "empty ingredient list");
            std::size_t start = 0;
            while (start <= list.size()) {
                std::size_t comma = list.find(',', start);
                std::string_view item =
                    comma == std::string_view::npos ? list.substr(start) : list.substr(start, comma - start);
                node.ingredients.push_back(lower_token(item, line, "ingredient"));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            std::sort(node.ingredients.begin(), node.ingredients.end());
        } else {
            throw ParseError(line, "unrecognized object field '" + std::string(f) + "'");
        }
    }
    return node;
}

void finish_unit(std::optional<FunctionalUnit>& current, bool has_motion, Subgraph& g, int line) {
    if (!current) return;
    if (!has_motion) throw ParseError(line, "unit missing motion line");
    if (current->inputs.empty()) throw ParseError(line, "unit with zero inputs");
    if (current->outputs.empty()) throw ParseError(line, "unit with zero outputs");
    g.units.push_back(std::move(*current));
    current.reset();
}

void serialize_object(std::string& out, const ObjectNode& n) {
    out += "O\t";
    out += n.label;
    out += '\t';
    out += n.state;
    if (!n.ingredients.empty()) {
        out += "\tI=";
        for (std::size_t i = 0; i < n.ingredients.size(); ++i) {
            if (i) out += ',';
            out += n.ingredients[i];
        }
    }
    if (n.is_container) out += "\tC";
    if (n.in_motion) out += "\tM";
    out += '\n';
}

void serialize_unit(std::string& out, const FunctionalUnit& u) {
    out += "//\n";
    for (const auto& n : u.inputs) serialize_object(out, n);
    out += "M\t";
    out += u.motion.label;
    out += '\t';
    out += std::to_string(u.motion.start_frame);
    out += '\t';
    out += std::to_string(u.motion.end_frame);
    out += '\n';
    for (const auto& n : u.outputs) serialize_object(out, n);
}

}  // namespace

Subgraph parse_subgraph(std::string_view text) {
    Subgraph g;
    bool saw_header = false;
    std::optional<FunctionalUnit> current;
    bool has_motion = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        auto fields = split_tabs(line);
        std::string_view tag = fields[0];
        if (tag == "//") {
            if (fields.size() != 1) throw ParseError(line_no, "unexpected fields after //");
            if (!saw_header) throw ParseError(line_no, "functional unit before V header");
            finish_unit(current, has_motion, g, line_no);
            current.emplace();
            has_motion = false;
        } else if (tag == "V") {
            if (saw_header) throw ParseError(line_no, "duplicate V header");
            if (fields.size() != 3) throw ParseError(line_no, "V line needs video_id and recipe_class");
            if (fields[1].empty()) throw ParseError(line_no, "empty video_id");
            for (char c : fields[1]) {
                if (std::isspace(static_cast<unsigned char>(c)))
                    throw ParseError(line_no, "whitespace in video_id");
            }
            g.video_id = std::string(fields[1]);
            g.recipe_class = lower_token(fields[2], line_no, "recipe class");
            if (!is_recipe_class(g.recipe_class))
                throw ParseError(line_no, "unknown recipe class '" + g.recipe_class + "'");
            saw_header = true;
        } else if (tag == "O") {
            if (!current) throw ParseError(line_no, "object line outside a functional unit");
            ObjectNode node = parse_object(fields, line_no);
            (has_motion ? current->outputs : current->inputs).push_back(std::move(node));
        } else if (tag == "M") {
            if (!current) throw ParseError(line_no, "motion line outside a functional unit");
            if (has_motion) throw ParseError(line_no, "duplicate motion line in unit");
            if (fields.size() != 4) throw ParseError(line_no, "motion line needs label, start, end");
            MotionNode m;
            m.label = lower_token(fields[1], line_no, "motion label");
            m.start_frame = parse_frame(fields[2], line_no, "start_frame");
            m.end_frame = parse_frame(fields[3], line_no, "end_frame");
            if (m.end_frame < m.start_frame) throw ParseError(line_no, "end_frame < start_frame");
            current->motion = std::move(m);
            has_motion = true;
        } else {
            throw ParseError(line_no, "unrecognized line tag '" + std::string(tag) + "'");
        }
    }
    finish_unit(current, has_motion, g, line_no);
    if (g.units.empty()) throw ParseError(line_no, "no functional units");

    std::stable_sort(g.units.begin(), g.units.end(),
                     [](const FunctionalUnit& a, const FunctionalUnit& b) {
                         return a.motion.start_frame < b.motion.start_frame;
                     });
    for (auto& u : g.units) u.source_video = g.video_id;
    return g;
}

std::string serialize_subgraph(const Subgraph& g) {
    std::string out = "V\t" + g.video_id + "\t" + g.recipe_class + "\n";
    for (const auto& u : g.units) serialize_unit(out, u);
    return out;
}

std::string serialize_foon(const UniversalFoon& foon) {
    std::string out = "V\tuniversal\tunlabeled\n";
    for (const auto& u : foon.units) serialize_unit(out, u);
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Subgraph load_subgraph_file(const std::filesystem::path& path) {
    try {
        return parse_subgraph(read_text_file(path));
    } catch (const ParseError& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

UniversalFoon load_foon_file(const std::filesystem::path& path) {
    Subgraph g = load_subgraph_file(path);
    return merge(std::span<const Subgraph>(&g, 1));
}

}  // namespace foon
